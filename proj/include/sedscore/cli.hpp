#pragma once

#include "sedscore/collar.hpp"
#include "sedscore/intersection.hpp"
#include "sedscore/psds.hpp"
#include "sedscore/segment.hpp"
#include "sedscore/synth.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sedscore {

// Exit codes shared by every command.
constexpr int kExitOk = 0;
constexpr int kExitEvalError = 1;  // evaluation-domain error
constexpr int kExitParseError = 2; // I/O or parse error

// Everything a single command run needs. One criterion per evaluate
// run; psds always evaluates under the intersection criterion.
struct RunConfig {
    std::string command; // evaluate | compare | psds | synth

    std::string refs_path;
    std::string dets_path;
    std::string durations_path;
    std::string ops_dir;

    std::string criterion{"intersection"}; // collar | collar-onset | segment | intersection
    CollarConfig collar;
    SegmentConfig segment;
    IntersectionConfig intersection;
    PsdsConfig psds;

    bool csv{false};

    std::string scores_out;  // evaluate: machine-readable scores
    std::string matrix_out;  // compare: criterion matrix
    std::string roc_out;     // psds: ROC breakpoints
    std::string svg_out;     // compare/psds: plot

    // synth
    std::string out_dir;
    std::string profile{"desed-like"};
    std::string profile_file;
    std::uint64_t seed{0};
    std::size_t n_files{10};
    double file_duration{60.0};
    std::size_t n_ops{0};
    DegradeParams degrade_params;
    SweepAxis sweep;
    bool write_dets{false}; // also write the degraded detections table
};

// Runs one command, reporting on `out` and diagnostics on `err`.
// Returns an exit code; never throws.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it. The entry point used by
// the binary and by end-to-end tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sedscore
