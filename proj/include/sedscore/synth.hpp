#pragma once

#include "sedscore/events.hpp"
#include "sedscore/ingest.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace sedscore {

// Deterministic portable random source: std::mt19937_64 (the C++
// standard pins its exact output) with explicit transforms (53-bit
// uniforms, Box-Muller normals, Knuth Poisson) instead of the
// implementation-defined standard distributions, so identical seeds
// give identical corpora on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    double normal(double mean, double stddev);
    std::int64_t poisson(double mean);
    std::size_t index(std::size_t n);       // uniform in [0, n)

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent per-stream seeds so
// per-file generation order never changes output.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Duration statistics of one class, driving the generator.
struct ClassProfile {
    std::string class_label;
    double mean_dur{0.0};
    double std_dur{0.0};
    double median_dur{0.0};
    double events_per_file{0.0};

    void validate() const;
};

// Ten-class household soundscape profile with short classes (fractions
// of a second) through long ones (around ten seconds).
std::vector<ClassProfile> desed_like_profiles();

std::vector<ClassProfile> parse_profiles(std::istream& in, char delimiter = kTabDelimiter);
std::vector<ClassProfile> load_profiles(const std::string& path, char delimiter = kTabDelimiter);
void write_profiles(const std::vector<ClassProfile>& profiles, std::ostream& out,
                    char delimiter = kTabDelimiter);

// Draws a reference corpus: per file and class, a Poisson event count
// with durations from a normal truncated at 0.05 s and onsets uniform
// within the file. Deterministic given the seed.
Corpus generate_reference(const std::vector<ClassProfile>& profiles,
                          std::size_t n_files, double file_duration,
                          std::uint64_t seed,
                          std::vector<std::string>* warnings = nullptr);

// Controlled error model turning references into detections.
struct DegradeParams {
    double onset_jitter_abs{0.0}; // seconds
    double onset_jitter_rel{0.0}; // fraction of the event duration
    double split_prob{0.0};
    double gap_size{0.2};         // seconds between split halves
    double merge_prob{0.0};
    double delete_prob{0.0};
    double insert_rate{0.0};      // spurious events per hour
    double duration_scale{1.0};
    std::uint64_t seed{0};

    void validate() const;
};

// Per event, independently: delete, jitter the onset by a zero-mean
// normal with stddev onset_jitter_abs + onset_jitter_rel * duration,
// split into two parts around a point uniform in the middle third,
// scale durations; then merge adjacent same-class detections and insert
// spurious events. All-zero parameters reproduce the references
// exactly.
Corpus degrade(const Corpus& refs, const DegradeParams& params);

// Endpoints of the emulated sensitivity sweep: deletions fall while
// insertions rise across operating points.
struct SweepAxis {
    double delete_from{0.9};
    double delete_to{0.0};
    double insert_from{0.0};  // events per hour
    double insert_to{50.0};
};

// Builds n_ops detection sets along the axis. Deletions and insertions
// use coupled thinning (one uniform mark per candidate, compared
// against the per-point threshold), so kept references only grow and
// inserted events only accumulate along the sweep.
OperatingPointSet make_operating_points(const Corpus& refs, const DegradeParams& base,
                                        std::size_t n_ops, const SweepAxis& axis);

} // namespace sedscore
