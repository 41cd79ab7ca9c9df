#pragma once

#include "sedscore/collar.hpp"
#include "sedscore/ingest.hpp"
#include "sedscore/intersection.hpp"
#include "sedscore/metrics.hpp"
#include "sedscore/psds.hpp"
#include "sedscore/segment.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sedscore {

// F1 of every reference class under the fixed eight-criterion lineup:
// SB, IB at dtc=gtc in {0.1, 0.3, 0.5, 0.7, 0.9}, CB, CB-O.
struct CompareMatrix {
    std::vector<std::string> columns;
    std::vector<std::string> classes;       // sorted reference classes
    std::vector<std::vector<double>> f1;    // [class][column]
    std::vector<double> macro_f1;           // per column
};

// Runs all eight criteria on one corpus pair. Collar and segment
// parameters come from the given configs; the intersection config
// contributes only rho_cttc, its dtc/gtc being swept.
CompareMatrix compare_criteria(const Corpus& refs, const Corpus& dets,
                               const CollarConfig& collar_cfg,
                               const SegmentConfig& segment_cfg,
                               const IntersectionConfig& intersection_cfg);

// Human-readable score table: per-class rows, detection-only rows,
// macro and micro summary.
void write_score_table(const MacroScore& score, std::ostream& out);

// Machine-readable scores. Data rows carry exact round-trip numbers;
// aggregate lines start with '#'.
void write_score_tsv(const MacroScore& score, std::ostream& out,
                     char delimiter = kTabDelimiter);

void write_compare_table(const CompareMatrix& m, std::ostream& out);
void write_compare_tsv(const CompareMatrix& m, std::ostream& out,
                       char delimiter = kTabDelimiter);

// Breakpoints of the PSD-ROC: efpr, etpr, then one column per class.
void write_roc_tsv(const PsdRoc& roc, std::ostream& out,
                   char delimiter = kTabDelimiter);

} // namespace sedscore
