#pragma once

#include "sedscore/counts.hpp"

#include <cstdint>
#include <vector>

namespace sedscore {

// 2*tp / (2*tp + fp + fn); 0 when all counts are zero.
double f1_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn);
double precision_from_counts(std::int64_t tp, std::int64_t fp);
double recall_from_counts(std::int64_t tp, std::int64_t fn);

struct ClassScore {
    std::string class_label;
    double precision{0.0};
    double recall{0.0};
    double f1{0.0};
    ClassCounts counts;
    // tp = fp = fn = 0: no support and no predictions for this class.
    bool degenerate{false};
};

// Macro scores average per-class F1 over classes present in the
// reference. Classes appearing only in detections keep their FPs in a
// separate list and stay out of the mean. Micro counts are carried for
// diagnostics.
struct MacroScore {
    std::vector<ClassScore> per_class;       // n_ref > 0, sorted by label
    std::vector<ClassScore> detection_only;  // n_ref == 0
    double macro_f1{0.0};
    double macro_precision{0.0};
    double macro_recall{0.0};
    std::int64_t micro_tp{0};
    std::int64_t micro_fp{0};
    std::int64_t micro_fn{0};
    double micro_f1{0.0};
};

ClassScore score_class(const ClassCounts& counts);

// Throws EvalError when no class has reference events.
MacroScore macro_score(const std::vector<ClassCounts>& counts);

} // namespace sedscore
