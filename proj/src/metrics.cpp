#include "sedscore/metrics.hpp"

#include "sedscore/errors.hpp"

#include <algorithm>

namespace sedscore {

double f1_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    const std::int64_t denom = 2 * tp + fp + fn;
    if (denom == 0) return 0.0;
    return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

double precision_from_counts(std::int64_t tp, std::int64_t fp) {
    if (tp + fp == 0) return 0.0;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double recall_from_counts(std::int64_t tp, std::int64_t fn) {
    if (tp + fn == 0) return 0.0;
    return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

ClassScore score_class(const ClassCounts& counts) {
    ClassScore score;
    score.class_label = counts.class_label;
    score.counts = counts;
    score.precision = precision_from_counts(counts.tp, counts.fp);
    score.recall = recall_from_counts(counts.tp, counts.fn);
    score.f1 = f1_from_counts(counts.tp, counts.fp, counts.fn);
    score.degenerate = counts.tp == 0 && counts.fp == 0 && counts.fn == 0;
    return score;
}

MacroScore macro_score(const std::vector<ClassCounts>& counts) {
    MacroScore out;
    for (const ClassCounts& c : counts) {
        ClassScore score = score_class(c);
        if (c.n_ref > 0) {
            out.per_class.push_back(score);
        } else {
            out.detection_only.push_back(score);
        }
        out.micro_tp += c.tp;
        out.micro_fp += c.fp;
        out.micro_fn += c.fn;
    }
    if (out.per_class.empty()) {
        throw EvalError("no class has reference events; macro F1 undefined");
    }
    auto by_label = [](const ClassScore& a, const ClassScore& b) {
        return a.class_label < b.class_label;
    };
    std::sort(out.per_class.begin(), out.per_class.end(), by_label);
    std::sort(out.detection_only.begin(), out.detection_only.end(), by_label);

    for (const ClassScore& s : out.per_class) {
        out.macro_f1 += s.f1;
        out.macro_precision += s.precision;
        out.macro_recall += s.recall;
    }
    const auto n = static_cast<double>(out.per_class.size());
    out.macro_f1 /= n;
    out.macro_precision /= n;
    out.macro_recall /= n;
    out.micro_f1 = f1_from_counts(out.micro_tp, out.micro_fp, out.micro_fn);
    return out;
}

} // namespace sedscore
