#pragma once

#include "sedscore/events.hpp"
#include "sedscore/intersection.hpp"

#include <map>
#include <string>
#include <vector>

namespace sedscore {

// PSD-ROC construction parameters. alpha_ct folds cross-trigger rates
// into the effective FP rate; alpha_st penalises across-class
// instability; e_max bounds the FP-per-hour axis.
struct PsdsConfig {
    double alpha_ct{0.0};
    double alpha_st{0.0};
    double e_max{100.0}; // events per hour
    IntersectionConfig intersection;

    void validate() const;
};

// Rates of one operating point.
struct ClassRates {
    double tpr{0.0};  // tp / n_ref
    double fpr{0.0};  // fp per hour of corpus audio
    double efpr{0.0}; // fpr + alpha_ct * mean foreign-class ctr
    std::map<std::string, double> ctr; // ct per hour of that class's reference presence
};

struct OpRates {
    std::string op_id;
    std::map<std::string, ClassRates> per_class; // classes with n_ref > 0 only
};

// Converts intersection counts into rates. FP rates normalise by total
// corpus duration; cross-trigger rates by the foreign class's total
// reference duration. Classes without reference events are excluded.
OpRates op_rates(const IntersectionCounts& counts, const Corpus& refs,
                 const PsdsConfig& cfg, const std::string& op_id = "");

// Right-continuous non-decreasing step function: value[i] applies on
// [edge[i], edge[i+1]), with edge.front() == 0.
struct StepFunction {
    std::vector<double> edges;
    std::vector<double> values;

    double value_at(double e) const;
};

// Best TPR achievable at or below each effective FP rate:
// tpr(e) = max{tpr at points with efpr <= e}, 0 over the empty set.
StepFunction skyline(const std::vector<std::pair<double, double>>& efpr_tpr_points,
                     double e_max);

// PSD-ROC: per-class skylines on the merged breakpoint grid, the
// effective-TPR aggregate, and its normalized area.
struct PsdRoc {
    std::vector<double> grid; // breakpoints, first 0, last e_max
    std::vector<std::string> classes;
    std::map<std::string, std::vector<double>> class_tpr; // aligned with grid
    std::vector<double> etpr;                             // aligned with grid
    double psds{0.0};
    double e_max{0.0};
};

// etpr(e) = mean_c tpr_c(e) - alpha_st * stddev_c tpr_c(e), floored at
// 0; psds = (1/e_max) * integral of etpr over [0, e_max], summed
// exactly over step segments. Population standard deviation.
PsdRoc psd_roc(const std::vector<OpRates>& ops, const PsdsConfig& cfg);

// Computes rates for every operating point and integrates.
PsdRoc psds_from_counts(const std::vector<std::pair<std::string, IntersectionCounts>>& op_counts,
                        const Corpus& refs, const PsdsConfig& cfg);

struct RocRow {
    double e{0.0};
    double etpr{0.0};
    std::vector<double> class_tpr; // aligned with PsdRoc::classes
};

// Exact breakpoints of the effective-TPR curve, suitable for plotting.
std::vector<RocRow> roc_table(const PsdRoc& roc);

} // namespace sedscore
