#include "sedscore/psds.hpp"

#include "sedscore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sedscore {

void PsdsConfig::validate() const {
    if (alpha_ct < 0.0) throw EvalError("alpha_ct must be >= 0");
    if (alpha_st < 0.0) throw EvalError("alpha_st must be >= 0");
    if (!(e_max > 0.0)) throw EvalError("e_max must be positive");
    intersection.validate();
}

OpRates op_rates(const IntersectionCounts& counts, const Corpus& refs,
                 const PsdsConfig& cfg, const std::string& op_id) {
    cfg.validate();
    const double corpus_hours = refs.total_duration() / 3600.0;
    if (!(corpus_hours > 0.0)) throw EvalError("corpus duration is zero");

    // scored classes and their reference presence time
    std::vector<std::string> classes;
    std::map<std::string, double> ref_hours;
    for (const auto& [cls, c] : counts.per_class) {
        if (c.n_ref > 0) {
            classes.push_back(cls);
            ref_hours[cls] = refs.class_event_duration(cls) / 3600.0;
        }
    }

    OpRates rates;
    rates.op_id = op_id;
    for (const std::string& cls : classes) {
        const IntersectionClassCounts& c = counts.per_class.at(cls);
        ClassRates r;
        r.tpr = static_cast<double>(c.tp) / static_cast<double>(c.n_ref);
        r.fpr = static_cast<double>(c.fp) / corpus_hours;
        double ctr_sum = 0.0;
        std::size_t n_foreign = 0;
        for (const std::string& foreign : classes) {
            if (foreign == cls) continue;
            ++n_foreign;
            const double hours = ref_hours.at(foreign);
            const double ctr = hours > 0.0
                ? static_cast<double>(counts.ct(cls, foreign)) / hours
                : 0.0;
            r.ctr[foreign] = ctr;
            ctr_sum += ctr;
        }
        const double mean_ctr = n_foreign > 0 ? ctr_sum / static_cast<double>(n_foreign) : 0.0;
        r.efpr = r.fpr + cfg.alpha_ct * mean_ctr;
        rates.per_class[cls] = r;
    }
    return rates;
}

double StepFunction::value_at(double e) const {
    double v = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] <= e) v = values[i];
        else break;
    }
    return v;
}

StepFunction skyline(const std::vector<std::pair<double, double>>& efpr_tpr_points,
                     double e_max) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [efpr, tpr] : efpr_tpr_points) {
        if (efpr <= e_max) pts.emplace_back(efpr, tpr);
    }
    std::sort(pts.begin(), pts.end());

    StepFunction f;
    f.edges.push_back(0.0);
    f.values.push_back(0.0);
    double best = 0.0;
    for (const auto& [efpr, tpr] : pts) {
        best = std::max(best, tpr);
        if (efpr == f.edges.back()) {
            f.values.back() = best;
        } else {
            f.edges.push_back(efpr);
            f.values.push_back(best);
        }
    }
    return f;
}

namespace {

// mean and population standard deviation
std::pair<double, double> mean_std(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= n;
    return {mean, std::sqrt(var)};
}

} // namespace

PsdRoc psd_roc(const std::vector<OpRates>& ops, const PsdsConfig& cfg) {
    cfg.validate();
    if (ops.empty()) throw EvalError("at least one operating point is required");

    std::set<std::string> class_set;
    for (const OpRates& op : ops) {
        for (const auto& [cls, r] : op.per_class) class_set.insert(cls);
    }
    if (class_set.empty()) throw EvalError("no scored classes across operating points");

    PsdRoc roc;
    roc.e_max = cfg.e_max;
    roc.classes.assign(class_set.begin(), class_set.end());

    // per-class skylines over all operating points
    std::map<std::string, StepFunction> skylines;
    std::set<double> grid_set{0.0, cfg.e_max};
    for (const std::string& cls : roc.classes) {
        std::vector<std::pair<double, double>> pts;
        for (const OpRates& op : ops) {
            auto it = op.per_class.find(cls);
            if (it != op.per_class.end()) {
                pts.emplace_back(it->second.efpr, it->second.tpr);
            }
        }
        StepFunction f = skyline(pts, cfg.e_max);
        grid_set.insert(f.edges.begin(), f.edges.end());
        skylines[cls] = std::move(f);
    }
    roc.grid.assign(grid_set.begin(), grid_set.end());

    // evaluate skylines and the effective TPR on the merged grid
    for (const std::string& cls : roc.classes) {
        std::vector<double>& vals = roc.class_tpr[cls];
        vals.reserve(roc.grid.size());
        for (double e : roc.grid) vals.push_back(skylines[cls].value_at(e));
    }
    std::vector<double> tprs(roc.classes.size());
    for (std::size_t g = 0; g < roc.grid.size(); ++g) {
        for (std::size_t c = 0; c < roc.classes.size(); ++c) {
            tprs[c] = roc.class_tpr[roc.classes[c]][g];
        }
        const auto [mean, sd] = mean_std(tprs);
        roc.etpr.push_back(std::max(0.0, mean - cfg.alpha_st * sd));
    }

    // exact integral of the step function
    double area = 0.0;
    for (std::size_t g = 0; g + 1 < roc.grid.size(); ++g) {
        area += roc.etpr[g] * (roc.grid[g + 1] - roc.grid[g]);
    }
    roc.psds = area / cfg.e_max;
    return roc;
}

PsdRoc psds_from_counts(const std::vector<std::pair<std::string, IntersectionCounts>>& op_counts,
                        const Corpus& refs, const PsdsConfig& cfg) {
    std::vector<OpRates> ops;
    ops.reserve(op_counts.size());
    for (const auto& [op_id, counts] : op_counts) {
        ops.push_back(op_rates(counts, refs, cfg, op_id));
    }
    return psd_roc(ops, cfg);
}

std::vector<RocRow> roc_table(const PsdRoc& roc) {
    std::vector<RocRow> rows;
    rows.reserve(roc.grid.size());
    for (std::size_t g = 0; g < roc.grid.size(); ++g) {
        RocRow row;
        row.e = roc.grid[g];
        row.etpr = roc.etpr[g];
        for (const std::string& cls : roc.classes) {
            row.class_tpr.push_back(roc.class_tpr.at(cls)[g]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace sedscore
