#include "sedscore/intersection.hpp"

#include "sedscore/errors.hpp"

#include <set>

namespace sedscore {

void IntersectionConfig::validate() const {
    auto check = [](double rho, const char* name) {
        if (!(rho > 0.0) || rho > 1.0) {
            throw EvalError(std::string(name) + " must be in (0, 1]");
        }
    };
    check(rho_dtc, "rho_dtc");
    check(rho_gtc, "rho_gtc");
    check(rho_cttc, "rho_cttc");
}

std::int64_t IntersectionCounts::ct(const std::string& det_class,
                                    const std::string& ref_class) const {
    auto it = cross_triggers.find({det_class, ref_class});
    return it == cross_triggers.end() ? 0 : it->second;
}

void dtc_partition(const std::vector<Event>& dets_c, const std::vector<Event>& refs_c,
                   double rho_dtc, std::vector<Event>& dtc_valid,
                   std::vector<Event>& dtc_failed) {
    for (const Event& d : dets_c) {
        const double ratio = total_intersection(d, refs_c) / d.duration();
        (ratio >= rho_dtc ? dtc_valid : dtc_failed).push_back(d);
    }
}

std::int64_t gtc_count(const std::vector<Event>& refs_c, const std::vector<Event>& dtc_valid,
                       double rho_gtc) {
    std::int64_t tp = 0;
    for (const Event& r : refs_c) {
        const double ratio = total_intersection(r, dtc_valid) / r.duration();
        if (ratio >= rho_gtc) ++tp;
    }
    return tp;
}

std::int64_t cttc_count(const std::vector<Event>& dtc_failed_c,
                        const std::vector<Event>& refs_k, double rho_cttc) {
    std::int64_t ct = 0;
    for (const Event& r : refs_k) {
        const double ratio = total_intersection(r, dtc_failed_c) / r.duration();
        if (ratio >= rho_cttc) ++ct;
    }
    return ct;
}

IntersectionCounts intersection_counts(const Corpus& refs, const Corpus& dets,
                                       const IntersectionConfig& cfg) {
    cfg.validate();

    std::set<std::string> classes = refs.class_set();
    classes.insert(dets.class_set().begin(), dets.class_set().end());

    IntersectionCounts out;
    for (const std::string& cls : classes) out.per_class[cls];

    for (const auto& [file_id, meta] : refs.files()) {
        const auto& ref_classes = refs.events_of(file_id);
        for (const std::string& cls : classes) {
            const std::vector<Event>& refs_c = refs.events_of(file_id, cls);
            const std::vector<Event>& dets_c = dets.events_of(file_id, cls);
            IntersectionClassCounts& counts = out.per_class[cls];
            counts.n_ref += static_cast<std::int64_t>(refs_c.size());
            if (dets_c.empty() && refs_c.empty()) continue;

            std::vector<Event> dtc_valid;
            std::vector<Event> dtc_failed;
            dtc_partition(dets_c, refs_c, cfg.rho_dtc, dtc_valid, dtc_failed);
            counts.fp += static_cast<std::int64_t>(dtc_failed.size());
            counts.tp += gtc_count(refs_c, dtc_valid, cfg.rho_gtc);

            if (dtc_failed.empty()) continue;
            for (const auto& [foreign_cls, refs_k] : ref_classes) {
                if (foreign_cls == cls) continue;
                const std::int64_t ct = cttc_count(dtc_failed, refs_k, cfg.rho_cttc);
                if (ct > 0) out.cross_triggers[{cls, foreign_cls}] += ct;
            }
        }
    }
    return out;
}

std::vector<ClassCounts> to_class_counts(const IntersectionCounts& counts) {
    std::vector<ClassCounts> out;
    for (const auto& [cls, c] : counts.per_class) {
        out.push_back(ClassCounts{cls, c.tp, c.fp, c.fn(), 0, c.n_ref});
    }
    return out;
}

} // namespace sedscore
