#include "sedscore/collar.hpp"

#include "sedscore/errors.hpp"
#include "sedscore/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

namespace sedscore {

void CollarConfig::validate() const {
    if (!(onset_collar > 0.0)) throw EvalError("onset collar must be positive");
    if (!(offset_collar_floor > 0.0)) throw EvalError("offset collar floor must be positive");
    if (offset_collar_ratio < 0.0 || offset_collar_ratio >= 1.0) {
        throw EvalError("offset collar ratio must be in [0, 1)");
    }
}

bool collar_pair_valid(const Event& ref, const Event& det, const CollarConfig& cfg) {
    if (std::abs(det.onset - ref.onset) > cfg.onset_collar) return false;
    if (!cfg.require_offset) return true;
    const double offset_collar =
        std::max(cfg.offset_collar_floor, cfg.offset_collar_ratio * ref.duration());
    return std::abs(det.offset - ref.offset) <= offset_collar;
}

std::vector<ClassCounts> collar_counts(const Corpus& refs, const Corpus& dets,
                                       const CollarConfig& cfg) {
    cfg.validate();

    std::set<std::string> classes = refs.class_set();
    classes.insert(dets.class_set().begin(), dets.class_set().end());
    std::set<std::string> file_ids;
    for (const auto& [id, meta] : refs.files()) file_ids.insert(id);
    for (const auto& [id, meta] : dets.files()) file_ids.insert(id);

    std::vector<ClassCounts> out;
    for (const std::string& cls : classes) {
        ClassCounts& counts = counts_for(out, cls);
        for (const std::string& file_id : file_ids) {
            const std::vector<Event>& r = refs.events_of(file_id, cls);
            const std::vector<Event>& d = dets.events_of(file_id, cls);
            counts.n_ref += static_cast<std::int64_t>(r.size());
            if (r.empty() || d.empty()) {
                counts.fn += static_cast<std::int64_t>(r.size());
                counts.fp += static_cast<std::int64_t>(d.size());
                continue;
            }
            BipartiteMatcher matcher(r.size(), d.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                for (std::size_t j = 0; j < d.size(); ++j) {
                    if (collar_pair_valid(r[i], d[j], cfg)) matcher.add_edge(i, j);
                }
            }
            const auto tp = static_cast<std::int64_t>(matcher.max_matching());
            counts.tp += tp;
            counts.fn += static_cast<std::int64_t>(r.size()) - tp;
            counts.fp += static_cast<std::int64_t>(d.size()) - tp;
        }
    }
    return out;
}

} // namespace sedscore
