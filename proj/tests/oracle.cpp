#include "oracle.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace sedscore::oracle {

namespace {

void check_bounds(const Corpus& refs, const Corpus& dets) {
    if (refs.files().size() > 4) throw std::runtime_error("oracle: too many files");
    std::set<std::string> classes(refs.class_set().begin(), refs.class_set().end());
    classes.insert(dets.class_set().begin(), dets.class_set().end());
    if (classes.size() > 3) throw std::runtime_error("oracle: too many classes");
    for (const auto& [file_id, meta] : refs.files()) {
        if (meta.duration > 30.0) throw std::runtime_error("oracle: file too long");
        std::size_t n_ref = 0;
        for (const auto& [cls, events] : refs.events_of(file_id)) n_ref += events.size();
        std::size_t n_det = 0;
        for (const auto& [cls, events] : dets.events_of(file_id)) n_det += events.size();
        if (n_ref > 5 || n_det > 5) throw std::runtime_error("oracle: too many events");
    }
}

std::set<std::string> class_union(const Corpus& refs, const Corpus& dets) {
    std::set<std::string> classes(refs.class_set().begin(), refs.class_set().end());
    classes.insert(dets.class_set().begin(), dets.class_set().end());
    return classes;
}

} // namespace

Corpus SmallInstance::refs() const { return Corpus::build(ref_events, files); }
Corpus SmallInstance::dets() const { return Corpus::build(det_events, files); }

SmallInstance make_small_instance(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xACEull));
    const char* class_pool[3] = {"alpha", "beta", "gamma"};
    const double duration_pool[4] = {10.0, 12.5, 20.0, 30.0};

    SmallInstance inst;
    const std::size_t n_files = 1 + rng.index(4);
    const std::size_t n_classes = 1 + rng.index(3);
    for (std::size_t f = 0; f < n_files; ++f) {
        const std::string file_id = "f" + std::to_string(f) + ".wav";
        const double duration = duration_pool[rng.index(4)];
        inst.files.push_back({file_id, duration});
        const auto steps = static_cast<std::size_t>(duration / 0.05);
        for (int side = 0; side < 2; ++side) {
            const std::size_t n_events = rng.index(6);
            for (std::size_t e = 0; e < n_events; ++e) {
                const std::string cls = class_pool[rng.index(n_classes)];
                const std::size_t onset_step = rng.index(steps - 1);
                const std::size_t len_steps = 1 + rng.index(steps - onset_step - 1);
                const Event event{file_id, cls, 0.05 * static_cast<double>(onset_step),
                                  0.05 * static_cast<double>(onset_step + len_steps)};
                (side == 0 ? inst.ref_events : inst.det_events).push_back(event);
            }
        }
    }
    return inst;
}

CollarConfig collar_config_for(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xC0ull));
    const double onset_pool[3] = {0.2, 0.25, 0.5};
    const double floor_pool[2] = {0.2, 0.3};
    const double ratio_pool[3] = {0.0, 0.2, 0.5};
    CollarConfig cfg;
    cfg.onset_collar = onset_pool[rng.index(3)];
    cfg.offset_collar_floor = floor_pool[rng.index(2)];
    cfg.offset_collar_ratio = ratio_pool[rng.index(3)];
    cfg.require_offset = rng.index(2) == 0;
    return cfg;
}

SegmentConfig segment_config_for(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x5Eull));
    const double pool[3] = {0.5, 1.0, 2.5};
    SegmentConfig cfg;
    cfg.segment_size = pool[rng.index(3)];
    return cfg;
}

IntersectionConfig intersection_config_for(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x1Bull));
    const double rho_pool[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
    const double cttc_pool[3] = {0.1, 0.3, 0.5};
    IntersectionConfig cfg;
    cfg.rho_dtc = rho_pool[rng.index(5)];
    cfg.rho_gtc = rho_pool[rng.index(5)];
    cfg.rho_cttc = cttc_pool[rng.index(3)];
    return cfg;
}

namespace {

bool pair_ok(const Event& ref, const Event& det, const CollarConfig& cfg) {
    if (std::abs(det.onset - ref.onset) > cfg.onset_collar) return false;
    if (!cfg.require_offset) return true;
    const double collar =
        std::max(cfg.offset_collar_floor, cfg.offset_collar_ratio * (ref.offset - ref.onset));
    return std::abs(det.offset - ref.offset) <= collar;
}

// Tries every assignment of detections to unused valid references.
std::size_t best_matching(const std::vector<Event>& refs_c, const std::vector<Event>& dets_c,
                          const CollarConfig& cfg, std::size_t det_idx,
                          std::vector<bool>& used) {
    if (det_idx == dets_c.size()) return 0;
    std::size_t best = best_matching(refs_c, dets_c, cfg, det_idx + 1, used);
    for (std::size_t r = 0; r < refs_c.size(); ++r) {
        if (used[r] || !pair_ok(refs_c[r], dets_c[det_idx], cfg)) continue;
        used[r] = true;
        best = std::max(best, 1 + best_matching(refs_c, dets_c, cfg, det_idx + 1, used));
        used[r] = false;
    }
    return best;
}

} // namespace

std::vector<ClassCounts> oracle_collar(const Corpus& refs, const Corpus& dets,
                                       const CollarConfig& cfg) {
    check_bounds(refs, dets);
    std::vector<ClassCounts> result;
    for (const std::string& cls : class_union(refs, dets)) {
        ClassCounts& counts = counts_for(result, cls);
        for (const auto& [file_id, meta] : refs.files()) {
            const std::vector<Event>& refs_c = refs.events_of(file_id, cls);
            const std::vector<Event>& dets_c = dets.events_of(file_id, cls);
            std::vector<bool> used(refs_c.size(), false);
            const std::size_t tp = best_matching(refs_c, dets_c, cfg, 0, used);
            counts.tp += static_cast<std::int64_t>(tp);
            counts.fn += static_cast<std::int64_t>(refs_c.size() - tp);
            counts.fp += static_cast<std::int64_t>(dets_c.size() - tp);
            counts.n_ref += static_cast<std::int64_t>(refs_c.size());
        }
    }
    return result;
}

namespace {

bool any_sample_active(const std::vector<Event>& events, double cell_on, double cell_off) {
    // 1 ms sampling from the first sub-millisecond midpoint of the cell.
    for (std::size_t k = 0;; ++k) {
        const double t = cell_on + 0.0005 + 0.001 * static_cast<double>(k);
        if (t >= cell_off) return false;
        for (const Event& e : events) {
            if (e.onset <= t && t < e.offset) return true;
        }
    }
}

} // namespace

std::vector<ClassCounts> oracle_segment(const Corpus& refs, const Corpus& dets,
                                        const SegmentConfig& cfg) {
    check_bounds(refs, dets);
    std::vector<ClassCounts> result;
    for (const std::string& cls : class_union(refs, dets)) {
        ClassCounts& counts = counts_for(result, cls);
        for (const auto& [file_id, meta] : refs.files()) {
            const std::vector<Event>& refs_c = refs.events_of(file_id, cls);
            const std::vector<Event>& dets_c = dets.events_of(file_id, cls);
            const auto cells =
                static_cast<std::size_t>(std::ceil(meta.duration / cfg.segment_size));
            for (std::size_t i = 0; i < cells; ++i) {
                const double cell_on = cfg.segment_size * static_cast<double>(i);
                const double cell_off =
                    std::min(cfg.segment_size * static_cast<double>(i + 1), meta.duration);
                const bool r = any_sample_active(refs_c, cell_on, cell_off);
                const bool d = any_sample_active(dets_c, cell_on, cell_off);
                if (r && d) ++counts.tp;
                if (!r && d) ++counts.fp;
                if (r && !d) ++counts.fn;
                if (!r && !d) ++counts.tn;
                if (r) ++counts.n_ref;
            }
        }
    }
    return result;
}

IntersectionCounts oracle_intersection(const Corpus& refs, const Corpus& dets,
                                       const IntersectionConfig& cfg) {
    check_bounds(refs, dets);
    auto overlap = [](const Event& a, const Event& b) {
        return std::max(0.0, std::min(a.offset, b.offset) - std::max(a.onset, b.onset));
    };

    IntersectionCounts result;
    const std::set<std::string> classes = class_union(refs, dets);
    for (const std::string& cls : classes) {
        IntersectionClassCounts& counts = result.per_class[cls];
        for (const auto& [file_id, meta] : refs.files()) {
            const std::vector<Event>& refs_c = refs.events_of(file_id, cls);
            const std::vector<Event>& dets_c = dets.events_of(file_id, cls);
            counts.n_ref += static_cast<std::int64_t>(refs_c.size());

            std::vector<Event> valid;
            std::vector<Event> failed;
            for (const Event& d : dets_c) {
                double covered = 0.0;
                for (const Event& r : refs_c) covered += overlap(d, r);
                if (covered / (d.offset - d.onset) >= cfg.rho_dtc) {
                    valid.push_back(d);
                } else {
                    failed.push_back(d);
                }
            }
            counts.fp += static_cast<std::int64_t>(failed.size());

            for (const Event& r : refs_c) {
                double covered = 0.0;
                for (const Event& d : valid) covered += overlap(r, d);
                if (covered / (r.offset - r.onset) >= cfg.rho_gtc) ++counts.tp;
            }

            for (const std::string& other : classes) {
                if (other == cls) continue;
                std::int64_t ct = 0;
                for (const Event& r : refs.events_of(file_id, other)) {
                    double covered = 0.0;
                    for (const Event& d : failed) covered += overlap(r, d);
                    if (covered / (r.offset - r.onset) >= cfg.rho_cttc) ++ct;
                }
                if (ct > 0) result.cross_triggers[{cls, other}] += ct;
            }
        }
    }
    return result;
}

} // namespace sedscore::oracle
