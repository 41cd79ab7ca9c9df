#include "sedscore/segment.hpp"

#include "sedscore/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sedscore {

void SegmentConfig::validate() const {
    if (!(segment_size > 0.0)) throw EvalError("segment size must be positive");
}

std::size_t ActivityGrid::active_count() const {
    return static_cast<std::size_t>(std::count(segments.begin(), segments.end(), 1));
}

std::size_t grid_cell_count(const FileMeta& meta, const SegmentConfig& cfg) {
    return static_cast<std::size_t>(std::ceil(meta.duration / cfg.segment_size));
}

ActivityGrid binarize(const std::vector<Event>& events, const FileMeta& meta,
                      const SegmentConfig& cfg, const std::string& class_label) {
    ActivityGrid grid;
    grid.file_id = meta.file_id;
    grid.class_label = class_label;
    grid.segments.assign(grid_cell_count(meta, cfg), 0);
    const double s = cfg.segment_size;
    for (const Event& e : events) {
        // only cells the event can touch
        const auto first = static_cast<std::size_t>(
            std::max(0.0, std::floor(e.onset / s)));
        for (std::size_t i = first; i < grid.segments.size(); ++i) {
            const double cell_on = static_cast<double>(i) * s;
            if (cell_on >= e.offset) break;
            const double cell_off = std::min(cell_on + s, meta.duration);
            if (intersection_duration(e.onset, e.offset, cell_on, cell_off) > 0.0) {
                grid.segments[i] = 1;
            }
        }
    }
    return grid;
}

std::vector<ClassCounts> segment_counts(const Corpus& refs, const Corpus& dets,
                                        const SegmentConfig& cfg) {
    cfg.validate();

    std::set<std::string> classes = refs.class_set();
    classes.insert(dets.class_set().begin(), dets.class_set().end());

    std::vector<ClassCounts> out;
    for (const std::string& cls : classes) {
        ClassCounts& counts = counts_for(out, cls);
        for (const auto& [file_id, meta] : refs.files()) {
            const ActivityGrid ref_grid = binarize(refs.events_of(file_id, cls), meta, cfg, cls);
            const ActivityGrid det_grid = binarize(dets.events_of(file_id, cls), meta, cfg, cls);
            for (std::size_t i = 0; i < ref_grid.segments.size(); ++i) {
                const bool r = ref_grid.segments[i] != 0;
                const bool d = det_grid.segments[i] != 0;
                if (r && d) ++counts.tp;
                else if (d) ++counts.fp;
                else if (r) ++counts.fn;
                else ++counts.tn;
                if (r) ++counts.n_ref;
            }
        }
    }
    return out;
}

} // namespace sedscore
