#pragma once

#include "sedscore/counts.hpp"
#include "sedscore/events.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sedscore {

// Presence/absence scoring on a fixed time grid per file.
struct SegmentConfig {
    double segment_size{1.0};

    void validate() const;
};

// Per-class activity over the grid of one file. Cell i covers
// [i*s, min((i+1)*s, duration)); the final partial cell is a cell like
// any other.
struct ActivityGrid {
    std::string file_id;
    std::string class_label;
    std::vector<char> segments; // 1 = active

    std::size_t active_count() const;
};

std::size_t grid_cell_count(const FileMeta& meta, const SegmentConfig& cfg);

// Marks cell i active iff some event overlaps it by a strictly positive
// amount. Events are assumed clipped to file bounds.
ActivityGrid binarize(const std::vector<Event>& events, const FileMeta& meta,
                      const SegmentConfig& cfg, const std::string& class_label);

// Cell-wise comparison over all files: tp = active in both, fp = active
// in detections only, fn = active in references only, tn = neither.
// n_ref counts reference-active cells. Result sorted by class label.
std::vector<ClassCounts> segment_counts(const Corpus& refs, const Corpus& dets,
                                        const SegmentConfig& cfg);

} // namespace sedscore
