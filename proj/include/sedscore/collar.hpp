#pragma once

#include "sedscore/counts.hpp"
#include "sedscore/events.hpp"

#include <vector>

namespace sedscore {

// Event-level validation against onset/offset tolerance collars. The
// offset collar widens with the reference duration:
//   max(offset_collar_floor, offset_collar_ratio * ref duration).
// require_offset=false gives the onset-only variant.
struct CollarConfig {
    double onset_collar{0.2};
    double offset_collar_floor{0.2};
    double offset_collar_ratio{0.2};
    bool require_offset{true};

    void validate() const;
};

// True iff `det` falls within the collars of `ref`. Caller guarantees
// both share file and class.
bool collar_pair_valid(const Event& ref, const Event& det, const CollarConfig& cfg);

// Per-class counts from a maximum bipartite matching over collar-valid
// (reference, detection) pairs within each file and class. Each
// reference matches at most one detection and vice versa; the matching
// cardinality is unique, so counts are independent of event order.
// Classes appearing only in detections produce n_ref = 0 entries.
// Result sorted by class label.
std::vector<ClassCounts> collar_counts(const Corpus& refs, const Corpus& dets,
                                       const CollarConfig& cfg);

} // namespace sedscore
