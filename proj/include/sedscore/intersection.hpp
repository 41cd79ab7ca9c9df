#pragma once

#include "sedscore/counts.hpp"
#include "sedscore/events.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sedscore {

// Overlap-ratio validation. A detection is a TP candidate when at least
// rho_dtc of its duration intersects same-class references; a reference
// is a TP when at least rho_gtc of its duration is covered by such
// candidates. Detections failing the first test are FPs; those FPs
// cross-trigger foreign-class references at ratio rho_cttc.
struct IntersectionConfig {
    double rho_dtc{0.5};
    double rho_gtc{0.5};
    double rho_cttc{0.3};

    void validate() const;
};

struct IntersectionClassCounts {
    std::int64_t tp{0};
    std::int64_t fp{0};
    std::int64_t n_ref{0};

    std::int64_t fn() const { return n_ref - tp; }
};

struct IntersectionCounts {
    std::map<std::string, IntersectionClassCounts> per_class;
    // (detection class, foreign reference class) -> cross-triggered
    // reference count. Absent pairs are zero.
    std::map<std::pair<std::string, std::string>, std::int64_t> cross_triggers;

    std::int64_t ct(const std::string& det_class, const std::string& ref_class) const;
};

// Splits class-c detections of one file into those meeting the DTC
// ratio and those failing it. Ratios use summed intersections without
// de-overlap, so values above 1 can occur.
void dtc_partition(const std::vector<Event>& dets_c, const std::vector<Event>& refs_c,
                   double rho_dtc, std::vector<Event>& dtc_valid,
                   std::vector<Event>& dtc_failed);

// Number of references covered to at least rho_gtc by DTC-valid
// detections. Each reference counts at most once.
std::int64_t gtc_count(const std::vector<Event>& refs_c, const std::vector<Event>& dtc_valid,
                       double rho_gtc);

// Number of class-k references cross-triggered by the failed class-c
// detections of the same file.
std::int64_t cttc_count(const std::vector<Event>& dtc_failed_c,
                        const std::vector<Event>& refs_k, double rho_cttc);

// Full per-class tally over the corpus pair. fp counts each DTC-failed
// detection once; cross-triggers sub-classify those FPs without
// removing them from fp.
IntersectionCounts intersection_counts(const Corpus& refs, const Corpus& dets,
                                       const IntersectionConfig& cfg);

// Flattened view for F1 computation (fn = n_ref - tp).
std::vector<ClassCounts> to_class_counts(const IntersectionCounts& counts);

} // namespace sedscore
