#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sedscore {

// Per-class tally produced by a validation criterion. For event-level
// criteria the unit is one event; for the segment criterion the unit is
// one grid cell and tn is meaningful. tp + fn == n_ref always holds.
struct ClassCounts {
    std::string class_label;
    std::int64_t tp{0};
    std::int64_t fp{0};
    std::int64_t fn{0};
    std::int64_t tn{0};
    std::int64_t n_ref{0};
};

// Locates the entry for a class; appends a zeroed one when missing.
ClassCounts& counts_for(std::vector<ClassCounts>& counts, const std::string& class_label);

} // namespace sedscore
