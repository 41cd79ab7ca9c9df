#include "sedscore/counts.hpp"

#include <algorithm>

namespace sedscore {

ClassCounts& counts_for(std::vector<ClassCounts>& counts, const std::string& class_label) {
    auto it = std::find_if(counts.begin(), counts.end(), [&](const ClassCounts& c) {
        return c.class_label == class_label;
    });
    if (it != counts.end()) return *it;
    counts.push_back(ClassCounts{class_label, 0, 0, 0, 0, 0});
    return counts.back();
}

} // namespace sedscore
