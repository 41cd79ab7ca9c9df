#pragma once

#include "sedscore/counts.hpp"
#include "sedscore/events.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace sedscore::testutil {

// Single-file corpus over "a.wav".
inline Corpus corpus_a(const std::vector<Event>& events, double duration = 10.0) {
    return Corpus::build(events, {{"a.wav", duration}});
}

inline Event ev(double onset, double offset, const std::string& cls = "Dog",
                const std::string& file = "a.wav") {
    return {file, cls, onset, offset};
}

inline const ClassCounts* find_counts(const std::vector<ClassCounts>& counts,
                                      const std::string& cls) {
    auto it = std::find_if(counts.begin(), counts.end(),
                           [&](const ClassCounts& c) { return c.class_label == cls; });
    return it == counts.end() ? nullptr : &*it;
}

} // namespace sedscore::testutil
