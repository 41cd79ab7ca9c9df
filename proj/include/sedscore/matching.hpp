#pragma once

#include <cstddef>
#include <vector>

namespace sedscore {

// Maximum-cardinality bipartite matching via augmenting paths (Kuhn's
// algorithm). The cardinality is unique, so the result does not depend
// on edge insertion order. Graphs here are per-file, per-class pair
// candidates and stay small.
class BipartiteMatcher {
public:
    BipartiteMatcher(std::size_t n_left, std::size_t n_right);

    void add_edge(std::size_t left, std::size_t right);

    // Size of a maximum matching.
    std::size_t max_matching();

private:
    bool try_augment(std::size_t left, std::vector<char>& visited);

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<int> match_right_;
};

} // namespace sedscore
