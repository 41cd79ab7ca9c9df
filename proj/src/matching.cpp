#include "sedscore/matching.hpp"

namespace sedscore {

BipartiteMatcher::BipartiteMatcher(std::size_t n_left, std::size_t n_right)
    : adj_(n_left), match_right_(n_right, -1) {}

void BipartiteMatcher::add_edge(std::size_t left, std::size_t right) {
    adj_[left].push_back(right);
}

bool BipartiteMatcher::try_augment(std::size_t left, std::vector<char>& visited) {
    for (std::size_t right : adj_[left]) {
        if (visited[right]) continue;
        visited[right] = 1;
        if (match_right_[right] < 0 ||
            try_augment(static_cast<std::size_t>(match_right_[right]), visited)) {
            match_right_[right] = static_cast<int>(left);
            return true;
        }
    }
    return false;
}

std::size_t BipartiteMatcher::max_matching() {
    std::size_t matched = 0;
    for (std::size_t left = 0; left < adj_.size(); ++left) {
        std::vector<char> visited(match_right_.size(), 0);
        if (try_augment(left, visited)) ++matched;
    }
    return matched;
}

} // namespace sedscore
