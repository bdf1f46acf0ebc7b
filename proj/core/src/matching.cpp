#include "mms/matching.hpp"

#include <algorithm>
#include <functional>

namespace mms {

auto max_bipartite_matching(std::vector<std::vector<std::size_t>> const& adjacency, std::size_t right_count)
    -> std::vector<std::size_t> {
  std::vector<std::size_t> left_match(adjacency.size(), kUnmatched);
  std::vector<std::size_t> right_match(right_count, kUnmatched);
  std::vector<char> visited;

  std::function<bool(std::size_t)> augment = [&](std::size_t l) -> bool {
    for (auto r : adjacency[l]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (right_match[r] == kUnmatched || augment(right_match[r])) {
        right_match[r] = l;
        left_match[l] = r;
        return true;
      }
    }
    return false;
  };

  for (std::size_t l = 0; l < adjacency.size(); ++l) {
    visited.assign(right_count, 0);
    augment(l);
  }
  return left_match;
}

auto matching_size(std::vector<std::size_t> const& match) -> std::size_t {
  return static_cast<std::size_t>(std::count_if(match.begin(), match.end(), [](auto r) { return r != kUnmatched; }));
}

}  // namespace mms
