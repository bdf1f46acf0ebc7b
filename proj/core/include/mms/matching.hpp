#ifndef MMS_MATCHING_HPP_
#define MMS_MATCHING_HPP_

#include <cstddef>
#include <limits>
#include <vector>

namespace mms {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Maximum bipartite matching by augmenting paths (Kuhn). `adjacency[l]`
/// lists the right vertices adjacent to left vertex l, tried in order, so the
/// result is deterministic. Returns the partner of each left vertex or
/// kUnmatched.
[[nodiscard]] auto max_bipartite_matching(std::vector<std::vector<std::size_t>> const& adjacency,
                                          std::size_t right_count) -> std::vector<std::size_t>;

[[nodiscard]] auto matching_size(std::vector<std::size_t> const& match) -> std::size_t;

}  // namespace mms

#endif  // MMS_MATCHING_HPP_
