#ifndef MMS_ORACLE_HPP_
#define MMS_ORACLE_HPP_

#include "mms/instance.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mms {

/// Node limit for every exhaustive search. Exceeding it is an error, never a
/// silently approximate answer.
struct SearchBudget {
  std::uint64_t max_nodes = 50'000'000;
};

class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Guarantee of one agent for k bundles plus a partition that attains it.
struct MmsCertificate {
  AgentIndex agent = 0;
  Rational guarantee;
  Allocation witness;
};

/// Structural conditions on the bundle-size multiset of a partition. Sizes
/// include the empty bundles.
enum class PartitionPredicate {
  any,
  has_singleton,
  no_singleton_no_empty,
  has_empty_or_singleton,
  n_minus_1_small,  ///< all but at most one bundle has size 1 or 2
  three_three_bundles,
};

[[nodiscard]] auto to_string(PartitionPredicate p) -> std::string;
[[nodiscard]] auto satisfies(PartitionPredicate p, std::span<std::size_t const> sizes) -> bool;
[[nodiscard]] auto bundle_sizes(Allocation const& alloc) -> std::vector<std::size_t>;

using SizePredicate = std::function<bool(std::span<std::size_t const> sizes)>;

/// Max over partitions of the items into k bundles (empty bundles allowed) of
/// the minimum bundle value, for a single utility row.
[[nodiscard]] auto mms_value(std::span<Rational const> row, std::size_t k, SearchBudget const& budget = {})
    -> Rational;

/// Guarantee and witness for `agent` with k bundles. The witness is the
/// optimal partition with the lexicographically smallest restricted-growth
/// encoding (item 0 in bundle 0, each item joins an existing bundle or opens
/// the next one); empty bundles are appended last.
[[nodiscard]] auto mms_guarantee(Instance const& inst, AgentIndex agent, std::size_t k,
                                 SearchBudget const& budget = {}) -> MmsCertificate;
[[nodiscard]] auto mms_guarantee(Instance const& inst, AgentIndex agent, SearchBudget const& budget = {})
    -> MmsCertificate;

/// Guarantees of all agents for n bundles.
[[nodiscard]] auto all_guarantees(Instance const& inst, SearchBudget const& budget = {}) -> std::vector<Rational>;

/// First optimal n-bundle partition (same order as the witness) satisfying
/// the predicate, or nullopt when no optimal partition does.
[[nodiscard]] auto find_mms_partition(Instance const& inst, AgentIndex agent, PartitionPredicate pred,
                                      SearchBudget const& budget = {}) -> std::optional<Allocation>;
[[nodiscard]] auto find_mms_partition(Instance const& inst, AgentIndex agent, SizePredicate const& pred,
                                      SearchBudget const& budget = {}) -> std::optional<Allocation>;

/// Calls `visit` on every optimal k-bundle partition of the row in canonical
/// order until it returns false. Returns the number visited.
auto for_each_mms_partition(std::span<Rational const> row, std::size_t k, Rational const& guarantee,
                            std::function<bool(Allocation const&)> const& visit, SearchBudget const& budget = {})
    -> std::size_t;

/// True iff every bundle of `alloc` is worth at least the agent's guarantee.
[[nodiscard]] auto is_mms_for_agent(Instance const& inst, AgentIndex agent, Allocation const& alloc,
                                    SearchBudget const& budget = {}) -> bool;
[[nodiscard]] auto is_mms_for_agent(Instance const& inst, AgentIndex agent, Allocation const& alloc,
                                    Rational const& guarantee) -> bool;

}  // namespace mms

#endif  // MMS_ORACLE_HPP_
