#ifndef MMS_SOP_HPP_
#define MMS_SOP_HPP_

#include "mms/instance.hpp"

#include <vector>

namespace mms {

/// Same-order-preference counterpart of an instance.
///
/// perms[i][j] is the original item that agent i ranks j-th, so
/// sop_instance.utility(i, j) == original.utility(i, perms[i][j]) and every
/// row of sop_instance is non-increasing.
struct SopTransform {
  Instance sop_instance;
  std::vector<std::vector<ItemIndex>> perms;
};

/// Stable sort of each row, ties kept in original index order.
[[nodiscard]] auto to_sop(Instance const& inst) -> SopTransform;

/// Rebuilds the transform from recorded permutations and the original rows.
[[nodiscard]] auto sop_from_perms(Instance const& original, std::vector<std::vector<ItemIndex>> perms) -> SopTransform;

[[nodiscard]] auto has_sop(Instance const& inst) -> bool;

/// Maps an allocation of the SOP instance to one of the original instance in
/// which every agent's bundle is worth at least its SOP bundle.
///
/// SOP items are visited in index order; the agent holding item j takes its
/// best remaining original item (smallest index on ties). When agent i picks
/// at step j at most j items are gone, so it gets an item it ranks no lower
/// than j-th, and this holds for negative utilities as well.
[[nodiscard]] auto lift_allocation(SopTransform const& t, Allocation const& sop_alloc) -> Allocation;

/// Re-expresses a partition of the original items as the same-valued
/// partition of the SOP items for agent i (item perms[i][p] becomes item p).
[[nodiscard]] auto map_partition_to_sop(SopTransform const& t, AgentIndex agent, Allocation const& original_partition)
    -> Allocation;

}  // namespace mms

#endif  // MMS_SOP_HPP_
