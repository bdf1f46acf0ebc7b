#ifndef MMS_MIMIC_HPP_
#define MMS_MIMIC_HPP_

#include "mms/instance.hpp"
#include "mms/oracle.hpp"

#include <vector>

namespace mms {

/// Instance in which every agent with non-positive guarantee takes over the
/// utility row of a positive pivot agent.
struct MimicRecord {
  AgentIndex pivot = 0;
  std::vector<AgentIndex> replaced_agents;
  Instance mimicked_instance;
  /// Guarantees in the original instance, indexed by agent.
  std::vector<Rational> original_guarantees;

  /// Guarantees in the mimicked instance: the pivot's for replaced agents,
  /// unchanged for everyone else.
  [[nodiscard]] auto mimicked_guarantees() const -> std::vector<Rational>;
};

/// Throws std::invalid_argument unless the pivot's guarantee is positive.
[[nodiscard]] auto build_mimicked(Instance const& inst, AgentIndex pivot, SearchBudget const& budget = {})
    -> MimicRecord;
[[nodiscard]] auto build_mimicked(Instance const& inst, AgentIndex pivot, std::vector<Rational> guarantees)
    -> MimicRecord;

/// Turns an MMS allocation of the mimicked instance into one of `inst`: every
/// replaced agent that falls short under its own row hands its bundle to the
/// pivot and keeps nothing. Throws std::invalid_argument when `alloc` is not
/// MMS for the mimicked instance.
[[nodiscard]] auto lift_mimicked_allocation(MimicRecord const& rec, Instance const& inst, Allocation const& alloc)
    -> Allocation;

}  // namespace mms

#endif  // MMS_MIMIC_HPP_
