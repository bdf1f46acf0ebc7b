#include "mms/mimic.hpp"

namespace mms {

auto MimicRecord::mimicked_guarantees() const -> std::vector<Rational> {
  auto out = original_guarantees;
  for (auto j : replaced_agents) out[j] = original_guarantees[pivot];
  return out;
}

auto build_mimicked(Instance const& inst, AgentIndex pivot, SearchBudget const& budget) -> MimicRecord {
  return build_mimicked(inst, pivot, all_guarantees(inst, budget));
}

auto build_mimicked(Instance const& inst, AgentIndex pivot, std::vector<Rational> guarantees) -> MimicRecord {
  if (guarantees.size() != inst.num_agents()) throw std::invalid_argument("one guarantee per agent required");
  if (pivot >= inst.num_agents()) throw std::out_of_range("pivot agent out of range");
  if (guarantees[pivot].sign() <= 0) {
    throw std::invalid_argument("mimic pivot " + std::to_string(pivot) + " has non-positive guarantee " +
                                guarantees[pivot].to_string());
  }
  MimicRecord rec;
  rec.pivot = pivot;
  rec.mimicked_instance = inst;
  auto pivot_row = inst.row(pivot);
  for (AgentIndex j = 0; j < inst.num_agents(); ++j) {
    if (guarantees[j].sign() <= 0) {
      rec.replaced_agents.push_back(j);
      rec.mimicked_instance.set_row(j, pivot_row);
    }
  }
  rec.original_guarantees = std::move(guarantees);
  return rec;
}

auto lift_mimicked_allocation(MimicRecord const& rec, Instance const& inst, Allocation const& alloc) -> Allocation {
  auto const& mim = rec.mimicked_instance;
  validate_allocation(alloc, mim.num_agents(), mim.num_items());
  if (inst.num_agents() != mim.num_agents() || inst.num_items() != mim.num_items()) {
    throw std::invalid_argument("instance does not match the mimic record");
  }
  auto mg = rec.mimicked_guarantees();
  for (AgentIndex j = 0; j < mim.num_agents(); ++j) {
    if (bundle_utility(mim, j, alloc[j]) < mg[j]) {
      throw std::invalid_argument("allocation is not MMS for the mimicked instance (agent " + std::to_string(j) + ")");
    }
  }
  Allocation out = alloc;
  for (auto j : rec.replaced_agents) {
    if (j == rec.pivot) continue;
    if (bundle_utility(inst, j, out[j]) < rec.original_guarantees[j]) {
      for (auto item : out[j]) out[rec.pivot].insert(item);
      out[j] = Bundle{};
    }
  }
  return out;
}

}  // namespace mms
