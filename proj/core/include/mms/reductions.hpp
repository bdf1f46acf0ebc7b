#ifndef MMS_REDUCTIONS_HPP_
#define MMS_REDUCTIONS_HPP_

#include "mms/instance.hpp"
#include "mms/oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mms {

enum class RuleId { singleton, hall_matching, chores_last_item, mimic, dummy_pad, sop };

[[nodiscard]] auto to_string(RuleId r) -> std::string;
[[nodiscard]] auto rule_from_string(std::string const& s) -> RuleId;
/// Rules that hand bundles to agents and delete both.
[[nodiscard]] auto is_allocating(RuleId r) -> bool;

/// One applied transformation of an instance, with enough information to map
/// an allocation of the result back to the input.
///
/// Allocating rules delete `removed_agents` and `removed_items` and compact
/// the survivors in order; agent_map[r] / item_map[r] give the input index of
/// result agent / item r. The other rules keep the agent set: dummy_pad
/// appends zero columns, sop reorders each row by `sop_perms`, and mimic
/// overwrites the rows of `mimic_replaced` with the pivot's row.
struct ReductionStep {
  RuleId rule = RuleId::singleton;
  std::size_t input_agents = 0;
  std::size_t input_items = 0;
  std::vector<AgentIndex> removed_agents;
  std::vector<ItemIndex> removed_items;
  std::map<AgentIndex, Bundle> assignment;
  Instance result_instance;
  std::vector<AgentIndex> agent_map;
  std::vector<ItemIndex> item_map;

  std::size_t dummy_count = 0;
  std::vector<std::vector<ItemIndex>> sop_perms;
  AgentIndex mimic_pivot = 0;
  std::vector<AgentIndex> mimic_replaced;
  std::vector<Rational> mimic_guarantees;

  std::string annotation;
};

/// Builds an allocating step from its assignment. The assigned bundles must be
/// pairwise disjoint and non-empty as a whole.
[[nodiscard]] auto make_allocating_step(Instance const& inst, RuleId rule, std::map<AgentIndex, Bundle> assignment,
                                        std::string annotation = {}) -> ReductionStep;
[[nodiscard]] auto make_dummy_pad_step(Instance const& inst, std::size_t target_items) -> ReductionStep;
[[nodiscard]] auto make_sop_step(Instance const& inst) -> ReductionStep;
[[nodiscard]] auto make_mimic_step(Instance const& inst, AgentIndex pivot, std::vector<Rational> guarantees)
    -> ReductionStep;

/// Applies the step's transformation to `inst` from the recorded fields only
/// (ignores result_instance). Used to replay traces.
[[nodiscard]] auto replay_step(Instance const& inst, ReductionStep const& step) -> ReductionStep;

/// Oracle-backed validity: every removed agent gets at least its guarantee in
/// `inst`, and no surviving agent's guarantee drops in the result. Slow and
/// exact; meant for tests and paranoid runs.
[[nodiscard]] auto check_valid(Instance const& inst, ReductionStep const& step, SearchBudget const& budget = {})
    -> bool;

/// Gives item o_k to agent j, where k is the largest index such that {o_k} is
/// a bundle of agent j's partition (smallest j on ties). Returns nullopt when
/// some partition has no singleton bundle.
[[nodiscard]] auto apply_singleton_rule(Instance const& inst, std::vector<Allocation> const& per_agent_partitions)
    -> std::optional<ReductionStep>;

struct HallOutcome {
  std::optional<Allocation> full_allocation;
  std::optional<ReductionStep> step;
};

/// Matching rule on a partition that is MMS for `pivot_agent` and has n-1
/// bundles of size 1 or 2. Either every bundle can be matched to an agent it
/// satisfies (full allocation), or a minimal Hall-deficient set of bundles is
/// found, one bundle dropped, and the rest matched to their neighbourhood.
[[nodiscard]] auto apply_hall_rule(Instance const& inst, AgentIndex pivot_agent, Allocation const& pivot_partition,
                                   SearchBudget const& budget = {}) -> HallOutcome;
[[nodiscard]] auto apply_hall_rule(Instance const& inst, AgentIndex pivot_agent, Allocation const& pivot_partition,
                                   std::vector<Rational> const& guarantees) -> HallOutcome;

struct ChoresOutcome {
  enum class Kind { full_allocation, step, delegate_to_hall };
  Kind kind = Kind::step;
  std::optional<Allocation> full_allocation;
  std::optional<ReductionStep> step;
  AgentIndex hall_pivot = 0;
  Allocation hall_partition;
};

/// Requires SOP, m <= 2n+1, a chores agent, and negative guarantees for all.
/// If some agent has an optimal partition with neither empty nor singleton
/// bundles the matching rule takes over; otherwise the last item goes to the
/// chores agent.
[[nodiscard]] auto apply_chores_rule(Instance const& inst, AgentIndex chores_agent, SearchBudget const& budget = {})
    -> ChoresOutcome;
[[nodiscard]] auto apply_chores_rule(Instance const& inst, AgentIndex chores_agent,
                                     std::vector<Rational> const& guarantees, SearchBudget const& budget = {})
    -> ChoresOutcome;

/// Maps `tail` (an allocation of the last step's result) back through the
/// chain to an allocation of `inst`.
[[nodiscard]] auto compose(Instance const& inst, std::vector<ReductionStep> const& steps, Allocation const& tail)
    -> Allocation;

/// One step back: allocation of step.result_instance -> allocation of `input`.
[[nodiscard]] auto unmap_allocation(Instance const& input, ReductionStep const& step, Allocation const& alloc)
    -> Allocation;

}  // namespace mms

#endif  // MMS_REDUCTIONS_HPP_
