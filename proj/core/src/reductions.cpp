#include "mms/reductions.hpp"

#include "mms/matching.hpp"
#include "mms/mimic.hpp"
#include "mms/sop.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace mms {

auto to_string(RuleId r) -> std::string {
  switch (r) {
    case RuleId::singleton: return "SINGLETON";
    case RuleId::hall_matching: return "HALL_MATCHING";
    case RuleId::chores_last_item: return "CHORES_LAST_ITEM";
    case RuleId::mimic: return "MIMIC";
    case RuleId::dummy_pad: return "DUMMY_PAD";
    case RuleId::sop: return "SOP";
  }
  return "?";
}

auto rule_from_string(std::string const& s) -> RuleId {
  for (auto r : {RuleId::singleton, RuleId::hall_matching, RuleId::chores_last_item, RuleId::mimic, RuleId::dummy_pad,
                 RuleId::sop}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown rule id '" + s + "'");
}

auto is_allocating(RuleId r) -> bool {
  return r == RuleId::singleton || r == RuleId::hall_matching || r == RuleId::chores_last_item;
}

namespace {

auto identity_map(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

auto shape_step(Instance const& inst, RuleId rule) -> ReductionStep {
  ReductionStep s;
  s.rule = rule;
  s.input_agents = inst.num_agents();
  s.input_items = inst.num_items();
  s.agent_map = identity_map(inst.num_agents());
  s.item_map = identity_map(inst.num_items());
  return s;
}

}  // namespace

auto make_allocating_step(Instance const& inst, RuleId rule, std::map<AgentIndex, Bundle> assignment,
                          std::string annotation) -> ReductionStep {
  if (!is_allocating(rule)) throw std::invalid_argument(to_string(rule) + " does not allocate items");
  if (assignment.empty()) throw std::invalid_argument("a reduction rule must remove at least one agent");
  ReductionStep s;
  s.rule = rule;
  s.input_agents = inst.num_agents();
  s.input_items = inst.num_items();
  std::vector<char> used(inst.num_items(), 0);
  for (auto const& [agent, bundle] : assignment) {
    if (agent >= inst.num_agents()) throw std::out_of_range("assigned agent out of range");
    s.removed_agents.push_back(agent);
    for (auto item : bundle) {
      if (item >= inst.num_items()) throw std::out_of_range("assigned item out of range");
      if (used[item]) throw std::invalid_argument("assigned bundles overlap");
      used[item] = 1;
      s.removed_items.push_back(item);
    }
  }
  if (s.removed_items.empty()) throw std::invalid_argument("a reduction rule must remove at least one item");
  if (s.removed_agents.size() == inst.num_agents()) {
    throw std::invalid_argument("a reduction rule may not remove every agent");
  }
  std::sort(s.removed_items.begin(), s.removed_items.end());
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (!assignment.contains(a)) s.agent_map.push_back(a);
  }
  for (ItemIndex j = 0; j < inst.num_items(); ++j) {
    if (!used[j]) s.item_map.push_back(j);
  }
  s.result_instance = remove_agents_and_items(inst, s.removed_agents, s.removed_items);
  s.assignment = std::move(assignment);
  s.annotation = std::move(annotation);
  return s;
}

auto make_dummy_pad_step(Instance const& inst, std::size_t target_items) -> ReductionStep {
  auto s = shape_step(inst, RuleId::dummy_pad);
  s.result_instance = pad_with_dummies(inst, target_items);
  s.dummy_count = target_items - inst.num_items();
  s.annotation = "padded with " + std::to_string(s.dummy_count) + " zero-utility items";
  return s;
}

auto make_sop_step(Instance const& inst) -> ReductionStep {
  auto s = shape_step(inst, RuleId::sop);
  auto t = to_sop(inst);
  s.result_instance = std::move(t.sop_instance);
  s.sop_perms = std::move(t.perms);
  s.annotation = "reordered every row non-increasingly";
  return s;
}

auto make_mimic_step(Instance const& inst, AgentIndex pivot, std::vector<Rational> guarantees) -> ReductionStep {
  auto s = shape_step(inst, RuleId::mimic);
  auto rec = build_mimicked(inst, pivot, guarantees);
  s.result_instance = std::move(rec.mimicked_instance);
  s.mimic_pivot = pivot;
  s.mimic_replaced = std::move(rec.replaced_agents);
  s.mimic_guarantees = std::move(guarantees);
  s.annotation = "mimicked instance on pivot agent " + std::to_string(pivot);
  return s;
}

auto replay_step(Instance const& inst, ReductionStep const& step) -> ReductionStep {
  switch (step.rule) {
    case RuleId::dummy_pad: return make_dummy_pad_step(inst, inst.num_items() + step.dummy_count);
    case RuleId::sop: {
      auto s = shape_step(inst, RuleId::sop);
      auto t = sop_from_perms(inst, step.sop_perms);
      s.result_instance = std::move(t.sop_instance);
      s.sop_perms = std::move(t.perms);
      s.annotation = step.annotation;
      return s;
    }
    case RuleId::mimic: {
      auto s = shape_step(inst, RuleId::mimic);
      s.result_instance = inst;
      auto row = inst.row(step.mimic_pivot);
      for (auto j : step.mimic_replaced) s.result_instance.set_row(j, row);
      s.mimic_pivot = step.mimic_pivot;
      s.mimic_replaced = step.mimic_replaced;
      s.mimic_guarantees = step.mimic_guarantees;
      s.annotation = step.annotation;
      return s;
    }
    default: return make_allocating_step(inst, step.rule, step.assignment, step.annotation);
  }
}

auto check_valid(Instance const& inst, ReductionStep const& step, SearchBudget const& budget) -> bool {
  if (!is_allocating(step.rule)) throw std::invalid_argument(to_string(step.rule) + " is not an allocating rule");
  if (step.removed_agents.empty() || step.removed_items.empty()) {
    throw std::invalid_argument("a reduction rule must remove a nonempty set of agents and of items");
  }
  if (step.input_agents != inst.num_agents() || step.input_items != inst.num_items()) {
    throw std::invalid_argument("step does not match the instance");
  }
  auto before = all_guarantees(inst, budget);
  for (auto const& [agent, bundle] : step.assignment) {
    if (bundle_utility(inst, agent, bundle) < before[agent]) return false;
  }
  auto const& result = step.result_instance;
  for (AgentIndex r = 0; r < result.num_agents(); ++r) {
    auto after = mms_value(result.row(r), result.num_agents(), budget);
    if (after < before[step.agent_map[r]]) return false;
  }
  return true;
}

auto apply_singleton_rule(Instance const& inst, std::vector<Allocation> const& per_agent_partitions)
    -> std::optional<ReductionStep> {
  if (per_agent_partitions.size() != inst.num_agents()) {
    throw std::invalid_argument("one partition per agent required");
  }
  std::optional<ItemIndex> best_item;
  AgentIndex best_agent = 0;
  for (AgentIndex a = 0; a < per_agent_partitions.size(); ++a) {
    std::optional<ItemIndex> largest;
    for (auto const& b : per_agent_partitions[a]) {
      if (b.size() == 1 && (!largest || b.items().front() > *largest)) largest = b.items().front();
    }
    if (!largest) return std::nullopt;
    if (!best_item || *largest > *best_item) {
      best_item = largest;
      best_agent = a;
    }
  }
  std::map<AgentIndex, Bundle> assignment{{best_agent, Bundle{*best_item}}};
  return make_allocating_step(inst, RuleId::singleton, std::move(assignment),
                              "singleton {" + std::to_string(*best_item) + "} to agent " + std::to_string(best_agent));
}

auto apply_hall_rule(Instance const& inst, AgentIndex pivot_agent, Allocation const& pivot_partition,
                     SearchBudget const& budget) -> HallOutcome {
  return apply_hall_rule(inst, pivot_agent, pivot_partition, all_guarantees(inst, budget));
}

auto apply_hall_rule(Instance const& inst, AgentIndex pivot_agent, Allocation const& pivot_partition,
                     std::vector<Rational> const& guarantees) -> HallOutcome {
  auto n = inst.num_agents();
  validate_allocation(pivot_partition, n, inst.num_items());
  if (guarantees.size() != n) throw std::invalid_argument("one guarantee per agent required");
  if (n > 30) throw std::invalid_argument("matching rule supports at most 30 agents");
  auto sizes = bundle_sizes(pivot_partition);
  if (!satisfies(PartitionPredicate::n_minus_1_small, sizes)) {
    throw std::invalid_argument("pivot partition needs n-1 bundles of size 1 or 2");
  }
  if (!is_mms_for_agent(inst, pivot_agent, pivot_partition, guarantees.at(pivot_agent))) {
    throw std::invalid_argument("pivot partition is not MMS for the pivot agent");
  }

  // satisfied[b] = bitmask of agents satisfied by bundle b
  std::vector<std::uint32_t> satisfied(n, 0);
  std::vector<std::vector<std::size_t>> agent_adj(n);
  for (AgentIndex a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (bundle_utility(inst, a, pivot_partition[b]) >= guarantees[a]) {
        satisfied[b] |= 1U << a;
        agent_adj[a].push_back(b);
      }
    }
  }
  auto match = max_bipartite_matching(agent_adj, n);
  if (matching_size(match) == n) {
    Allocation full(n);
    for (AgentIndex a = 0; a < n; ++a) full[a] = pivot_partition[match[a]];
    return {std::move(full), std::nullopt};
  }

  auto neighbourhood = [&](std::uint32_t bundles) {
    std::uint32_t nb = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (bundles >> b & 1U) nb |= satisfied[b];
    }
    return nb;
  };

  // Smallest deficient set, scanning subsets by size then numerically.
  std::optional<std::uint32_t> deficient;
  for (std::size_t size = 1; size <= n && !deficient; ++size) {
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      if (static_cast<std::size_t>(std::popcount(neighbourhood(mask))) < size) {
        deficient = mask;
        break;
      }
    }
  }
  if (!deficient) throw invariant_error("no perfect matching but no Hall-deficient set");
  auto y = *deficient;

  std::optional<std::size_t> drop;
  for (std::size_t b = 0; b < n; ++b) {
    if ((y >> b & 1U) && sizes[b] != 1 && sizes[b] != 2) drop = b;
  }
  if (!drop) {
    for (std::size_t b = 0; b < n; ++b) {
      if ((y >> b & 1U) && (!drop || sizes[b] > sizes[*drop])) drop = b;
    }
  }
  auto y_prime = y & ~(1U << *drop);
  auto nb = neighbourhood(y_prime);
  if (std::popcount(nb) != std::popcount(y_prime) || y_prime == 0) {
    throw invariant_error("reduced deficient set is not matched to a neighbourhood of the same size");
  }

  std::vector<std::size_t> bundle_ids;
  std::vector<AgentIndex> agent_ids;
  for (std::size_t b = 0; b < n; ++b) {
    if (y_prime >> b & 1U) bundle_ids.push_back(b);
  }
  for (AgentIndex a = 0; a < n; ++a) {
    if (nb >> a & 1U) agent_ids.push_back(a);
  }
  std::vector<std::vector<std::size_t>> adj(agent_ids.size());
  for (std::size_t ai = 0; ai < agent_ids.size(); ++ai) {
    for (std::size_t bi = 0; bi < bundle_ids.size(); ++bi) {
      if (satisfied[bundle_ids[bi]] >> agent_ids[ai] & 1U) adj[ai].push_back(bi);
    }
  }
  auto sub = max_bipartite_matching(adj, bundle_ids.size());
  if (matching_size(sub) != agent_ids.size()) throw invariant_error("minimal deficient set has no perfect matching");

  std::map<AgentIndex, Bundle> assignment;
  std::string note = "matched";
  for (std::size_t ai = 0; ai < agent_ids.size(); ++ai) {
    auto b = bundle_ids[sub[ai]];
    assignment[agent_ids[ai]] = pivot_partition[b];
    note += " bundle " + std::to_string(b) + "->agent " + std::to_string(agent_ids[ai]);
  }
  note += " (pivot agent " + std::to_string(pivot_agent) + ", dropped bundle " + std::to_string(*drop) + ")";
  return {std::nullopt, make_allocating_step(inst, RuleId::hall_matching, std::move(assignment), std::move(note))};
}

auto apply_chores_rule(Instance const& inst, AgentIndex chores_agent, SearchBudget const& budget) -> ChoresOutcome {
  return apply_chores_rule(inst, chores_agent, all_guarantees(inst, budget), budget);
}

auto apply_chores_rule(Instance const& inst, AgentIndex chores_agent, std::vector<Rational> const& guarantees,
                       SearchBudget const& budget) -> ChoresOutcome {
  auto n = inst.num_agents();
  auto m = inst.num_items();
  if (chores_agent >= n) throw std::out_of_range("chores agent out of range");
  if (!has_sop(inst)) throw std::invalid_argument("chores rule requires same-order preferences");
  if (m > 2 * n + 1) throw std::invalid_argument("chores rule requires m <= 2n+1");
  if (item_sign(inst, chores_agent) != ItemSign::chores) {
    throw std::invalid_argument("agent " + std::to_string(chores_agent) + " is not a chores agent");
  }
  if (guarantees.size() != n) throw std::invalid_argument("one guarantee per agent required");
  for (auto const& g : guarantees) {
    if (g.sign() >= 0) throw std::invalid_argument("chores rule requires every guarantee to be negative");
  }

  ChoresOutcome out;
  if (n == 1) {
    std::vector<ItemIndex> all(m);
    std::iota(all.begin(), all.end(), ItemIndex{0});
    out.kind = ChoresOutcome::Kind::full_allocation;
    out.full_allocation = Allocation{Bundle(std::move(all))};
    return out;
  }
  for (AgentIndex a = 0; a < n; ++a) {
    auto p = find_mms_partition(inst, a, PartitionPredicate::no_singleton_no_empty, budget);
    if (!p) continue;
    auto sizes = bundle_sizes(*p);
    if (!satisfies(PartitionPredicate::n_minus_1_small, sizes)) {
      throw invariant_error("partition without empty or singleton bundles lacks n-1 bundles of size 2");
    }
    if (m == 2 * n + 1 && std::count(sizes.begin(), sizes.end(), 3) != 1) {
      throw invariant_error("expected exactly one 3-bundle when m = 2n+1");
    }
    out.kind = ChoresOutcome::Kind::delegate_to_hall;
    out.hall_pivot = a;
    out.hall_partition = std::move(*p);
    return out;
  }
  out.kind = ChoresOutcome::Kind::step;
  out.step = make_allocating_step(inst, RuleId::chores_last_item, {{chores_agent, Bundle{m - 1}}},
                                  "last item " + std::to_string(m - 1) + " to chores agent " +
                                      std::to_string(chores_agent));
  return out;
}

auto unmap_allocation(Instance const& input, ReductionStep const& step, Allocation const& alloc) -> Allocation {
  if (step.input_agents != input.num_agents() || step.input_items != input.num_items()) {
    throw std::invalid_argument("reduction chain is inconsistent");
  }
  auto const& result = step.result_instance;
  validate_allocation(alloc, result.num_agents(), result.num_items());
  switch (step.rule) {
    case RuleId::dummy_pad: {
      Allocation out;
      for (auto const& b : alloc) {
        std::vector<ItemIndex> kept;
        for (auto item : b) {
          if (item < input.num_items()) kept.push_back(item);
        }
        out.emplace_back(std::move(kept));
      }
      return out;
    }
    case RuleId::sop: return lift_allocation(sop_from_perms(input, step.sop_perms), alloc);
    case RuleId::mimic: {
      MimicRecord rec;
      rec.pivot = step.mimic_pivot;
      rec.replaced_agents = step.mimic_replaced;
      rec.mimicked_instance = result;
      rec.original_guarantees = step.mimic_guarantees;
      return lift_mimicked_allocation(rec, input, alloc);
    }
    default: break;
  }
  Allocation out(input.num_agents());
  for (AgentIndex r = 0; r < alloc.size(); ++r) {
    std::vector<ItemIndex> items;
    for (auto item : alloc[r]) items.push_back(step.item_map.at(item));
    out[step.agent_map.at(r)] = Bundle(std::move(items));
  }
  for (auto const& [agent, bundle] : step.assignment) out[agent] = bundle;
  validate_allocation(out, input.num_agents(), input.num_items());
  return out;
}

auto compose(Instance const& inst, std::vector<ReductionStep> const& steps, Allocation const& tail) -> Allocation {
  std::vector<Instance const*> inputs;
  inputs.reserve(steps.size());
  auto const* current = &inst;
  for (auto const& s : steps) {
    if (s.input_agents != current->num_agents() || s.input_items != current->num_items()) {
      throw std::invalid_argument("reduction chain is inconsistent");
    }
    inputs.push_back(current);
    current = &s.result_instance;
  }
  validate_allocation(tail, current->num_agents(), current->num_items());
  Allocation alloc = tail;
  for (std::size_t t = steps.size(); t-- > 0;) alloc = unmap_allocation(*inputs[t], steps[t], alloc);
  return alloc;
}

}  // namespace mms
