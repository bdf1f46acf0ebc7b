#include "mms/solver.hpp"

#include "mms/matching.hpp"
#include "mms/small_cases.hpp"
#include "mms/sop.hpp"
#include "mms/verify.hpp"

#include <algorithm>
#include <numeric>

namespace mms {

auto to_string(SolveStatus s) -> std::string {
  switch (s) {
    case SolveStatus::solved: return "SOLVED";
    case SolveStatus::unknown_uncovered_case: return "UNKNOWN_UNCOVERED_CASE";
    case SolveStatus::budget_exceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

auto to_string(CoveredBy c) -> std::string {
  switch (c) {
    case CoveredBy::n_le_3: return "N_LE_3";
    case CoveredBy::non_negative_agent: return "NON_NEGATIVE_AGENT";
    case CoveredBy::all_chores_agents: return "ALL_CHORES_AGENTS";
    case CoveredBy::fallback_search: return "FALLBACK_SEARCH";
    case CoveredBy::none: return "NONE";
  }
  return "?";
}

auto SolveOutcome::steps() const -> std::vector<ReductionStep> {
  std::vector<ReductionStep> out;
  for (auto const& e : trace) {
    if (e.step) out.push_back(*e.step);
  }
  return out;
}

namespace {

auto everything_to(std::size_t n, std::size_t m, AgentIndex agent) -> Allocation {
  std::vector<ItemIndex> all(m);
  std::iota(all.begin(), all.end(), ItemIndex{0});
  Allocation alloc(n);
  alloc[agent] = Bundle(std::move(all));
  return alloc;
}

/// Accumulates the step chain and dispatch notes of one solve.
class Pipeline {
 public:
  Pipeline(Instance const& root, SolveOptions const& options, SolveOutcome& out)
      : options_(options), out_(out), current_(root) {}

  [[nodiscard]] auto current() const -> Instance const& { return current_; }
  [[nodiscard]] auto budget() const -> SearchBudget const& { return options_.budget; }

  void push(ReductionStep step) {
    if (options_.paranoid && is_allocating(step.rule) && !check_valid(current_, step, options_.budget)) {
      throw invariant_error(to_string(step.rule) + " step failed the validity check: " + step.annotation);
    }
    current_ = step.result_instance;
    auto note = to_string(step.rule) + ": " + step.annotation;
    out_.trace.push_back({std::move(note), std::move(step)});
  }

  void note(std::string text) { out_.trace.push_back({std::move(text), std::nullopt}); }

 private:
  SolveOptions const& options_;
  SolveOutcome& out_;
  Instance current_;
};

auto run_small(Pipeline& p) -> Allocation {
  auto const& inst = p.current();
  switch (inst.num_agents()) {
    case 1:
      p.note("single agent takes every item");
      return everything_to(1, inst.num_items(), 0);
    case 2:
      p.note("two agents: divide and choose");
      return solve_two_agents(inst, p.budget());
    case 3: {
      ThreeAgentReport report;
      auto alloc = solve_three_agents(inst, p.budget(), &report);
      p.note("three agents: " + report.path);
      return alloc;
    }
    default: throw invariant_error("small-case solver called with more than three agents");
  }
}

void check_item_bound(Instance const& inst) {
  if (inst.num_items() > inst.num_agents() + 5) throw invariant_error("reduction left more than n+5 items");
}

/// Every guarantee positive; reduce until three agents remain.
auto run_positive(Pipeline& p) -> Allocation {
  for (;;) {
    auto const& inst = p.current();
    check_item_bound(inst);
    auto n = inst.num_agents();
    if (n <= 3) return run_small(p);
    auto g = all_guarantees(inst, p.budget());
    if (std::any_of(g.begin(), g.end(), [](Rational const& v) { return v.sign() <= 0; })) {
      throw invariant_error("reduction produced a non-positive guarantee");
    }

    std::optional<std::pair<AgentIndex, Allocation>> no_singleton;
    for (AgentIndex a = 0; a < n && !no_singleton; ++a) {
      if (auto part = find_mms_partition(inst, a, PartitionPredicate::no_singleton_no_empty, p.budget())) {
        no_singleton.emplace(a, std::move(*part));
      }
    }
    if (no_singleton) {
      auto& [pivot, part] = *no_singleton;
      if (2 * n > inst.num_items() || !satisfies(PartitionPredicate::n_minus_1_small, bundle_sizes(part))) {
        throw invariant_error("partition without singletons is not n-1 pairs");
      }
      p.note("agent " + std::to_string(pivot) + " has an optimal partition without singletons " + to_string(part));
      auto hall = apply_hall_rule(inst, pivot, part, g);
      if (hall.full_allocation) {
        p.note("HALL_MATCHING: perfect matching, every bundle assigned");
        return *hall.full_allocation;
      }
      p.push(std::move(*hall.step));
      continue;
    }

    std::vector<Allocation> parts;
    for (AgentIndex a = 0; a < n; ++a) {
      auto part = find_mms_partition(inst, a, PartitionPredicate::has_singleton, p.budget());
      if (!part) throw invariant_error("positive agent has no optimal partition with a singleton");
      parts.push_back(std::move(*part));
    }
    auto step = apply_singleton_rule(inst, parts);
    if (!step) throw invariant_error("singleton rule did not apply");
    p.push(std::move(*step));
  }
}

auto run_non_negative(Pipeline& p, std::vector<Rational> const& g) -> Allocation {
  auto const& inst = p.current();
  auto positive = std::find_if(g.begin(), g.end(), [](Rational const& v) { return v.sign() > 0; });
  if (positive == g.end()) {
    auto zero = std::find_if(g.begin(), g.end(), [](Rational const& v) { return v.sign() == 0; });
    if (zero == g.end()) throw std::invalid_argument("no agent with a non-negative guarantee");
    auto agent = static_cast<AgentIndex>(zero - g.begin());
    p.note("every guarantee <= 0: agent " + std::to_string(agent) + " (guarantee 0) takes every item");
    return everything_to(inst.num_agents(), inst.num_items(), agent);
  }
  auto pivot = static_cast<AgentIndex>(positive - g.begin());
  p.push(make_mimic_step(inst, pivot, g));
  return run_positive(p);
}

auto run_chores(Pipeline& p) -> Allocation {
  for (;;) {
    auto const& inst = p.current();
    check_item_bound(inst);
    auto n = inst.num_agents();
    if (n <= 3) return run_small(p);
    auto g = all_guarantees(inst, p.budget());
    if (std::any_of(g.begin(), g.end(), [](Rational const& v) { return v.sign() >= 0; })) {
      p.note("non-negative agent appeared; switching to the non-negative path");
      return run_non_negative(p, g);
    }
    std::optional<AgentIndex> chores_agent;
    for (AgentIndex a = 0; a < n && !chores_agent; ++a) {
      if (item_sign(inst, a) == ItemSign::chores) chores_agent = a;
    }
    if (!chores_agent) throw invariant_error("chores path lost its chores agents");
    auto outcome = apply_chores_rule(inst, *chores_agent, g, p.budget());
    switch (outcome.kind) {
      case ChoresOutcome::Kind::full_allocation: return *outcome.full_allocation;
      case ChoresOutcome::Kind::step: p.push(std::move(*outcome.step)); break;
      case ChoresOutcome::Kind::delegate_to_hall: {
        p.note("agent " + std::to_string(outcome.hall_pivot) + " has an optimal partition of pairs " +
               to_string(outcome.hall_partition));
        auto hall = apply_hall_rule(inst, outcome.hall_pivot, outcome.hall_partition, g);
        if (hall.full_allocation) {
          p.note("HALL_MATCHING: perfect matching, every bundle assigned");
          return *hall.full_allocation;
        }
        p.push(std::move(*hall.step));
        break;
      }
    }
  }
}

void finish(Instance const& inst, SolveOutcome& out, Allocation tail, SearchBudget const& budget) {
  out.allocation = compose(inst, out.steps(), tail);
  out.tail = std::move(tail);
  auto report = verify_mms(inst, out.allocation, budget);
  if (!report.overall) throw invariant_error("constructed allocation is not MMS");
  out.status = SolveStatus::solved;
}

template <typename Body>
auto guarded(Body&& body) -> SolveOutcome {
  SolveOutcome out;
  try {
    body(out);
  } catch (budget_exceeded const& e) {
    out.status = SolveStatus::budget_exceeded;
    out.trace.push_back({std::string("budget exceeded: ") + e.what(), std::nullopt});
  }
  return out;
}

void require_sop_and_bound(Instance const& inst) {
  if (!has_sop(inst)) throw std::invalid_argument("instance must have same-order preferences");
  if (inst.num_items() > inst.num_agents() + 5) throw std::invalid_argument("requires m <= n+5");
}

/// Exhaustive partition enumeration; bundles are matched to agents at every
/// node under the optimistic value (current sum plus all remaining positive
/// utility), which is exact at the leaves.
class FallbackSearch {
 public:
  FallbackSearch(Instance const& inst, std::vector<Rational> guarantees, std::uint64_t max_nodes)
      : inst_(inst), g_(std::move(guarantees)), n_(inst.num_agents()), m_(inst.num_items()), max_nodes_(max_nodes),
        sums_(n_, std::vector<Rational>(n_)), labels_(m_, 0) {
    pos_rem_.assign(n_, std::vector<Rational>(m_ + 1));
    for (AgentIndex a = 0; a < n_; ++a) {
      for (std::size_t j = m_; j-- > 0;) {
        auto v = inst.utility(a, j);
        pos_rem_[a][j] = pos_rem_[a][j + 1] + (v.sign() > 0 ? v : Rational(0));
      }
    }
  }

  /// Returns true if a witness was found; `exhausted()` tells whether the
  /// search stopped on the node budget.
  auto run() -> bool { return dfs(0); }
  [[nodiscard]] auto exhausted() const -> bool { return out_of_budget_; }
  [[nodiscard]] auto result() const -> Allocation const& { return result_; }
  [[nodiscard]] auto nodes() const -> std::uint64_t { return nodes_; }

 private:
  auto feasible_matching(std::size_t idx, std::vector<std::size_t>* match_out) -> bool {
    std::vector<std::vector<std::size_t>> adj(n_);
    for (AgentIndex a = 0; a < n_; ++a) {
      auto const& rem = pos_rem_[a][idx];
      for (std::size_t b = 0; b < n_; ++b) {
        auto value = b < opened_ ? sums_[a][b] + rem : rem;
        if (value >= g_[a]) adj[a].push_back(b);
      }
    }
    auto match = max_bipartite_matching(adj, n_);
    if (matching_size(match) != n_) return false;
    if (match_out) *match_out = std::move(match);
    return true;
  }

  auto dfs(std::size_t idx) -> bool {
    if (++nodes_ > max_nodes_) {
      out_of_budget_ = true;
      return false;
    }
    std::vector<std::size_t> match;
    if (!feasible_matching(idx, idx == m_ ? &match : nullptr)) return false;
    if (idx == m_) {
      std::vector<std::vector<ItemIndex>> parts(n_);
      for (ItemIndex j = 0; j < m_; ++j) parts[labels_[j]].push_back(j);
      result_.assign(n_, Bundle{});
      for (AgentIndex a = 0; a < n_; ++a) result_[a] = Bundle(parts[match[a]]);
      return true;
    }
    auto place = [&](std::size_t b) {
      for (AgentIndex a = 0; a < n_; ++a) sums_[a][b] += inst_.utility(a, idx);
      labels_[idx] = b;
      auto found = dfs(idx + 1);
      for (AgentIndex a = 0; a < n_; ++a) sums_[a][b] -= inst_.utility(a, idx);
      return found;
    };
    for (std::size_t b = 0; b < opened_; ++b) {
      if (place(b)) return true;
      if (out_of_budget_) return false;
    }
    if (opened_ < n_) {
      ++opened_;
      auto found = place(opened_ - 1);
      --opened_;
      if (found) return true;
    }
    return false;
  }

  Instance const& inst_;
  std::vector<Rational> g_;
  std::size_t n_;
  std::size_t m_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::vector<std::vector<Rational>> sums_;
  std::vector<std::vector<Rational>> pos_rem_;
  std::vector<std::size_t> labels_;
  std::size_t opened_ = 0;
  Allocation result_;
};

}  // namespace

auto solve(Instance const& inst, SolveOptions const& options) -> SolveOutcome {
  auto n = inst.num_agents();
  if (inst.num_items() > n + 5) {
    throw std::invalid_argument("constructive solver requires m <= n+5 (got n = " + std::to_string(n) +
                                ", m = " + std::to_string(inst.num_items()) + ")");
  }
  return guarded([&](SolveOutcome& out) {
    Pipeline p(inst, options, out);
    if (inst.num_items() < n + 5) p.push(make_dummy_pad_step(inst, n + 5));
    p.push(make_sop_step(p.current()));

    if (n <= 3) {
      out.covered_by = CoveredBy::n_le_3;
      finish(inst, out, run_small(p), options.budget);
      return;
    }
    auto const& sop = p.current();
    auto g = all_guarantees(sop, options.budget);
    if (std::any_of(g.begin(), g.end(), [](Rational const& v) { return v.sign() >= 0; })) {
      out.covered_by = CoveredBy::non_negative_agent;
      p.note("dispatch: non-negative agent present");
      finish(inst, out, run_non_negative(p, g), options.budget);
      return;
    }
    bool all_chores = true;
    for (AgentIndex a = 0; a < n; ++a) all_chores = all_chores && item_sign(sop, a) == ItemSign::chores;
    if (all_chores) {
      out.covered_by = CoveredBy::all_chores_agents;
      p.note("dispatch: only chores agents");
      finish(inst, out, run_chores(p), options.budget);
      return;
    }
    p.note("dispatch: only negative mixed agents, no constructive path");
    if (!options.allow_fallback) {
      out.status = SolveStatus::unknown_uncovered_case;
      return;
    }
    auto fb = fallback_search(inst, options);
    for (auto& e : fb.trace) out.trace.push_back(std::move(e));
    // The fallback works on the original instance; drop the pad/SOP steps.
    std::erase_if(out.trace, [](TraceEntry const& e) { return e.step.has_value(); });
    out.status = fb.status;
    out.allocation = std::move(fb.allocation);
    out.tail = std::move(fb.tail);
    out.nonexistence_proven = fb.nonexistence_proven;
    out.covered_by = fb.status == SolveStatus::solved ? CoveredBy::fallback_search : CoveredBy::none;
  });
}

auto non_negative_path(Instance const& inst, SolveOptions const& options) -> SolveOutcome {
  require_sop_and_bound(inst);
  return guarded([&](SolveOutcome& out) {
    auto g = all_guarantees(inst, options.budget);
    if (std::none_of(g.begin(), g.end(), [](Rational const& v) { return v.sign() >= 0; })) {
      throw std::invalid_argument("non-negative path needs an agent with non-negative guarantee");
    }
    Pipeline p(inst, options, out);
    out.covered_by = CoveredBy::non_negative_agent;
    finish(inst, out, run_non_negative(p, g), options.budget);
  });
}

auto chores_path(Instance const& inst, SolveOptions const& options) -> SolveOutcome {
  require_sop_and_bound(inst);
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (item_sign(inst, a) != ItemSign::chores) {
      throw std::invalid_argument("chores path needs only chores agents (agent " + std::to_string(a) + ")");
    }
  }
  return guarded([&](SolveOutcome& out) {
    Pipeline p(inst, options, out);
    out.covered_by = CoveredBy::all_chores_agents;
    finish(inst, out, run_chores(p), options.budget);
  });
}

auto fallback_search(Instance const& inst, SolveOptions const& options) -> SolveOutcome {
  return guarded([&](SolveOutcome& out) {
    auto g = all_guarantees(inst, options.budget);
    FallbackSearch search(inst, g, options.fallback_nodes);
    if (search.run()) {
      out.status = SolveStatus::solved;
      out.covered_by = CoveredBy::fallback_search;
      out.allocation = search.result();
      out.tail = search.result();
      out.trace.push_back({"fallback search found an MMS allocation after " + std::to_string(search.nodes()) +
                               " nodes",
                           std::nullopt});
      if (!verify_mms(inst, out.allocation, options.budget).overall) {
        throw invariant_error("fallback search returned a non-MMS allocation");
      }
      return;
    }
    out.status = SolveStatus::unknown_uncovered_case;
    if (search.exhausted()) {
      out.trace.push_back({"fallback search ran out of its node budget", std::nullopt});
    } else {
      out.nonexistence_proven = true;
      out.trace.push_back({"NON-EXISTENCE: fallback search exhausted every allocation without an MMS witness",
                           std::nullopt});
    }
  });
}

}  // namespace mms
