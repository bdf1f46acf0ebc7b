#include "mms/small_cases.hpp"

#include "mms/matching.hpp"
#include "mms/sop.hpp"

#include <algorithm>

namespace mms {

namespace {

auto satisfied_all(Instance const& inst, Allocation const& alloc, std::vector<Rational> const& g) -> bool {
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (bundle_utility(inst, a, alloc[a]) < g[a]) return false;
  }
  return true;
}

auto without(Bundle b, ItemIndex item) -> Bundle {
  b.erase(item);
  return b;
}

auto with(Bundle b, ItemIndex item) -> Bundle {
  b.insert(item);
  return b;
}

/// The single item of a \ b, for bundles that differ in exactly one item.
auto only_difference(Bundle const& a, Bundle const& b) -> ItemIndex {
  for (auto item : a) {
    if (!b.contains(item)) return item;
  }
  throw invariant_error("bundles do not differ");
}

auto count_size(Allocation const& alloc, std::size_t size) -> std::size_t {
  return static_cast<std::size_t>(
      std::count_if(alloc.begin(), alloc.end(), [size](Bundle const& b) { return b.size() == size; }));
}

void set_path(ThreeAgentReport* report, std::string path) {
  if (report) report->path = std::move(path);
}

}  // namespace

auto build_disjointness_graph(Allocation const& pi_i, Allocation const& pi_j) -> DisjointnessGraph {
  if (pi_i.size() != 3 || pi_j.size() != 3) throw std::invalid_argument("disjointness graph needs 3-bundle partitions");
  std::size_t m = 0;
  for (auto const& b : pi_i) m += b.size();
  validate_allocation(pi_i, 3, m);
  validate_allocation(pi_j, 3, m);
  DisjointnessGraph g{pi_i, pi_j, {}};
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      if (intersection_size(pi_i[x], pi_j[y]) == 0) g.edges.emplace_back(x, y);
    }
  }
  return g;
}

auto assign_by_satisfaction(Instance const& inst, Allocation const& candidate, SearchBudget const& budget)
    -> std::optional<Allocation> {
  return assign_by_satisfaction(inst, candidate, all_guarantees(inst, budget));
}

auto assign_by_satisfaction(Instance const& inst, Allocation const& candidate, std::vector<Rational> const& guarantees)
    -> std::optional<Allocation> {
  auto n = inst.num_agents();
  validate_allocation(candidate, n, inst.num_items());
  std::vector<std::vector<std::size_t>> adj(n);
  for (AgentIndex a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (bundle_utility(inst, a, candidate[b]) >= guarantees.at(a)) adj[a].push_back(b);
    }
  }
  auto match = max_bipartite_matching(adj, n);
  if (matching_size(match) != n) return std::nullopt;
  Allocation out(n);
  for (AgentIndex a = 0; a < n; ++a) out[a] = candidate[match[a]];
  return out;
}

auto solve_two_agents(Instance const& inst, SearchBudget const& budget) -> Allocation {
  if (inst.num_agents() != 2) throw std::invalid_argument("divide and choose needs exactly 2 agents");
  auto cert = mms_guarantee(inst, 0, budget);
  auto const& first = cert.witness[0];
  auto const& second = cert.witness[1];
  if (bundle_utility(inst, 1, first) > bundle_utility(inst, 1, second)) return {second, first};
  return {first, second};
}

auto single_edge_candidate(Allocation const& pi_i, Allocation const& pi_j, std::size_t x, std::size_t y,
                           std::size_t num_items) -> Allocation {
  auto const& left = pi_i.at(x);
  auto const& right = pi_j.at(y);
  if (intersection_size(left, right) != 0) throw std::invalid_argument("bundles of a candidate edge must be disjoint");
  std::vector<ItemIndex> rest;
  for (ItemIndex item = 0; item < num_items; ++item) {
    if (!left.contains(item) && !right.contains(item)) rest.push_back(item);
  }
  return {left, right, Bundle(std::move(rest))};
}

auto single_edge_condition(Instance const& inst, AgentIndex agent_i, Allocation const& pi_i, Allocation const& pi_j,
                           std::size_t x, std::size_t y) -> bool {
  auto target = bundle_utility(inst, agent_i, pi_j.at(y));
  for (std::size_t z = 0; z < pi_i.size(); ++z) {
    if (z != x && bundle_utility(inst, agent_i, pi_i[z]) >= target) return true;
  }
  return false;
}

auto solve_with_two_edges(Instance const& inst, std::array<Allocation, 3> const& witnesses, std::size_t i,
                          std::size_t j, std::vector<Rational> const& guarantees, std::string* path)
    -> std::optional<Allocation> {
  for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
    auto graph = build_disjointness_graph(witnesses[a], witnesses[b]);
    for (auto [x, y] : graph.edges) {
      if (!single_edge_condition(inst, a, witnesses[a], witnesses[b], x, y)) continue;
      auto cand = single_edge_candidate(witnesses[a], witnesses[b], x, y, inst.num_items());
      auto res = assign_by_satisfaction(inst, cand, guarantees);
      if (!res) throw invariant_error("single-edge candidate admits no satisfying assignment");
      if (path) {
        *path = "edge (" + std::to_string(x) + "," + std::to_string(y) + ") of G(pi^" + std::to_string(a) + ",pi^" +
                std::to_string(b) + ")";
      }
      return res;
    }
  }
  for (auto w : {j, i}) {
    if (auto res = assign_by_satisfaction(inst, witnesses[w], guarantees)) {
      if (path) *path = "picking order on pi^" + std::to_string(w);
      return res;
    }
  }
  return std::nullopt;
}

auto construct_3x9(Instance const& inst, std::array<Allocation, 3> const& witnesses, SearchBudget const& budget,
                   ThreeAgentReport* report) -> Allocation {
  if (inst.num_agents() != 3 || inst.num_items() != 9) throw std::invalid_argument("construction needs 3 agents, 9 items");
  if (!has_sop(inst)) throw std::invalid_argument("construction needs same-order preferences");
  auto g = all_guarantees(inst, budget);
  for (std::size_t a = 0; a < 3; ++a) {
    validate_allocation(witnesses[a], 3, 9);
    if (count_size(witnesses[a], 3) != 3) throw std::invalid_argument("witnesses must consist of three 3-bundles");
    if (!is_mms_for_agent(inst, a, witnesses[a], g[a])) {
      throw std::invalid_argument("witness " + std::to_string(a) + " is not MMS for its agent");
    }
  }
  auto const& w = witnesses;
  auto finish = [&](Allocation alloc, std::string path) {
    if (!satisfied_all(inst, alloc, g)) throw invariant_error("3x9 construction (" + path + ") failed to satisfy");
    set_path(report, std::move(path));
    return alloc;
  };

  // Identical bundles in two witnesses: agent i likes two bundles of w[j].
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (auto const& bi : w[i]) {
        for (auto const& bj : w[j]) {
          if (bi != bj) continue;
          auto res = assign_by_satisfaction(inst, w[j], g);
          if (!res) throw invariant_error("picking order failed on identical bundles");
          return finish(*res, "3x9 identical bundles, picking order on pi^" + std::to_string(j));
        }
      }
    }
  }

  // Two bundles sharing exactly two items.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      for (auto const& bi : w[i]) {
        for (auto const& bj : w[j]) {
          if (intersection_size(bi, bj) != 2) continue;
          // With SOP a smaller index is weakly better for everyone, so the
          // bundle holding the smaller odd item is the better one.
          auto xi = only_difference(bi, bj);
          auto xj = only_difference(bj, bi);
          bool j_better = xj < xi;
          auto worse_owner = j_better ? i : j;
          auto better_owner = j_better ? j : i;
          auto third = 3 - i - j;
          auto const& worse = j_better ? bi : bj;
          auto const& better = j_better ? bj : bi;

          std::vector<Bundle> others;
          for (auto const& b : w[worse_owner]) {
            if (b != worse) others.push_back(b);
          }
          if (bundle_utility(inst, better_owner, others[0]) < g[better_owner]) std::swap(others[0], others[1]);
          if (bundle_utility(inst, better_owner, others[0]) < g[better_owner]) {
            throw invariant_error("neither remaining bundle satisfies the better-bundle owner");
          }
          Allocation alloc(3);
          if (bundle_utility(inst, third, worse) >= g[third]) {
            alloc[third] = worse;
            alloc[better_owner] = others[0];
            alloc[worse_owner] = others[1];
            return finish(std::move(alloc), "3x9 two shared items, third agent takes the worse bundle");
          }
          auto o_x = only_difference(worse, better);
          auto o_y = only_difference(better, worse);
          Bundle holder;
          Bundle rest;
          for (auto const& b : w[better_owner]) {
            if (b == better) continue;
            if (b.contains(o_x)) {
              holder = b;
            } else {
              rest = b;
            }
          }
          auto swapped = with(without(holder, o_x), o_y);
          alloc[worse_owner] = worse;
          if (bundle_utility(inst, third, swapped) >= g[third]) {
            alloc[third] = swapped;
            alloc[better_owner] = rest;
          } else {
            alloc[third] = rest;
            alloc[better_owner] = swapped;
          }
          return finish(std::move(alloc), "3x9 two shared items, swap construction");
        }
      }
    }
  }

  // Every cross intersection is a single item.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      for (auto const& bi : w[i]) {
        for (auto const& bj : w[j]) {
          if (intersection_size(bi, bj) != 1) throw invariant_error("3x9 case analysis is not exhaustive");
        }
      }
    }
  }
  constexpr ItemIndex last = 8;
  std::array<Bundle, 3> first;
  for (std::size_t a = 0; a < 3; ++a) {
    for (auto const& b : w[a]) {
      if (b.contains(last)) first[a] = b;
    }
  }
  std::vector<ItemIndex> outside;
  for (ItemIndex item = 0; item < 9; ++item) {
    if (!first[0].contains(item) && !first[1].contains(item) && !first[2].contains(item)) outside.push_back(item);
  }
  if (outside.size() != 2) throw invariant_error("expected two items outside the bundles holding the last item");
  Allocation alloc{with(without(first[0], last), outside[1]), with(without(first[1], last), outside[0]), first[2]};
  return finish(std::move(alloc), "3x9 single-item intersections, replace the last item");
}

auto solve_three_agents(Instance const& inst, SearchBudget const& budget, ThreeAgentReport* report) -> Allocation {
  if (inst.num_agents() != 3) throw std::invalid_argument("three-agent solver needs exactly 3 agents");
  if (inst.num_items() > 8) throw std::invalid_argument("three-agent solver needs m <= 8");
  auto const m = inst.num_items();
  auto padded = pad_with_dummies(inst, 8);
  auto g = all_guarantees(padded, budget);

  std::array<Allocation, 3> w;
  for (AgentIndex a = 0; a < 3; ++a) w[a] = mms_guarantee(padded, a, budget).witness;

  auto strip = [m](Allocation alloc) {
    for (auto& b : alloc) {
      std::vector<ItemIndex> kept;
      for (auto item : b) {
        if (item < m) kept.push_back(item);
      }
      b = Bundle(std::move(kept));
    }
    return alloc;
  };

  auto try_pairs = [&](std::string const& label) -> std::optional<Allocation> {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        if (build_disjointness_graph(w[i], w[j]).edges.size() < 2) continue;
        std::string detail;
        auto res = solve_with_two_edges(padded, w, i, j, g, &detail);
        if (!res) throw invariant_error("two-edge construction failed for agents " + std::to_string(i) + "," + std::to_string(j));
        set_path(report, label + ": " + detail);
        return strip(*res);
      }
    }
    return std::nullopt;
  };

  auto has_small = [](std::span<std::size_t const> sizes) {
    return std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s <= 1; });
  };
  auto two_pairs = [](std::span<std::size_t const> sizes) { return std::count(sizes.begin(), sizes.end(), 2) >= 2; };
  auto by_shape = [&](auto const& shape, std::string const& label) -> std::optional<Allocation> {
    for (AgentIndex a = 0; a < 3; ++a) {
      if (!shape(bundle_sizes(w[a]))) continue;
      if (auto res = try_pairs(label)) return res;
      throw invariant_error(label + " did not yield two edges");
    }
    return std::nullopt;
  };
  if (auto res = by_shape(has_small, "bundle of size at most one")) return *res;
  if (auto res = by_shape(two_pairs, "two 2-bundles")) return *res;

  // Other optimal partitions may offer a small bundle or two 2-bundles.
  for (auto const& [shape, label] : {std::pair<SizePredicate, std::string>{has_small, "bundle of size at most one"},
                                     std::pair<SizePredicate, std::string>{two_pairs, "two 2-bundles"}}) {
    for (AgentIndex a = 0; a < 3; ++a) {
      if (auto p = find_mms_partition(padded, a, shape, budget)) {
        w[a] = *p;
        if (auto res = try_pairs(label + " (alternative optimum)")) return *res;
        throw invariant_error(label + " did not yield two edges");
      }
    }
  }

  // Every witness is one 2-bundle and two 3-bundles.
  for (AgentIndex a = 0; a < 3; ++a) {
    if (count_size(w[a], 2) != 1 || count_size(w[a], 3) != 2) {
      throw invariant_error("three-agent witness is not of shape (2,3,3)");
    }
  }
  auto nine = pad_with_dummies(padded, 9);
  constexpr ItemIndex dummy = 8;
  auto t = to_sop(nine);
  std::array<Allocation, 3> sop_witnesses;
  for (AgentIndex a = 0; a < 3; ++a) {
    auto extended = w[a];
    for (auto& b : extended) {
      if (b.size() == 2) b.insert(dummy);
    }
    sop_witnesses[a] = map_partition_to_sop(t, a, extended);
  }
  ThreeAgentReport inner;
  auto sop_alloc = construct_3x9(t.sop_instance, sop_witnesses, budget, &inner);
  auto lifted = lift_allocation(t, sop_alloc);
  auto result = strip(lifted);
  set_path(report, "three 3-bundles after dummy: " + inner.path);
  if (!satisfied_all(inst, result, g)) throw invariant_error("three-agent construction failed to satisfy");
  return result;
}

}  // namespace mms
