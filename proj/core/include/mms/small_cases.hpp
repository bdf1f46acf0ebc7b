#ifndef MMS_SMALL_CASES_HPP_
#define MMS_SMALL_CASES_HPP_

#include "mms/instance.hpp"
#include "mms/oracle.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mms {

/// Bipartite graph between the three bundles of two partitions, with an
/// edge (x, y) whenever left bundle x and right bundle y share no item.
struct DisjointnessGraph {
  Allocation left_bundles;
  Allocation right_bundles;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

[[nodiscard]] auto build_disjointness_graph(Allocation const& pi_i, Allocation const& pi_j) -> DisjointnessGraph;

/// Matches agents to the candidate's bundles under "bundle is worth at least
/// the agent's guarantee". Returns the allocation if the matching is perfect.
[[nodiscard]] auto assign_by_satisfaction(Instance const& inst, Allocation const& candidate,
                                          SearchBudget const& budget = {}) -> std::optional<Allocation>;
[[nodiscard]] auto assign_by_satisfaction(Instance const& inst, Allocation const& candidate,
                                          std::vector<Rational> const& guarantees) -> std::optional<Allocation>;

/// Divide and choose: agent 0 splits by its witness, agent 1 takes the
/// bundle it prefers (the second on ties).
[[nodiscard]] auto solve_two_agents(Instance const& inst, SearchBudget const& budget = {}) -> Allocation;

/// Records which branch of the three-agent case analysis produced the result.
struct ThreeAgentReport {
  std::string path;
};

/// MMS allocation for three agents and at most eight items (padded to eight
/// internally). Throws invariant_error if every branch fails.
[[nodiscard]] auto solve_three_agents(Instance const& inst, SearchBudget const& budget = {},
                                      ThreeAgentReport* report = nullptr) -> Allocation;

/// Three agents, nine items, SOP, and for each agent an MMS partition made
/// of three 3-bundles.
[[nodiscard]] auto construct_3x9(Instance const& inst, std::array<Allocation, 3> const& witnesses,
                                 SearchBudget const& budget = {}, ThreeAgentReport* report = nullptr) -> Allocation;

/// Two-edge construction for a pair of three-agent witnesses (i, j): tries
/// the single-edge candidate on every edge that meets its value condition in
/// both orientations, then the picking order on either witness.
[[nodiscard]] auto solve_with_two_edges(Instance const& inst, std::array<Allocation, 3> const& witnesses,
                                        std::size_t i, std::size_t j, std::vector<Rational> const& guarantees,
                                        std::string* path = nullptr) -> std::optional<Allocation>;

/// Candidate (pi_i[x], pi_j[y], rest) for an edge (x, y) of G(pi_i, pi_j),
/// relabelled so that bundle 0 goes with the edge's left side.
[[nodiscard]] auto single_edge_candidate(Allocation const& pi_i, Allocation const& pi_j, std::size_t x, std::size_t y,
                                         std::size_t num_items) -> Allocation;

/// Whether some bundle z != x of pi_i is worth at least pi_j[y] to agent i.
[[nodiscard]] auto single_edge_condition(Instance const& inst, AgentIndex agent_i, Allocation const& pi_i,
                                         Allocation const& pi_j, std::size_t x, std::size_t y) -> bool;

}  // namespace mms

#endif  // MMS_SMALL_CASES_HPP_
