#ifndef MMS_SOLVER_HPP_
#define MMS_SOLVER_HPP_

#include "mms/instance.hpp"
#include "mms/oracle.hpp"
#include "mms/reductions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mms {

enum class SolveStatus { solved, unknown_uncovered_case, budget_exceeded };
enum class CoveredBy { n_le_3, non_negative_agent, all_chores_agents, fallback_search, none };

[[nodiscard]] auto to_string(SolveStatus s) -> std::string;
[[nodiscard]] auto to_string(CoveredBy c) -> std::string;

/// One trace record: a reduction step, or a case-dispatch note when `step`
/// is empty.
struct TraceEntry {
  std::string annotation;
  std::optional<ReductionStep> step;
};

struct SolveOptions {
  SearchBudget budget;
  /// Node limit for fallback_search's allocation enumeration.
  std::uint64_t fallback_nodes = 100'000'000;
  /// Oracle-check every reduction step, not just the final allocation.
  bool paranoid = false;
  /// Run fallback_search when no constructive path applies.
  bool allow_fallback = true;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::unknown_uncovered_case;
  Allocation allocation;
  std::vector<TraceEntry> trace;
  CoveredBy covered_by = CoveredBy::none;
  /// Allocation of the last step's result instance; composing the trace's
  /// steps over it gives `allocation`.
  Allocation tail;
  /// fallback_search exhausted the whole space without finding a witness.
  bool nonexistence_proven = false;

  [[nodiscard]] auto steps() const -> std::vector<ReductionStep>;
};

/// Constructive MMS allocation for m <= n+5 when n <= 3, some guarantee is
/// non-negative, or every agent is a chores agent; otherwise fallback_search
/// (if allowed). Pads to n+5 items, moves to SOP, dispatches, and maps the
/// result back. Throws std::invalid_argument when m > n+5.
[[nodiscard]] auto solve(Instance const& inst, SolveOptions const& options = {}) -> SolveOutcome;

/// Requires SOP and a non-negative guarantee. If every guarantee is <= 0 the
/// zero-guarantee agent takes everything; otherwise the instance is mimicked
/// on a positive pivot and reduced with the singleton and matching rules.
[[nodiscard]] auto non_negative_path(Instance const& inst, SolveOptions const& options = {}) -> SolveOutcome;

/// Requires SOP, m <= n+5 and only chores agents; reduces with the chores
/// rule (and the matching rule it delegates to) down to three agents.
[[nodiscard]] auto chores_path(Instance const& inst, SolveOptions const& options = {}) -> SolveOutcome;

/// Exhaustive search over partitions into at most n bundles, matching bundles
/// to agents they satisfy. Reports unknown_uncovered_case when the budget
/// runs out, and additionally sets nonexistence_proven when the space was
/// exhausted without a witness.
[[nodiscard]] auto fallback_search(Instance const& inst, SolveOptions const& options = {}) -> SolveOutcome;

}  // namespace mms

#endif  // MMS_SOLVER_HPP_
