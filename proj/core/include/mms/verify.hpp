#ifndef MMS_VERIFY_HPP_
#define MMS_VERIFY_HPP_

#include "mms/instance.hpp"
#include "mms/oracle.hpp"

#include <vector>

namespace mms {

struct AgentVerification {
  Rational utility;
  Rational guarantee;
  bool satisfied = false;

  [[nodiscard]] auto margin() const -> Rational { return utility - guarantee; }
};

struct VerificationReport {
  std::vector<AgentVerification> per_agent;
  bool overall = false;
};

/// Recomputes every guarantee with the oracle and checks each agent's bundle.
/// Throws std::invalid_argument (listing duplicated / missing items) when
/// `alloc` is not a partition of the instance's items into n bundles.
[[nodiscard]] auto verify_mms(Instance const& inst, Allocation const& alloc, SearchBudget const& budget = {})
    -> VerificationReport;

}  // namespace mms

#endif  // MMS_VERIFY_HPP_
