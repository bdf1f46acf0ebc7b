#include "mms/verify.hpp"

namespace mms {

auto verify_mms(Instance const& inst, Allocation const& alloc, SearchBudget const& budget) -> VerificationReport {
  validate_allocation(alloc, inst.num_agents(), inst.num_items());
  VerificationReport report;
  report.overall = true;
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    AgentVerification v;
    v.utility = bundle_utility(inst, a, alloc[a]);
    v.guarantee = mms_value(inst.row(a), inst.num_agents(), budget);
    v.satisfied = v.utility >= v.guarantee;
    report.overall = report.overall && v.satisfied;
    report.per_agent.push_back(v);
  }
  return report;
}

}  // namespace mms
