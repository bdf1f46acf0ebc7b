#ifndef MMS_GENERATE_HPP_
#define MMS_GENERATE_HPP_

#include "mms/instance.hpp"
#include "mms/oracle.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mms {

enum class Profile { goods, chores, mixed, negative_mixed_only, with_nonnegative_agent };

[[nodiscard]] auto to_string(Profile p) -> std::string;
/// Accepts "goods", "chores", "mixed", "negative-mixed-only",
/// "with-nonnegative-agent" (underscores also accepted).
[[nodiscard]] auto profile_from_string(std::string const& s) -> Profile;

class generation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenSpec {
  std::size_t num_agents = 3;
  std::size_t num_items = 6;
  Profile profile = Profile::mixed;
  std::int64_t min_value = -9;
  std::int64_t max_value = 9;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxGenerationAttempts = 10'000;

/// Deterministic integer instance for the given spec. Profiles:
///   goods / chores: entries in [max(lo,0), hi] / [lo, min(hi,0)];
///   mixed: entries in [lo, hi];
///   negative_mixed_only: every row has a positive and a negative entry and
///     every guarantee is negative;
///   with_nonnegative_agent: mixed entries, at least one guarantee >= 0.
/// Guarantee-sign profiles are rejection sampled with the oracle, at most
/// kMaxGenerationAttempts times, then generation_error is thrown.
/// Infeasible specs throw std::invalid_argument.
[[nodiscard]] auto generate(GenSpec const& spec, SearchBudget const& budget = {}) -> Instance;

}  // namespace mms

#endif  // MMS_GENERATE_HPP_
