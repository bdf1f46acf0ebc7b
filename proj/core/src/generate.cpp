#include "mms/generate.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>

namespace mms {

namespace {

/// Uniform integer in [lo, hi]. Written out instead of using
/// std::uniform_int_distribution so instances are identical across standard
/// libraries; mt19937_64's output sequence is fixed by the standard.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  auto operator()(std::int64_t lo, std::int64_t hi) -> std::int64_t {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

auto fill(Draw& draw, std::size_t n, std::size_t m, std::int64_t lo, std::int64_t hi) -> Instance {
  Instance inst(n, m);
  for (AgentIndex i = 0; i < n; ++i) {
    for (ItemIndex j = 0; j < m; ++j) inst.set_utility(i, j, Rational(draw(lo, hi)));
  }
  return inst;
}

/// Row with at least one strictly positive and one strictly negative entry.
void fill_mixed_row(Draw& draw, Instance& inst, AgentIndex i, std::int64_t lo, std::int64_t hi) {
  auto m = inst.num_items();
  for (;;) {
    for (ItemIndex j = 0; j < m; ++j) inst.set_utility(i, j, Rational(draw(lo, hi)));
    if (item_sign(inst, i) == ItemSign::mixed) return;
  }
}

}  // namespace

auto to_string(Profile p) -> std::string {
  switch (p) {
    case Profile::goods: return "goods";
    case Profile::chores: return "chores";
    case Profile::mixed: return "mixed";
    case Profile::negative_mixed_only: return "negative-mixed-only";
    case Profile::with_nonnegative_agent: return "with-nonnegative-agent";
  }
  return "?";
}

auto profile_from_string(std::string const& s) -> Profile {
  auto norm = s;
  std::replace(norm.begin(), norm.end(), '_', '-');
  std::transform(norm.begin(), norm.end(), norm.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto p : {Profile::goods, Profile::chores, Profile::mixed, Profile::negative_mixed_only,
                 Profile::with_nonnegative_agent}) {
    if (to_string(p) == norm) return p;
  }
  throw std::invalid_argument("unknown profile '" + s + "'");
}

auto generate(GenSpec const& spec, SearchBudget const& budget) -> Instance {
  auto n = spec.num_agents;
  auto m = spec.num_items;
  auto lo = spec.min_value;
  auto hi = spec.max_value;
  if (n == 0) throw std::invalid_argument("need at least one agent");
  if (lo > hi) throw std::invalid_argument("empty value range");
  Draw draw(spec.seed);
  switch (spec.profile) {
    case Profile::goods:
      if (hi < 0) throw std::invalid_argument("goods profile needs a non-negative value range");
      return fill(draw, n, m, std::max<std::int64_t>(lo, 0), hi);
    case Profile::chores:
      if (lo > 0) throw std::invalid_argument("chores profile needs a non-positive value range");
      return fill(draw, n, m, lo, std::min<std::int64_t>(hi, 0));
    case Profile::mixed: return fill(draw, n, m, lo, hi);
    case Profile::negative_mixed_only: {
      if (m < 2 || lo >= 0 || hi <= 0) {
        throw std::invalid_argument("negative-mixed-only needs at least 2 items and a range containing both signs");
      }
      for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        Instance inst(n, m);
        for (AgentIndex i = 0; i < n; ++i) fill_mixed_row(draw, inst, i, lo, hi);
        auto g = all_guarantees(inst, budget);
        if (std::all_of(g.begin(), g.end(), [](Rational const& v) { return v.sign() < 0; })) return inst;
      }
      throw generation_error("profile negative-mixed-only: no instance found after " +
                             std::to_string(kMaxGenerationAttempts) + " attempts");
    }
    case Profile::with_nonnegative_agent: {
      if (hi < 0) throw std::invalid_argument("with-nonnegative-agent needs a range containing a non-negative value");
      for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        auto inst = fill(draw, n, m, lo, hi);
        for (AgentIndex i = 0; i < n; ++i) {
          if (mms_value(inst.row(i), n, budget).sign() >= 0) return inst;
        }
      }
      throw generation_error("profile with-nonnegative-agent: no instance found after " +
                             std::to_string(kMaxGenerationAttempts) + " attempts");
    }
  }
  throw std::invalid_argument("unknown profile");
}

}  // namespace mms
