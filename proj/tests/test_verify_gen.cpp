#include "mms/generate.hpp"
#include "mms/oracle.hpp"
#include "mms/verify.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mms;
using mms::testing::ints;

TEST_SUITE("verify_gen") {
  TEST_CASE("verify_mms on appendix A") {
    auto inst = ints({{-1, -1, -1, -1}, {-1, -1, -1, -1}});
    auto ok = verify_mms(inst, Allocation{Bundle{0, 1}, Bundle{2, 3}});
    CHECK(ok.overall);
    CHECK(ok.per_agent[0].margin() == Rational(0));
    CHECK(ok.per_agent[1].margin() == Rational(0));
    auto bad = verify_mms(inst, Allocation{Bundle{0, 1, 2}, Bundle{3}});
    CHECK_FALSE(bad.overall);
    CHECK_FALSE(bad.per_agent[0].satisfied);
    CHECK(bad.per_agent[0].utility == Rational(-3));
    CHECK(bad.per_agent[0].guarantee == Rational(-2));
    CHECK(bad.per_agent[1].satisfied);

    auto plus3 = ints({{-1, -1, -1, -4}, {-1, -1, -1, -4}});
    auto r3 = verify_mms(plus3, Allocation{Bundle{3}, Bundle{0, 1, 2}});
    CHECK(r3.overall);
    CHECK(r3.per_agent[0].margin() == Rational(0));
  }

  TEST_CASE("verify_mms single agent and errors") {
    auto one = ints({{-7, 3}});
    CHECK(verify_mms(one, Allocation{Bundle{0, 1}}).overall);
    auto two = ints({{1, 1}, {1, 1}});
    CHECK_THROWS_AS((void)verify_mms(two, Allocation{Bundle{0}, Bundle{0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)verify_mms(two, Allocation{Bundle{0, 1}}), std::invalid_argument);
  }

  TEST_CASE("generated rows follow the profile") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto goods = generate(GenSpec{3, 6, Profile::goods, -9, 9, seed});
      auto chores = generate(GenSpec{3, 6, Profile::chores, -9, 9, seed});
      auto mixed = generate(GenSpec{3, 6, Profile::mixed, -9, 9, seed});
      for (AgentIndex i = 0; i < 3; ++i) {
        for (ItemIndex j = 0; j < 6; ++j) {
          CHECK(goods.utility(i, j) >= Rational(0));
          CHECK(goods.utility(i, j) <= Rational(9));
          CHECK(chores.utility(i, j) <= Rational(0));
          CHECK(mixed.utility(i, j) >= Rational(-9));
          CHECK(mixed.utility(i, j) <= Rational(9));
        }
      }
    }
  }

  TEST_CASE("guarantee-sign profiles") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto neg = generate(GenSpec{4, 9, Profile::negative_mixed_only, -9, 9, seed});
      for (AgentIndex i = 0; i < 4; ++i) {
        CHECK(item_sign(neg, i) == ItemSign::mixed);
        CHECK(mms_guarantee(neg, i).guarantee < Rational(0));
      }
      auto nonneg = generate(GenSpec{4, 8, Profile::with_nonnegative_agent, -9, 9, seed});
      auto g = all_guarantees(nonneg);
      CHECK(std::any_of(g.begin(), g.end(), [](Rational const& v) { return v.sign() >= 0; }));
    }
  }

  TEST_CASE("generation is deterministic") {
    GenSpec spec{4, 9, Profile::mixed, -9, 9, 42};
    CHECK(generate(spec) == generate(spec));
    auto other = spec;
    other.seed = 43;
    CHECK_FALSE(generate(spec) == generate(other));
  }

  TEST_CASE("infeasible specs") {
    CHECK_THROWS_AS((void)generate(GenSpec{3, 1, Profile::negative_mixed_only, -9, 9, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)generate(GenSpec{3, 4, Profile::goods, -9, -1, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)generate(GenSpec{0, 4, Profile::goods, 0, 9, 0}), std::invalid_argument);
    // only non-positive values: no agent can be mixed
    CHECK_THROWS_AS((void)generate(GenSpec{2, 4, Profile::negative_mixed_only, -9, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)generate(GenSpec{2, 4, Profile::with_nonnegative_agent, -3, -1, 0}),
                    std::invalid_argument);
    // a lone agent with one +1 and one -1 always has guarantee 0
    CHECK_THROWS_AS((void)generate(GenSpec{1, 2, Profile::negative_mixed_only, -1, 1, 0}), generation_error);
  }

  TEST_CASE("profile names") {
    CHECK(profile_from_string("negative-mixed-only") == Profile::negative_mixed_only);
    CHECK(profile_from_string("with_nonnegative_agent") == Profile::with_nonnegative_agent);
    CHECK(to_string(Profile::goods) == "goods");
    CHECK_THROWS_AS((void)profile_from_string("lots"), std::invalid_argument);
  }
}
