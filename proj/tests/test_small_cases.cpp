#include "mms/oracle.hpp"
#include "mms/small_cases.hpp"
#include "mms/sop.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace mms;
using mms::testing::ints;

namespace {

auto identical(std::size_t n, std::vector<std::int64_t> const& row) -> Instance {
  return ints(std::vector<std::vector<std::int64_t>>(n, row));
}

auto utilities(Instance const& inst, Allocation const& a) -> std::vector<Rational> {
  std::vector<Rational> u;
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    u.push_back(bundle_utility(inst, i, a[i]));
  }
  return u;
}

}  // namespace

TEST_SUITE("small_cases") {
  TEST_CASE("divide and choose") {
    auto same = identical(2, {3, 1, 1, 1});
    CHECK(mms_guarantee(same, 0).witness == Allocation{Bundle{0}, Bundle{1, 2, 3}});
    CHECK(utilities(same, solve_two_agents(same)) == std::vector<Rational>{Rational(3), Rational(3)});

    auto apart = ints({{1, 0}, {0, 1}});
    CHECK(all_guarantees(apart) == std::vector<Rational>{Rational(0), Rational(0)});
    // Agent 0's witness is ({o1, o2}, {}); agent 1 takes the pair, agent 0 keeps
    // the empty bundle, which is still worth its guarantee of 0.
    CHECK(mms_guarantee(apart, 0).witness == Allocation{Bundle{0, 1}, Bundle{}});
    CHECK(utilities(apart, solve_two_agents(apart)) == std::vector<Rational>{Rational(0), Rational(1)});

    auto chores = identical(2, {-1, -1});
    CHECK(utilities(chores, solve_two_agents(chores)) == std::vector<Rational>{Rational(-1), Rational(-1)});

    CHECK_THROWS_AS((void)solve_two_agents(identical(3, {1})), std::invalid_argument);
  }

  TEST_CASE("divide and choose on random instances") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 300; ++t) {
      auto inst = mms::testing::random_instance(rng, 2, t % 8, -9, 9);
      auto a = solve_two_agents(inst);
      REQUIRE(is_partition(a, inst.num_items()));
      CHECK(mms::testing::satisfies_all(inst, a, mms::testing::brute_guarantees(inst)));
    }
  }

  TEST_CASE("disjointness graph") {
    Allocation rows{Bundle{0, 1, 2}, Bundle{3, 4, 5}, Bundle{6, 7, 8}};
    Allocation cols{Bundle{0, 3, 6}, Bundle{1, 4, 7}, Bundle{2, 5, 8}};
    CHECK(build_disjointness_graph(rows, rows).edges.size() == 6);
    CHECK(build_disjointness_graph(rows, cols).edges.empty());
    CHECK_THROWS_AS((void)build_disjointness_graph(rows, Allocation{Bundle{0}}), std::invalid_argument);

    std::mt19937_64 rng(62);
    for (int t = 0; t < 200; ++t) {
      auto a = mms::testing::random_allocation(rng, 3, 8);
      auto b = mms::testing::random_allocation(rng, 3, 8);
      auto g = build_disjointness_graph(a, b);
      for (std::size_t x = 0; x < 3; ++x) {
        std::size_t degree = 0;
        for (std::size_t y = 0; y < 3; ++y) {
          bool edge = std::find(g.edges.begin(), g.edges.end(), std::pair{x, y}) != g.edges.end();
          CHECK(edge == (intersection_size(a[x], b[y]) == 0));
          degree += edge;
        }
        if (a[x].size() <= 1) CHECK(degree >= 2);
      }
    }
  }

  TEST_CASE("assign_by_satisfaction") {
    auto one = ints({{2, -1}});
    auto w = mms_guarantee(one, 0).witness;
    CHECK(assign_by_satisfaction(one, w) == std::optional<Allocation>(w));
    auto two = ints({{1, 0}, {0, 1}});
    CHECK(assign_by_satisfaction(two, Allocation{Bundle{1}, Bundle{0}}) == Allocation{Bundle{0}, Bundle{1}});
    auto picky = ints({{5, 5, 5}, {5, 5, 5}});
    CHECK_FALSE(assign_by_satisfaction(picky, Allocation{Bundle{0, 1, 2}, Bundle{}}).has_value());
  }

  TEST_CASE("three agents: singletons") {
    auto inst = identical(3, {4, 3, 3});
    ThreeAgentReport report;
    auto a = solve_three_agents(inst, {}, &report);
    for (auto const& b : a) CHECK(b.size() == 1);
    CHECK(mms::testing::satisfies_all(inst, a, all_guarantees(inst)));
    CHECK_FALSE(report.path.empty());
  }

  TEST_CASE("three agents: symmetric chores go through the 3x9 construction") {
    auto inst = identical(3, {-1, -1, -1, -1, -1, -1, -1, -1});
    ThreeAgentReport report;
    auto a = solve_three_agents(inst, {}, &report);
    CHECK(report.path.find("three 3-bundles") == 0);
    CHECK(mms::testing::satisfies_all(inst, a, all_guarantees(inst)));
  }

  TEST_CASE("three agents: preconditions") {
    CHECK_THROWS_AS((void)solve_three_agents(identical(2, {1, 1})), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_three_agents(identical(3, {1, 1, 1, 1, 1, 1, 1, 1, 1})), std::invalid_argument);
  }

  TEST_CASE("three agents on random instances") {
    std::mt19937_64 rng(63);
    int construct = 0;
    for (int t = 0; t < 300; ++t) {
      auto inst = mms::testing::random_instance(rng, 3, 2 + t % 7, -9, 9);
      ThreeAgentReport report;
      auto a = solve_three_agents(inst, {}, &report);
      REQUIRE(is_partition(a, inst.num_items()));
      CHECK(mms::testing::satisfies_all(inst, a, all_guarantees(inst)));
      construct += report.path.find("three 3-bundles") == 0;
    }
    MESSAGE("3x9 construction used " << construct << " times");
  }

  TEST_CASE("three agents on random chores") {
    std::mt19937_64 rng(64);
    for (int t = 0; t < 150; ++t) {
      auto inst = mms::testing::random_instance(rng, 3, 8, -3, 0);
      CHECK(mms::testing::satisfies_all(inst, solve_three_agents(inst), all_guarantees(inst)));
    }
  }

  TEST_CASE("single edge construction") {
    std::mt19937_64 rng(65);
    int tried = 0;
    for (int t = 0; t < 300; ++t) {
      auto inst = mms::testing::random_instance(rng, 3, 8, -9, 9);
      auto g = all_guarantees(inst);
      std::array<Allocation, 3> w;
      for (AgentIndex a = 0; a < 3; ++a) w[a] = mms_guarantee(inst, a).witness;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) continue;
          for (auto [x, y] : build_disjointness_graph(w[i], w[j]).edges) {
            if (!single_edge_condition(inst, i, w[i], w[j], x, y)) continue;
            ++tried;
            // agent i gets the left bundle, j the right one, the third agent picks first
            auto cand = single_edge_candidate(w[i], w[j], x, y, 8);
            auto k = 3 - i - j;
            Instance relabelled(3, 8);
            relabelled.set_row(0, inst.row(i));
            relabelled.set_row(1, inst.row(j));
            relabelled.set_row(2, inst.row(k));
            CHECK(assign_by_satisfaction(relabelled, cand, std::vector<Rational>{g[i], g[j], g[k]}).has_value());
          }
        }
      }
    }
    CHECK(tried > 100);
  }

  TEST_CASE("3x9: identical witnesses") {
    auto inst = identical(3, {5, 5, 4, 4, 4, 3, 3, 2, 2});
    std::array<Allocation, 3> w;
    auto p = find_mms_partition(inst, 0, PartitionPredicate::three_three_bundles);
    REQUIRE(p.has_value());
    w.fill(*p);
    ThreeAgentReport report;
    auto a = construct_3x9(inst, w, {}, &report);
    CHECK(report.path.find("identical") != std::string::npos);
    CHECK(mms::testing::satisfies_all(inst, a, all_guarantees(inst)));
  }

  TEST_CASE("3x9: two shared items") {
    auto inst = identical(3, {-1, -1, -1, -1, -1, -1, -1, -1, -1});
    std::array<Allocation, 3> w{
        Allocation{Bundle{0, 1, 2}, Bundle{3, 4, 5}, Bundle{6, 7, 8}},
        Allocation{Bundle{0, 1, 3}, Bundle{2, 4, 6}, Bundle{5, 7, 8}},
        Allocation{Bundle{0, 4, 8}, Bundle{1, 5, 6}, Bundle{2, 3, 7}},
    };
    ThreeAgentReport report;
    auto a = construct_3x9(inst, w, {}, &report);
    CHECK(report.path.find("two shared items") != std::string::npos);
    CHECK(mms::testing::satisfies_all(inst, a, all_guarantees(inst)));
  }

  TEST_CASE("3x9: single-item intersections") {
    auto inst = identical(3, {-1, -1, -1, -1, -1, -1, -1, -1, -1});
    std::array<Allocation, 3> w{
        Allocation{Bundle{0, 1, 2}, Bundle{3, 4, 5}, Bundle{6, 7, 8}},
        Allocation{Bundle{0, 3, 6}, Bundle{1, 4, 7}, Bundle{2, 5, 8}},
        Allocation{Bundle{0, 4, 8}, Bundle{1, 5, 6}, Bundle{2, 3, 7}},
    };
    ThreeAgentReport report;
    auto a = construct_3x9(inst, w, {}, &report);
    CHECK(report.path.find("single-item") != std::string::npos);
    CHECK(mms::testing::satisfies_all(inst, a, all_guarantees(inst)));
  }

  TEST_CASE("3x9: single-item intersections on random levels") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 100; ++t) {
      auto e = mms::testing::orthogonal_3x9(rng);
      ThreeAgentReport report;
      auto a = construct_3x9(e.inst, e.witnesses, {}, &report);
      CHECK(report.path.find("single-item") != std::string::npos);
      CHECK(mms::testing::satisfies_all(e.inst, a, all_guarantees(e.inst)));
    }
  }

  TEST_CASE("3x9: preconditions") {
    auto inst = identical(3, {-1, -1, -1, -1, -1, -1, -1, -1, -1});
    std::array<Allocation, 3> bad;
    bad.fill(Allocation{Bundle{0, 1}, Bundle{2, 3, 4, 5}, Bundle{6, 7, 8}});
    CHECK_THROWS_AS((void)construct_3x9(inst, bad), std::invalid_argument);
    auto unsorted = identical(3, {-1, 1, -1, -1, -1, -1, -1, -1, -1});
    std::array<Allocation, 3> w;
    w.fill(Allocation{Bundle{0, 1, 2}, Bundle{3, 4, 5}, Bundle{6, 7, 8}});
    CHECK_THROWS_AS((void)construct_3x9(unsorted, w), std::invalid_argument);
  }

  TEST_CASE("3x9 on engineered instances") {
    std::mt19937_64 rng(66);
    int built = 0;
    for (int t = 0; t < 2000 && built < 60; ++t) {
      auto e = mms::testing::engineered_3x9(rng);
      if (!e) continue;
      ++built;
      auto a = construct_3x9(e->inst, e->witnesses);
      CHECK(mms::testing::satisfies_all(e->inst, a, all_guarantees(e->inst)));
    }
    CHECK(built == 60);
  }
}
