#pragma once

#include "mms/instance.hpp"
#include "mms/oracle.hpp"
#include "mms/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace mms::testing {

inline auto ints(std::vector<std::vector<std::int64_t>> const& rows) -> Instance {
  std::vector<std::vector<Rational>> r;
  for (auto const& row : rows) {
    r.emplace_back(row.begin(), row.end());
  }
  return Instance::from_rows(r);
}

inline auto row_of(std::vector<std::int64_t> const& v) -> std::vector<Rational> { return {v.begin(), v.end()}; }

// Plain enumeration of all k^m labelings. Independent of the library's search.
inline auto brute_value(std::vector<Rational> const& row, std::size_t k) -> Rational {
  auto const m = row.size();
  if (m == 0) {
    return Rational{0};
  }
  std::vector<std::size_t> label(m, 0);
  bool first = true;
  Rational best;
  while (true) {
    std::vector<Rational> sums(k);
    for (std::size_t j = 0; j < m; ++j) {
      sums[label[j]] += row[j];
    }
    auto lo = *std::min_element(sums.begin(), sums.end());
    if (first || lo > best) {
      best = lo;
      first = false;
    }
    std::size_t pos = 0;
    while (pos < m && ++label[pos] == k) {
      label[pos++] = 0;
    }
    if (pos == m) {
      break;
    }
  }
  return best;
}

inline auto brute_value(Instance const& inst, AgentIndex agent, std::size_t k) -> Rational {
  auto r = inst.row(agent);
  return brute_value(std::vector<Rational>(r.begin(), r.end()), k);
}

// Every optimal partition as a sorted multiset of bundles (labels forgotten).
inline auto brute_optima(std::vector<Rational> const& row, std::size_t k) -> std::set<std::vector<Bundle>> {
  auto const m = row.size();
  auto const value = brute_value(row, k);
  std::set<std::vector<Bundle>> out;
  std::vector<std::size_t> label(m, 0);
  while (true) {
    std::vector<Rational> sums(k);
    std::vector<std::vector<ItemIndex>> parts(k);
    for (std::size_t j = 0; j < m; ++j) {
      sums[label[j]] += row[j];
      parts[label[j]].push_back(j);
    }
    if (*std::min_element(sums.begin(), sums.end()) == value) {
      std::vector<Bundle> p;
      for (auto& part : parts) {
        p.emplace_back(part);
      }
      std::sort(p.begin(), p.end());
      out.insert(p);
    }
    std::size_t pos = 0;
    while (pos < m && ++label[pos] == k) {
      label[pos++] = 0;
    }
    if (pos == m) {
      break;
    }
  }
  return out;
}

inline auto brute_guarantees(Instance const& inst) -> std::vector<Rational> {
  std::vector<Rational> g;
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    g.push_back(brute_value(inst, i, inst.num_agents()));
  }
  return g;
}

inline auto random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, std::int64_t lo, std::int64_t hi)
    -> Instance {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  Instance inst(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      inst.set_utility(i, j, Rational{d(rng)});
    }
  }
  return inst;
}

inline auto random_allocation(std::mt19937_64& rng, std::size_t n, std::size_t m) -> Allocation {
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  Allocation a(n);
  for (std::size_t j = 0; j < m; ++j) {
    a[d(rng)].insert(j);
  }
  return a;
}

inline auto satisfies_all(Instance const& inst, Allocation const& alloc, std::vector<Rational> const& g) -> bool {
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    if (bundle_utility(inst, i, alloc[i]) < g[i]) {
      return false;
    }
  }
  return true;
}

struct Engineered3x9 {
  Instance inst;
  std::array<Allocation, 3> witnesses;
};

// SOP 3x9 instance in which every agent has an optimal partition made of
// three 3-bundles. Rows are drawn around a common per-row scale so that
// 3-3-3 splits are usually optimal, then checked with the oracle.
inline auto engineered_3x9(std::mt19937_64& rng) -> std::optional<Engineered3x9> {
  std::uniform_int_distribution<int> kind(0, 3);
  Instance inst(3, 9);
  for (AgentIndex i = 0; i < 3; ++i) {
    std::vector<std::int64_t> row(9);
    std::uniform_int_distribution<std::int64_t> goods(4, 9);
    std::uniform_int_distribution<std::int64_t> chores(-9, -4);
    std::uniform_int_distribution<std::int64_t> mixed(-9, 9);
    auto k = kind(rng);
    for (auto& v : row) {
      v = k == 0 ? goods(rng) : k == 1 ? chores(rng) : k == 2 ? -5 + goods(rng) / 3 : mixed(rng);
    }
    std::sort(row.begin(), row.end(), std::greater<>());
    for (ItemIndex j = 0; j < 9; ++j) {
      inst.set_utility(i, j, Rational{row[j]});
    }
  }
  Engineered3x9 out{inst, {}};
  for (AgentIndex i = 0; i < 3; ++i) {
    auto value = mms_guarantee(inst, i, 3).guarantee;
    std::vector<Allocation> triples;
    for_each_mms_partition(inst.row(i), 3, value, [&](Allocation const& p) {
      if (std::all_of(p.begin(), p.end(), [](Bundle const& b) { return b.size() == 3; })) triples.push_back(p);
      return true;
    });
    if (triples.empty()) {
      return std::nullopt;
    }
    std::uniform_int_distribution<std::size_t> pick(0, triples.size() - 1);
    out.witnesses[i] = triples[pick(rng)];
  }
  return out;
}

// Witnesses that meet pairwise in exactly one item: rows, columns and
// (col - row) classes of a 3x3 grid. The fourth class (row + col) fixes a
// value level per item, so every witness bundle holds one item per level and
// reaches total/3, which makes each witness optimal.
inline auto orthogonal_3x9(std::mt19937_64& rng) -> Engineered3x9 {
  std::uniform_int_distribution<std::int64_t> value(-9, 9);
  Instance inst(3, 9);
  for (AgentIndex i = 0; i < 3; ++i) {
    std::array<std::int64_t, 3> level{value(rng), value(rng), value(rng)};
    std::sort(level.begin(), level.end(), std::greater<>());
    for (ItemIndex j = 0; j < 9; ++j) inst.set_utility(i, j, Rational{level[j / 3]});
  }
  std::array<std::array<ItemIndex, 3>, 3> cell{};
  for (std::size_t lvl = 0; lvl < 3; ++lvl) {
    std::array<ItemIndex, 3> items{3 * lvl, 3 * lvl + 1, 3 * lvl + 2};
    std::shuffle(items.begin(), items.end(), rng);
    for (std::size_t r = 0; r < 3; ++r) cell[r][(lvl + 3 - r) % 3] = items[r];
  }
  Engineered3x9 out{inst, {}};
  for (std::size_t b = 0; b < 3; ++b) {
    Bundle row;
    Bundle col;
    Bundle diag;
    for (std::size_t c = 0; c < 3; ++c) {
      row.insert(cell[b][c]);
      col.insert(cell[c][b]);
      diag.insert(cell[c][(b + c) % 3]);
    }
    out.witnesses[0].push_back(row);
    out.witnesses[1].push_back(col);
    out.witnesses[2].push_back(diag);
  }
  return out;
}

}  // namespace mms::testing
