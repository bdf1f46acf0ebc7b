#include "mms/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mms {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kPosInf = std::numeric_limits<std::int64_t>::max();

/// Row rescaled by the lcm of its denominators so the search runs on int64.
struct ScaledRow {
  std::vector<std::int64_t> values;
  std::int64_t scale = 1;

  explicit ScaledRow(std::span<Rational const> row) {
    for (auto const& v : row) {
      auto g = std::gcd(scale, v.den());
      std::int64_t out = 0;
      if (__builtin_mul_overflow(scale / g, v.den(), &out)) throw overflow_error("utility denominators too large");
      scale = out;
    }
    values.reserve(row.size());
    std::int64_t abs_total = 0;
    for (auto const& v : row) {
      std::int64_t scaled = 0;
      if (__builtin_mul_overflow(v.num(), scale / v.den(), &scaled)) throw overflow_error("utility too large");
      std::int64_t mag = scaled < 0 ? -scaled : scaled;
      if (__builtin_add_overflow(abs_total, mag, &abs_total)) throw overflow_error("utility sum too large");
      values.push_back(scaled);
    }
  }

  [[nodiscard]] auto unscale(std::int64_t v) const -> Rational { return {v, scale}; }

  /// Smallest integer s with s / scale >= r.
  [[nodiscard]] auto ceil_scaled(Rational const& r) const -> std::int64_t {
    __int128 n = static_cast<__int128>(r.num()) * scale;
    __int128 q = n / r.den();
    if (q * r.den() < n) ++q;
    if (q > kPosInf || q < kNegInf + 1) throw overflow_error("guarantee out of range");
    return static_cast<std::int64_t>(q);
  }
};

class NodeCounter {
 public:
  explicit NodeCounter(SearchBudget const& budget) : limit_(budget.max_nodes) {}
  void tick() {
    if (++nodes_ > limit_) {
      throw budget_exceeded("MMS search exceeded node budget of " + std::to_string(limit_));
    }
  }

 private:
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
};

/// Branch and bound for the max-min value. Items are placed largest magnitude
/// first; bundles with equal running sums are interchangeable and tried once.
class ValueSearch {
 public:
  ValueSearch(std::vector<std::int64_t> values, std::size_t k, SearchBudget const& budget)
      : vals_(std::move(values)), k_(k), sums_(k, 0), counter_(budget) {
    std::stable_sort(vals_.begin(), vals_.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
    pos_suffix_.assign(vals_.size() + 1, 0);
    for (std::size_t i = vals_.size(); i-- > 0;) pos_suffix_[i] = pos_suffix_[i + 1] + std::max<std::int64_t>(0, vals_[i]);
  }

  auto run() -> std::int64_t {
    dfs(0);
    return best_;
  }

 private:
  auto bound(std::size_t idx) const -> std::int64_t {
    auto pr = pos_suffix_[idx];
    std::int64_t b = opened_ < k_ ? pr : kPosInf;
    for (std::size_t i = 0; i < opened_; ++i) b = std::min(b, sums_[i] + pr);
    return b;
  }

  void dfs(std::size_t idx) {
    counter_.tick();
    auto b = bound(idx);
    if (b <= best_) return;
    if (idx == vals_.size()) {
      best_ = b;
      return;
    }
    auto v = vals_[idx];
    // Candidate bundles: distinct running sums only, most promising first.
    std::size_t order[64];
    std::size_t count = 0;
    for (std::size_t i = 0; i < opened_; ++i) {
      bool dup = false;
      for (std::size_t c = 0; c < count; ++c) {
        if (sums_[order[c]] == sums_[i]) {
          dup = true;
          break;
        }
      }
      if (!dup) order[count++] = i;
    }
    if (v >= 0) {
      std::sort(order, order + count, [&](auto a, auto c) { return sums_[a] < sums_[c]; });
    } else {
      std::sort(order, order + count, [&](auto a, auto c) { return sums_[a] > sums_[c]; });
    }
    // A fresh bundle is worth 0; for a positive item it is the most promising.
    bool fresh_first = v >= 0;
    auto try_fresh = [&] {
      if (opened_ < k_) {
        sums_[opened_++] = v;
        dfs(idx + 1);
        sums_[--opened_] = 0;
      }
    };
    if (fresh_first) try_fresh();
    for (std::size_t c = 0; c < count; ++c) {
      auto i = order[c];
      sums_[i] += v;
      dfs(idx + 1);
      sums_[i] -= v;
    }
    if (!fresh_first) try_fresh();
  }

  std::vector<std::int64_t> vals_;
  std::size_t k_;
  std::vector<std::int64_t> sums_;
  std::vector<std::int64_t> pos_suffix_;
  std::size_t opened_ = 0;
  std::int64_t best_ = kNegInf;
  NodeCounter counter_;
};

/// Enumerates partitions with min bundle value >= target in canonical
/// (restricted-growth, lexicographic) order over the original item indices.
class PartitionSearch {
 public:
  using Visit = std::function<bool(std::vector<std::size_t> const& labels, std::size_t opened)>;

  PartitionSearch(std::vector<std::int64_t> const& values, std::size_t k, std::int64_t target,
                  SearchBudget const& budget, std::size_t min_bundle_size)
      : vals_(values), k_(k), target_(target), min_size_(min_bundle_size), sums_(k, 0), sizes_(k, 0),
        labels_(values.size(), 0), counter_(budget) {
    pos_suffix_.assign(vals_.size() + 1, 0);
    for (std::size_t i = vals_.size(); i-- > 0;) pos_suffix_[i] = pos_suffix_[i + 1] + std::max<std::int64_t>(0, vals_[i]);
  }

  /// Returns the number of leaves passed to `visit`.
  auto run(Visit const& visit) -> std::size_t {
    visit_ = &visit;
    stopped_ = false;
    visited_ = 0;
    dfs(0);
    return visited_;
  }

 private:
  void dfs(std::size_t idx) {
    counter_.tick();
    auto pr = pos_suffix_[idx];
    if (opened_ < k_ && pr < target_) return;
    for (std::size_t i = 0; i < opened_; ++i) {
      if (sums_[i] + pr < target_) return;
    }
    auto remaining = vals_.size() - idx;
    if (min_size_ > 0) {
      std::size_t need = 0;
      for (std::size_t i = 0; i < k_; ++i) need += sizes_[i] < min_size_ ? min_size_ - sizes_[i] : 0;
      if (need > remaining) return;
    }
    if (idx == vals_.size()) {
      ++visited_;
      if (!(*visit_)(labels_, opened_)) stopped_ = true;
      return;
    }
    auto v = vals_[idx];
    for (std::size_t i = 0; i < opened_ && !stopped_; ++i) {
      sums_[i] += v;
      ++sizes_[i];
      labels_[idx] = i;
      dfs(idx + 1);
      sums_[i] -= v;
      --sizes_[i];
    }
    if (opened_ < k_ && !stopped_) {
      auto i = opened_++;
      sums_[i] = v;
      sizes_[i] = 1;
      labels_[idx] = i;
      dfs(idx + 1);
      sums_[i] = 0;
      sizes_[i] = 0;
      --opened_;
    }
  }

  std::vector<std::int64_t> const& vals_;
  std::size_t k_;
  std::int64_t target_;
  std::size_t min_size_;
  std::vector<std::int64_t> sums_;
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> labels_;
  std::vector<std::int64_t> pos_suffix_;
  std::size_t opened_ = 0;
  NodeCounter counter_;
  Visit const* visit_ = nullptr;
  bool stopped_ = false;
  std::size_t visited_ = 0;
};

auto labels_to_allocation(std::vector<std::size_t> const& labels, std::size_t k) -> Allocation {
  std::vector<std::vector<ItemIndex>> parts(k);
  for (std::size_t j = 0; j < labels.size(); ++j) parts[labels[j]].push_back(j);
  Allocation out;
  out.reserve(k);
  for (auto& p : parts) out.emplace_back(std::move(p));
  return out;
}

auto labels_to_sizes(std::vector<std::size_t> const& labels, std::size_t k) -> std::vector<std::size_t> {
  std::vector<std::size_t> sizes(k, 0);
  for (auto l : labels) ++sizes[l];
  return sizes;
}

auto check_bundle_count(std::size_t k) {
  if (k == 0) throw std::invalid_argument("number of bundles must be positive");
  if (k > 64) throw std::invalid_argument("at most 64 bundles supported");
}

auto value_of(ScaledRow const& scaled, std::size_t k, SearchBudget const& budget) -> std::int64_t {
  if (scaled.values.empty()) return 0;
  return ValueSearch(scaled.values, k, budget).run();
}

auto find_impl(std::span<Rational const> row, std::size_t k, Rational const& guarantee, SizePredicate const& pred,
               std::size_t min_size, SearchBudget const& budget) -> std::optional<Allocation> {
  ScaledRow scaled(row);
  std::optional<Allocation> found;
  PartitionSearch search(scaled.values, k, scaled.ceil_scaled(guarantee), budget, min_size);
  search.run([&](std::vector<std::size_t> const& labels, std::size_t) {
    auto sizes = labels_to_sizes(labels, k);
    if (pred && !pred(sizes)) return true;
    found = labels_to_allocation(labels, k);
    return false;
  });
  return found;
}

}  // namespace

auto to_string(PartitionPredicate p) -> std::string {
  switch (p) {
    case PartitionPredicate::any: return "ANY";
    case PartitionPredicate::has_singleton: return "HAS_SINGLETON";
    case PartitionPredicate::no_singleton_no_empty: return "NO_SINGLETON_NO_EMPTY";
    case PartitionPredicate::has_empty_or_singleton: return "HAS_EMPTY_OR_SINGLETON";
    case PartitionPredicate::n_minus_1_small: return "N_MINUS_1_SMALL";
    case PartitionPredicate::three_three_bundles: return "THREE_THREE_BUNDLES";
  }
  return "?";
}

auto satisfies(PartitionPredicate p, std::span<std::size_t const> sizes) -> bool {
  auto count = [&](auto f) { return static_cast<std::size_t>(std::count_if(sizes.begin(), sizes.end(), f)); };
  switch (p) {
    case PartitionPredicate::any: return true;
    case PartitionPredicate::has_singleton: return count([](auto s) { return s == 1; }) > 0;
    case PartitionPredicate::no_singleton_no_empty: return count([](auto s) { return s < 2; }) == 0;
    case PartitionPredicate::has_empty_or_singleton: return count([](auto s) { return s < 2; }) > 0;
    case PartitionPredicate::n_minus_1_small:
      return count([](auto s) { return s == 1 || s == 2; }) + 1 >= sizes.size();
    case PartitionPredicate::three_three_bundles: return count([](auto s) { return s == 3; }) >= 3;
  }
  return false;
}

auto bundle_sizes(Allocation const& alloc) -> std::vector<std::size_t> {
  std::vector<std::size_t> sizes;
  sizes.reserve(alloc.size());
  for (auto const& b : alloc) sizes.push_back(b.size());
  return sizes;
}

auto mms_value(std::span<Rational const> row, std::size_t k, SearchBudget const& budget) -> Rational {
  check_bundle_count(k);
  ScaledRow scaled(row);
  return scaled.unscale(value_of(scaled, k, budget));
}

auto mms_guarantee(Instance const& inst, AgentIndex agent, std::size_t k, SearchBudget const& budget)
    -> MmsCertificate {
  check_bundle_count(k);
  auto row = inst.row(agent);
  ScaledRow scaled(row);
  auto best = value_of(scaled, k, budget);
  MmsCertificate cert;
  cert.agent = agent;
  cert.guarantee = scaled.unscale(best);
  PartitionSearch search(scaled.values, k, best, budget, 0);
  search.run([&](std::vector<std::size_t> const& labels, std::size_t) {
    cert.witness = labels_to_allocation(labels, k);
    return false;
  });
  if (cert.witness.size() != k) throw invariant_error("witness search found no optimal partition");
  return cert;
}

auto mms_guarantee(Instance const& inst, AgentIndex agent, SearchBudget const& budget) -> MmsCertificate {
  return mms_guarantee(inst, agent, inst.num_agents(), budget);
}

auto all_guarantees(Instance const& inst, SearchBudget const& budget) -> std::vector<Rational> {
  std::vector<Rational> out;
  out.reserve(inst.num_agents());
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) out.push_back(mms_value(inst.row(i), inst.num_agents(), budget));
  return out;
}

auto find_mms_partition(Instance const& inst, AgentIndex agent, PartitionPredicate pred, SearchBudget const& budget)
    -> std::optional<Allocation> {
  auto k = inst.num_agents();
  auto g = mms_value(inst.row(agent), k, budget);
  std::size_t min_size = pred == PartitionPredicate::no_singleton_no_empty ? 2 : 0;
  return find_impl(
      inst.row(agent), k, g, [pred](std::span<std::size_t const> sizes) { return satisfies(pred, sizes); }, min_size,
      budget);
}

auto find_mms_partition(Instance const& inst, AgentIndex agent, SizePredicate const& pred, SearchBudget const& budget)
    -> std::optional<Allocation> {
  auto k = inst.num_agents();
  auto g = mms_value(inst.row(agent), k, budget);
  return find_impl(inst.row(agent), k, g, pred, 0, budget);
}

auto for_each_mms_partition(std::span<Rational const> row, std::size_t k, Rational const& guarantee,
                            std::function<bool(Allocation const&)> const& visit, SearchBudget const& budget)
    -> std::size_t {
  check_bundle_count(k);
  ScaledRow scaled(row);
  PartitionSearch search(scaled.values, k, scaled.ceil_scaled(guarantee), budget, 0);
  return search.run(
      [&](std::vector<std::size_t> const& labels, std::size_t) { return visit(labels_to_allocation(labels, k)); });
}

auto is_mms_for_agent(Instance const& inst, AgentIndex agent, Allocation const& alloc, Rational const& guarantee)
    -> bool {
  validate_allocation(alloc, inst.num_agents(), inst.num_items());
  return std::all_of(alloc.begin(), alloc.end(),
                     [&](Bundle const& b) { return bundle_utility(inst, agent, b) >= guarantee; });
}

auto is_mms_for_agent(Instance const& inst, AgentIndex agent, Allocation const& alloc, SearchBudget const& budget)
    -> bool {
  validate_allocation(alloc, inst.num_agents(), inst.num_items());
  return is_mms_for_agent(inst, agent, alloc, mms_value(inst.row(agent), inst.num_agents(), budget));
}

}  // namespace mms
