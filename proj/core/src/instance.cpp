#include "mms/instance.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace mms {

Instance::Instance(std::size_t num_agents, std::size_t num_items)
    : n_(num_agents), m_(num_items), u_(num_agents * num_items) {
  if (num_agents == 0) throw std::invalid_argument("instance needs at least one agent");
}

Instance::Instance(std::size_t num_agents, std::size_t num_items, std::vector<Rational> utilities)
    : n_(num_agents), m_(num_items), u_(std::move(utilities)) {
  if (num_agents == 0) throw std::invalid_argument("instance needs at least one agent");
  if (u_.size() != n_ * m_) {
    throw std::invalid_argument("utility matrix has " + std::to_string(u_.size()) + " entries, expected " +
                                std::to_string(n_) + "x" + std::to_string(m_));
  }
}

Instance::Instance(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<std::vector<Rational>> copy;
  for (auto const& r : rows) copy.emplace_back(r);
  *this = from_rows(copy);
}

auto Instance::from_rows(std::vector<std::vector<Rational>> const& rows) -> Instance {
  if (rows.empty()) throw std::invalid_argument("instance needs at least one agent");
  auto m = rows.front().size();
  std::vector<Rational> flat;
  flat.reserve(rows.size() * m);
  for (auto const& r : rows) {
    if (r.size() != m) throw std::invalid_argument("ragged utility matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return {rows.size(), m, std::move(flat)};
}

void Instance::check_agent(AgentIndex agent) const {
  if (agent >= n_) {
    throw std::out_of_range("agent " + std::to_string(agent) + " out of range (n = " + std::to_string(n_) + ")");
  }
}

auto Instance::utility(AgentIndex agent, ItemIndex item) const -> Rational const& {
  check_agent(agent);
  if (item >= m_) {
    throw std::out_of_range("item " + std::to_string(item) + " out of range (m = " + std::to_string(m_) + ")");
  }
  return u_[agent * m_ + item];
}

auto Instance::row(AgentIndex agent) const -> std::span<Rational const> {
  check_agent(agent);
  return {u_.data() + agent * m_, m_};
}

void Instance::set_utility(AgentIndex agent, ItemIndex item, Rational value) {
  check_agent(agent);
  if (item >= m_) throw std::out_of_range("item " + std::to_string(item) + " out of range");
  u_[agent * m_ + item] = value;
}

void Instance::set_row(AgentIndex agent, std::span<Rational const> values) {
  check_agent(agent);
  if (values.size() != m_) throw std::invalid_argument("row length mismatch");
  std::copy(values.begin(), values.end(), u_.begin() + static_cast<std::ptrdiff_t>(agent * m_));
}

Bundle::Bundle(std::initializer_list<ItemIndex> items) : Bundle(std::vector<ItemIndex>(items)) {}

Bundle::Bundle(std::vector<ItemIndex> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw std::invalid_argument("bundle contains a duplicated item");
  }
}

auto Bundle::contains(ItemIndex item) const -> bool {
  return std::binary_search(items_.begin(), items_.end(), item);
}

void Bundle::insert(ItemIndex item) {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it != items_.end() && *it == item) return;
  items_.insert(it, item);
}

void Bundle::erase(ItemIndex item) {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it != items_.end() && *it == item) items_.erase(it);
}

auto intersection_size(Bundle const& a, Bundle const& b) -> std::size_t {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

auto bundle_union(Bundle const& a, Bundle const& b) -> Bundle {
  std::vector<ItemIndex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Bundle(std::move(out));
}

void validate_allocation(Allocation const& alloc, std::size_t num_bundles, std::size_t num_items) {
  if (alloc.size() != num_bundles) {
    throw std::invalid_argument("allocation has " + std::to_string(alloc.size()) + " bundles, expected " +
                                std::to_string(num_bundles));
  }
  std::vector<int> seen(num_items, 0);
  std::vector<ItemIndex> out_of_range;
  for (auto const& b : alloc) {
    for (auto item : b) {
      if (item >= num_items) {
        out_of_range.push_back(item);
      } else {
        ++seen[item];
      }
    }
  }
  std::ostringstream msg;
  bool bad = false;
  if (!out_of_range.empty()) {
    bad = true;
    msg << "items out of range:";
    for (auto i : out_of_range) msg << ' ' << i;
    msg << "; ";
  }
  std::vector<ItemIndex> dup;
  std::vector<ItemIndex> missing;
  for (std::size_t j = 0; j < num_items; ++j) {
    if (seen[j] > 1) dup.push_back(j);
    if (seen[j] == 0) missing.push_back(j);
  }
  if (!dup.empty()) {
    bad = true;
    msg << "duplicated items:";
    for (auto i : dup) msg << ' ' << i;
    msg << "; ";
  }
  if (!missing.empty()) {
    bad = true;
    msg << "missing items:";
    for (auto i : missing) msg << ' ' << i;
    msg << "; ";
  }
  if (bad) throw std::invalid_argument("invalid allocation: " + msg.str());
}

auto is_partition(Allocation const& alloc, std::size_t num_items) -> bool {
  try {
    validate_allocation(alloc, alloc.size(), num_items);
    return true;
  } catch (std::invalid_argument const&) {
    return false;
  }
}

auto operator<<(std::ostream& os, Bundle const& b) -> std::ostream& {
  os << '{';
  bool first = true;
  for (auto i : b) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  return os << '}';
}

auto operator<<(std::ostream& os, Allocation const& a) -> std::ostream& {
  os << '(';
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k > 0) os << ", ";
    os << a[k];
  }
  return os << ')';
}

auto to_string(Allocation const& a) -> std::string {
  std::ostringstream os;
  os << a;
  return os.str();
}

auto to_string(ItemSign s) -> std::string {
  switch (s) {
    case ItemSign::goods: return "goods";
    case ItemSign::chores: return "chores";
    case ItemSign::mixed: return "mixed";
  }
  return "?";
}

auto to_string(MmsSign s) -> std::string {
  switch (s) {
    case MmsSign::positive: return "positive";
    case MmsSign::zero: return "zero";
    case MmsSign::negative: return "negative";
  }
  return "?";
}

auto bundle_utility(Instance const& inst, AgentIndex agent, Bundle const& b) -> Rational {
  auto r = inst.row(agent);
  Rational sum;
  for (auto item : b) {
    if (item >= r.size()) {
      throw std::out_of_range("item " + std::to_string(item) + " out of range (m = " + std::to_string(r.size()) + ")");
    }
    sum += r[item];
  }
  return sum;
}

auto item_sign(Instance const& inst, AgentIndex agent) -> ItemSign {
  bool any_pos = false;
  bool any_neg = false;
  for (auto const& v : inst.row(agent)) {
    any_pos |= v.sign() > 0;
    any_neg |= v.sign() < 0;
  }
  if (any_neg && any_pos) return ItemSign::mixed;
  return any_neg ? ItemSign::chores : ItemSign::goods;
}

auto classify_agent(Instance const& inst, AgentIndex agent, Rational const& mms) -> AgentClass {
  AgentClass c;
  c.item_sign = item_sign(inst, agent);
  c.mms_sign = mms.sign() > 0 ? MmsSign::positive : (mms.sign() < 0 ? MmsSign::negative : MmsSign::zero);
  return c;
}

auto pad_with_dummies(Instance const& inst, std::size_t target_items) -> Instance {
  auto m = inst.num_items();
  if (target_items < m) {
    throw std::invalid_argument("cannot pad to " + std::to_string(target_items) + " items: instance already has " +
                                std::to_string(m));
  }
  Instance out(inst.num_agents(), target_items);
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    auto r = inst.row(i);
    for (ItemIndex j = 0; j < m; ++j) out.set_utility(i, j, r[j]);
  }
  return out;
}

auto remove_agents_and_items(Instance const& inst, std::vector<AgentIndex> const& agents,
                             std::vector<ItemIndex> const& items) -> Instance {
  std::vector<bool> drop_agent(inst.num_agents(), false);
  std::vector<bool> drop_item(inst.num_items(), false);
  for (auto a : agents) drop_agent.at(a) = true;
  for (auto j : items) drop_item.at(j) = true;
  std::vector<std::vector<Rational>> rows;
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    if (drop_agent[i]) continue;
    auto r = inst.row(i);
    std::vector<Rational> kept;
    for (ItemIndex j = 0; j < inst.num_items(); ++j) {
      if (!drop_item[j]) kept.push_back(r[j]);
    }
    rows.push_back(std::move(kept));
  }
  if (rows.empty()) throw std::invalid_argument("removal would leave no agents");
  return Instance::from_rows(rows);
}

}  // namespace mms
