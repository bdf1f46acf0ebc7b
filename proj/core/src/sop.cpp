#include "mms/sop.hpp"

#include <algorithm>
#include <numeric>

namespace mms {

auto to_sop(Instance const& inst) -> SopTransform {
  auto n = inst.num_agents();
  auto m = inst.num_items();
  std::vector<std::vector<ItemIndex>> perms(n);
  for (AgentIndex i = 0; i < n; ++i) {
    auto row = inst.row(i);
    auto& p = perms[i];
    p.resize(m);
    std::iota(p.begin(), p.end(), ItemIndex{0});
    std::stable_sort(p.begin(), p.end(), [&](ItemIndex a, ItemIndex b) { return row[a] > row[b]; });
  }
  return sop_from_perms(inst, std::move(perms));
}

auto sop_from_perms(Instance const& original, std::vector<std::vector<ItemIndex>> perms) -> SopTransform {
  auto n = original.num_agents();
  auto m = original.num_items();
  if (perms.size() != n) throw std::invalid_argument("one permutation per agent required");
  Instance sop(n, m);
  for (AgentIndex i = 0; i < n; ++i) {
    auto const& p = perms[i];
    std::vector<char> seen(m, 0);
    if (p.size() != m) throw std::invalid_argument("permutation length mismatch");
    for (ItemIndex j = 0; j < m; ++j) {
      if (p[j] >= m || seen[p[j]]) throw std::invalid_argument("not a permutation of the items");
      seen[p[j]] = 1;
      sop.set_utility(i, j, original.utility(i, p[j]));
    }
  }
  return {std::move(sop), std::move(perms)};
}

auto has_sop(Instance const& inst) -> bool {
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    auto row = inst.row(i);
    if (!std::is_sorted(row.begin(), row.end(), std::greater<>{})) return false;
  }
  return true;
}

auto lift_allocation(SopTransform const& t, Allocation const& sop_alloc) -> Allocation {
  auto const& sop = t.sop_instance;
  auto n = sop.num_agents();
  auto m = sop.num_items();
  validate_allocation(sop_alloc, n, m);
  if (t.perms.size() != n) throw std::invalid_argument("transform does not match allocation");

  std::vector<AgentIndex> holder(m);
  for (AgentIndex a = 0; a < n; ++a) {
    for (auto item : sop_alloc[a]) holder[item] = a;
  }
  // Each agent scans its own ranking; a cursor skips items already taken.
  std::vector<char> taken(m, 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::vector<ItemIndex>> lifted(n);
  for (ItemIndex j = 0; j < m; ++j) {
    auto a = holder[j];
    auto const& rank = t.perms[a];
    while (taken[rank[cursor[a]]]) ++cursor[a];
    auto pick = rank[cursor[a]];
    taken[pick] = 1;
    lifted[a].push_back(pick);
  }
  Allocation out;
  out.reserve(n);
  for (auto& b : lifted) out.emplace_back(std::move(b));
  return out;
}

auto map_partition_to_sop(SopTransform const& t, AgentIndex agent, Allocation const& original_partition)
    -> Allocation {
  auto const& p = t.perms.at(agent);
  std::vector<ItemIndex> position(p.size());
  for (ItemIndex pos = 0; pos < p.size(); ++pos) position[p[pos]] = pos;
  Allocation out;
  out.reserve(original_partition.size());
  for (auto const& b : original_partition) {
    std::vector<ItemIndex> items;
    for (auto item : b) items.push_back(position.at(item));
    out.emplace_back(std::move(items));
  }
  return out;
}

}  // namespace mms
