#ifndef MMS_INSTANCE_HPP_
#define MMS_INSTANCE_HPP_

#include "mms/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mms {

using AgentIndex = std::size_t;
using ItemIndex = std::size_t;

/// Raised when a construction that is proven to succeed does not. Always an
/// implementation bug, never an input problem.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// n agents, m items, additive utilities u_i(o_j) stored row-major.
class Instance {
 public:
  Instance() = default;
  Instance(std::size_t num_agents, std::size_t num_items);
  Instance(std::size_t num_agents, std::size_t num_items, std::vector<Rational> utilities);
  /// Row-per-agent convenience; every row must have the same length.
  Instance(std::initializer_list<std::initializer_list<Rational>> rows);
  static auto from_rows(std::vector<std::vector<Rational>> const& rows) -> Instance;

  [[nodiscard]] auto num_agents() const noexcept -> std::size_t { return n_; }
  [[nodiscard]] auto num_items() const noexcept -> std::size_t { return m_; }

  [[nodiscard]] auto utility(AgentIndex agent, ItemIndex item) const -> Rational const&;
  [[nodiscard]] auto row(AgentIndex agent) const -> std::span<Rational const>;

  void set_utility(AgentIndex agent, ItemIndex item, Rational value);
  void set_row(AgentIndex agent, std::span<Rational const> values);

  friend auto operator==(Instance const&, Instance const&) -> bool = default;

 private:
  void check_agent(AgentIndex agent) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Rational> u_;
};

/// Sorted set of item indices. May be empty.
class Bundle {
 public:
  Bundle() = default;
  Bundle(std::initializer_list<ItemIndex> items);
  explicit Bundle(std::vector<ItemIndex> items);

  [[nodiscard]] auto items() const noexcept -> std::vector<ItemIndex> const& { return items_; }
  [[nodiscard]] auto size() const noexcept -> std::size_t { return items_.size(); }
  [[nodiscard]] auto empty() const noexcept -> bool { return items_.empty(); }
  [[nodiscard]] auto contains(ItemIndex item) const -> bool;
  [[nodiscard]] auto begin() const { return items_.begin(); }
  [[nodiscard]] auto end() const { return items_.end(); }

  void insert(ItemIndex item);
  void erase(ItemIndex item);

  friend auto operator==(Bundle const&, Bundle const&) -> bool = default;
  friend auto operator<=>(Bundle const&, Bundle const&) = default;

 private:
  std::vector<ItemIndex> items_;
};

[[nodiscard]] auto intersection_size(Bundle const& a, Bundle const& b) -> std::size_t;
[[nodiscard]] auto bundle_union(Bundle const& a, Bundle const& b) -> Bundle;

/// Ordered n-tuple of bundles; bundle k belongs to agent k.
using Allocation = std::vector<Bundle>;

/// Throws std::invalid_argument unless `alloc` has `num_bundles` pairwise
/// disjoint bundles covering exactly the items [0, num_items). The message
/// lists duplicated and missing items.
void validate_allocation(Allocation const& alloc, std::size_t num_bundles, std::size_t num_items);
[[nodiscard]] auto is_partition(Allocation const& alloc, std::size_t num_items) -> bool;

auto operator<<(std::ostream& os, Bundle const& b) -> std::ostream&;
auto operator<<(std::ostream& os, Allocation const& a) -> std::ostream&;
[[nodiscard]] auto to_string(Allocation const& a) -> std::string;

enum class ItemSign { goods, chores, mixed };
enum class MmsSign { positive, zero, negative };

struct AgentClass {
  ItemSign item_sign = ItemSign::goods;
  MmsSign mms_sign = MmsSign::zero;

  friend auto operator==(AgentClass const&, AgentClass const&) -> bool = default;
};

[[nodiscard]] auto to_string(ItemSign s) -> std::string;
[[nodiscard]] auto to_string(MmsSign s) -> std::string;

/// u_agent(b). Empty bundle is 0. Throws std::out_of_range on bad indices.
[[nodiscard]] auto bundle_utility(Instance const& inst, AgentIndex agent, Bundle const& b) -> Rational;

/// An all-zero row is both a goods and a chores agent; it is reported as goods.
[[nodiscard]] auto item_sign(Instance const& inst, AgentIndex agent) -> ItemSign;
[[nodiscard]] auto classify_agent(Instance const& inst, AgentIndex agent, Rational const& mms) -> AgentClass;

/// Appends zero columns until the instance has `target_items` items.
[[nodiscard]] auto pad_with_dummies(Instance const& inst, std::size_t target_items) -> Instance;

/// Drops the rows in `agents` and columns in `items` (both sorted), compacting
/// the remaining indices in order.
[[nodiscard]] auto remove_agents_and_items(Instance const& inst, std::vector<AgentIndex> const& agents,
                                           std::vector<ItemIndex> const& items) -> Instance;

}  // namespace mms

#endif  // MMS_INSTANCE_HPP_
