#pragma once

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace dynpr {

/// Ordered set of 32-bit ids with O(log n) insert, erase and select-by-rank.
///
/// Backed by the libstdc++ policy-based red-black tree with order-statistic
/// node updates. Every tree operation bumps a per-thread counter so tests
/// can bound the work done by higher-level routines.
class RankedIdSet {
 public:
  using Id = std::uint32_t;

  RankedIdSet() = default;
  RankedIdSet(const RankedIdSet&) = default;
  RankedIdSet& operator=(const RankedIdSet&) = default;
  RankedIdSet(RankedIdSet&& other) noexcept { tree_.swap(other.tree_); }
  RankedIdSet& operator=(RankedIdSet&& other) noexcept {
    tree_.swap(other.tree_);
    return *this;
  }

  std::size_t size() const { return tree_.size(); }
  bool empty() const { return tree_.empty(); }

  bool insert(Id id) {
    ++operations_;
    return tree_.insert(id).second;
  }

  bool erase(Id id) {
    ++operations_;
    return tree_.erase(id) > 0;
  }

  bool contains(Id id) const { return tree_.find(id) != tree_.end(); }

  /// 1-based rank under ascending id order.
  Id select(std::size_t rank) const {
    if (rank == 0 || rank > tree_.size()) {
      throw std::out_of_range("rank outside [1, size]");
    }
    ++operations_;
    return *tree_.find_by_order(rank - 1);
  }

  auto begin() const { return tree_.begin(); }
  auto end() const { return tree_.end(); }

  static std::uint64_t operation_count() { return operations_; }

 private:
  using Tree = __gnu_pbds::tree<Id, __gnu_pbds::null_type, std::less<Id>,
                                __gnu_pbds::rb_tree_tag,
                                __gnu_pbds::tree_order_statistics_node_update>;
  Tree tree_;
  static inline thread_local std::uint64_t operations_ = 0;
};

}  // namespace dynpr
