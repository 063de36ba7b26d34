#ifndef DOFAM_NODE_SET_HPP
#define DOFAM_NODE_SET_HPP

#include <bit>
#include <cstdint>
#include <iterator>
#include <vector>

namespace dofam {

using NodeId = std::uint32_t;

/// Upper bound on roster size; node sets are stored as bitmasks.
inline constexpr std::size_t kMaxNodes = 31;

/// A set of node indices backed by a 32-bit mask.
class NodeSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;
    using pointer = const NodeId*;
    using reference = NodeId;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr NodeId operator*() const { return static_cast<NodeId>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr NodeSet() = default;

  static constexpr NodeSet from_bits(std::uint32_t bits) { return NodeSet(bits); }
  static constexpr NodeSet single(NodeId i) { return NodeSet(std::uint32_t{1} << i); }
  /// {0, ..., n-1}
  static constexpr NodeSet range(std::size_t n) {
    return NodeSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }
  static NodeSet of(std::initializer_list<NodeId> ids) {
    NodeSet s;
    for (NodeId i : ids) s.insert(i);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(NodeId i) const { return (bits_ >> i) & 1U; }
  constexpr NodeId first() const { return static_cast<NodeId>(std::countr_zero(bits_)); }

  constexpr void insert(NodeId i) { bits_ |= std::uint32_t{1} << i; }
  constexpr void erase(NodeId i) { bits_ &= ~(std::uint32_t{1} << i); }
  constexpr NodeSet with(NodeId i) const { return NodeSet(bits_ | (std::uint32_t{1} << i)); }
  constexpr NodeSet without(NodeId i) const { return NodeSet(bits_ & ~(std::uint32_t{1} << i)); }

  constexpr bool subset_of(NodeSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(NodeSet o) const { return (bits_ & o.bits_) == 0; }

  constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
  constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
  /// Set difference.
  constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
  constexpr NodeSet& operator|=(NodeSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator&=(NodeSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator-=(NodeSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }
  constexpr bool operator==(const NodeSet&) const = default;
  constexpr auto operator<=>(const NodeSet&) const = default;

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<NodeId> to_vector() const { return {begin(), end()}; }

 private:
  constexpr explicit NodeSet(std::uint32_t bits) : bits_(bits) {}
  std::uint32_t bits_ = 0;
};

/// Calls f(sub) for every subset of s, including the empty set and s itself.
template <class F>
void for_each_subset(NodeSet s, F&& f) {
  const std::uint32_t mask = s.bits();
  std::uint32_t sub = 0;
  while (true) {
    f(NodeSet::from_bits(sub));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

/// Like for_each_subset but stops as soon as f returns true; returns whether it did.
template <class F>
bool any_subset(NodeSet s, F&& f) {
  const std::uint32_t mask = s.bits();
  std::uint32_t sub = 0;
  while (true) {
    if (f(NodeSet::from_bits(sub))) return true;
    if (sub == mask) return false;
    sub = (sub - mask) & mask;
  }
}

}  // namespace dofam

#endif
