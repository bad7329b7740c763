#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>

namespace pursuit {

using Point = int;
inline constexpr int kMaxPoints = 64;

// Subset of the points of a poset with at most 64 elements.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr PointSet single(Point p) { return PointSet(std::uint64_t{1} << p); }
  static constexpr PointSet first_n(int n) {
    return PointSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(Point p) const { return (bits_ >> p) & 1u; }
  constexpr void insert(Point p) { bits_ |= std::uint64_t{1} << p; }
  constexpr void erase(Point p) { bits_ &= ~(std::uint64_t{1} << p); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool subset_of(PointSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(PointSet o) const { return (bits_ & o.bits_) != 0; }

  std::optional<Point> first() const {
    if (!bits_) return std::nullopt;
    return std::countr_zero(bits_);
  }

  constexpr PointSet operator|(PointSet o) const { return PointSet(bits_ | o.bits_); }
  constexpr PointSet operator&(PointSet o) const { return PointSet(bits_ & o.bits_); }
  constexpr PointSet operator-(PointSet o) const { return PointSet(bits_ & ~o.bits_); }
  constexpr PointSet& operator|=(PointSet o) { bits_ |= o.bits_; return *this; }
  constexpr PointSet& operator&=(PointSet o) { bits_ &= o.bits_; return *this; }
  constexpr PointSet& operator-=(PointSet o) { bits_ &= ~o.bits_; return *this; }
  constexpr bool operator==(const PointSet&) const = default;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Point;
    using difference_type = std::ptrdiff_t;
    using pointer = const Point*;
    using reference = Point;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t b) : b_(b) {}
    Point operator*() const { return std::countr_zero(b_); }
    iterator& operator++() { b_ &= b_ - 1; return *this; }
    iterator operator++(int) { iterator t = *this; ++*this; return t; }
    bool operator==(const iterator& o) const { return b_ == o.b_; }

   private:
    std::uint64_t b_ = 0;
  };
  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace pursuit
