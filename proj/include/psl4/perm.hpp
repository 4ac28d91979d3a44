#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "psl4/errors.hpp"

namespace psl4 {

// Point labels on a set of at most 1024 points.
using Point = std::uint16_t;
inline constexpr std::size_t kMaxDegree = 1024;

// A permutation stored as its image array.  Products compose left to right:
// (a * b)(x) = b(a(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  // Cycles given as 0-based point lists.
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return img_.size(); }
  Point operator[](std::size_t i) const noexcept { return img_[i]; }
  std::span<const Point> images() const noexcept { return img_; }

  Perm operator*(const Perm& o) const;
  Perm inverse() const;
  Perm pow(std::int64_t e) const;
  bool is_identity() const noexcept;
  std::uint64_t order() const;
  // Least point moved, or degree() for the identity.
  std::size_t first_moved() const noexcept;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.img_ <=> b.img_; }

 private:
  std::vector<Point> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace psl4
