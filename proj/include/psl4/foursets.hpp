#pragma once

// G-orbits on 4-subsets of PG(1,q).  Since G is 2-transitive every orbit
// meets the sets {inf, 0, a, b}; those completions are merged under the
// stabilizer of {inf, 0} and under one transporter per pair of points.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "psl4/projgroup.hpp"

namespace psl4 {

using FourSet = std::array<Point, 4>;  // sorted ascending

struct OrbitRep {
  FourSet T;
  std::uint64_t size = 0;
};

class FourSubsetOrbits {
 public:
  explicit FourSubsetOrbits(GroupRef ctx);

  const GroupRef& group() const noexcept { return ctx_; }
  const std::vector<OrbitRep>& reps() const noexcept { return reps_; }
  std::size_t count() const noexcept { return reps_.size(); }
  // Index into reps() of the orbit containing S (any order, distinct points).
  std::size_t classify(FourSet S) const;

 private:
  std::size_t pair_index(Point a, Point b) const;
  FourSet normalize(FourSet S, int i, int j) const;

  GroupRef ctx_;
  std::vector<std::int32_t> class_of_pair_;  // completion {a,b} -> rep index
  std::vector<OrbitRep> reps_;
};

// The same list of representatives, computed for checking by brute force
// over all 4-subsets.  Only for v <= 40.
std::vector<OrbitRep> foursubset_orbits_bruteforce(const GroupContext& ctx);

}  // namespace psl4
