#pragma once

// Orbits, enumeration and a stabilizer chain for permutation groups of
// degree at most 1024.

#include <optional>
#include <vector>

#include "psl4/perm.hpp"

namespace psl4 {

// Orbit of `pt` in BFS order.
std::vector<Point> orbit_of(std::span<const Perm> gens, Point pt, std::size_t degree);

// All orbits, each sorted, ordered by least element.
std::vector<std::vector<Point>> orbits(std::span<const Perm> gens, std::size_t degree);

// Element enumeration by BFS on the Cayley graph.  Returns nullopt as soon as
// more than `cap` elements are found.
std::optional<std::vector<Perm>> closure(std::span<const Perm> gens, std::size_t degree,
                                         std::size_t cap = 1'000'000);

// Deterministic Schreier-Sims.  Base points are chosen as the least point
// moved by the first generator that reaches a new level, which for
// transitive groups of PG(1,q) gives 0, 1, 2, ...
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> gens);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return gens_; }
  std::uint64_t order() const;
  bool contains(const Perm& g) const;
  std::vector<Point> base() const;
  std::vector<std::size_t> basic_orbit_sizes() const;
  // Generators of the pointwise stabilizer of the first `depth` base points.
  std::vector<Perm> stabilizer_generators(std::size_t depth) const;

 private:
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;
    std::vector<std::int32_t> pos;  // point -> index in orbit, or -1
    std::vector<Point> orbit;
    std::vector<Perm> u;     // u[i] maps base to orbit[i]
    std::vector<Perm> uinv;
    std::vector<std::size_t> done;  // generators already paired with orbit[i]
  };

  // Returns the residue and the level where sifting stopped.
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from) const;
  void add_level(Point base);
  void add_generator(std::size_t level, const Perm& g);
  void build();

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
};

}  // namespace psl4
