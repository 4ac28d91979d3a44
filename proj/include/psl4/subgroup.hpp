#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psl4/projgroup.hpp"

namespace psl4 {

enum class Family { Cyclic, Dihedral, Elementary, Frobenius, A4, S4, A5, PSLSub, PGLSub, Borel, Generic };

// Which torus a cyclic or dihedral group lives in: split divides (q-1)/n,
// nonsplit divides (q+1)/n.
enum class TorusSign { Auto, Split, Nonsplit };

// Subgroup kind plus parameters.  Canonical strings look like
//   C(c=8,sign=-)  D(2c=8,sign=+)  E(q0=8)  ExC(q0=9,c=4)  S4[class=2]  PSL(q0=2)
// and the parser also accepts the short forms C(8), D(8), E(8), ExC(13,6),
// PSL(2), PGL(3).  The sign and the class suffix are optional.  D(m) names
// the dihedral group of order m.
struct FamilySpec {
  Family family = Family::Generic;
  std::uint32_t c = 0;
  std::uint32_t q0 = 0;
  TorusSign sign = TorusSign::Auto;
  std::optional<std::uint32_t> class_index;  // 1-based

  static FamilySpec parse(std::string_view text);
  std::string to_string() const;
  // Order predicted by the parameters (0 for Generic).
  std::uint64_t predicted_order() const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

std::string family_name(Family f);

struct SubgroupHandle {
  GroupRef parent;
  std::vector<Perm> generators;
  std::uint64_t order = 0;
  FamilySpec family;

  std::size_t degree() const noexcept { return parent->v; }
};

// Checks membership of every generator in the parent and certifies the
// order with a stabilizer chain.
SubgroupHandle make_subgroup(GroupRef parent, std::vector<Perm> gens, FamilySpec family);

// Orbits of H, each sorted, ordered by least point.  Asserts that orbit
// lengths divide |H| and sum to v.
std::vector<std::vector<Point>> orbit_partition(const SubgroupHandle& H);
// Orbit lengths, ascending.
std::vector<std::size_t> orbit_lengths(const SubgroupHandle& H);
std::vector<Point> orbit_of_point(const SubgroupHandle& H, Point pt);

// All elements; throws UnsupportedError above `cap`.
std::vector<Perm> elements(const SubgroupHandle& H, std::size_t cap = 1'000'000);
// Sorted list of (element order, count).
std::vector<std::pair<std::uint64_t, std::uint64_t>> element_order_profile(const SubgroupHandle& H);

// Borel subgroup E_q x| C_{(q-1)/n} fixing pt.
SubgroupHandle point_stabilizer(GroupRef ctx, Point pt);

// Maps of PSL(2,q) (of PGL(2,q) when allow_pgl) fixing T setwise.
std::vector<MoebiusMap> stabilizer_maps_of_4set(const Field& F, std::array<Point, 4> T, bool allow_pgl = false);
SubgroupHandle setwise_stabilizer_of_4set(GroupRef ctx, std::array<Point, 4> T);

// Returns g with g^-1 H1 g = H2, or nullopt.  With allow_pgl the search runs
// over PGL(2,q).  Limited to |H| <= 60 and |G| <= 10^7.
std::optional<Perm> conjugacy_test(const SubgroupHandle& H1, const SubgroupHandle& H2, bool allow_pgl = false);

}  // namespace psl4
