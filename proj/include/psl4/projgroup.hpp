#pragma once

// PG(1,q), Moebius maps and PSL(2,q) as a permutation group on q+1 points.
// Point i < q is the field element with index i; point q is infinity.

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "psl4/gf.hpp"
#include "psl4/perm.hpp"
#include "psl4/permgroup.hpp"

namespace psl4 {

struct ProjPoint {
  Point index = 0;
  bool infinite = false;
  FieldElement value;  // zero for infinity
};

std::vector<ProjPoint> proj_line(const Field& F);

// z -> (az+b)/(cz+d), normalized so the first nonzero of (a,b,c,d) is 1.
// Products compose left to right, like Perm.
class MoebiusMap {
 public:
  MoebiusMap(const Field& F, FieldElement a, FieldElement b, FieldElement c, FieldElement d);
  static MoebiusMap identity(const Field& F);

  const Field& field() const noexcept { return F_; }
  FieldElement a() const noexcept { return a_; }
  FieldElement b() const noexcept { return b_; }
  FieldElement c() const noexcept { return c_; }
  FieldElement d() const noexcept { return d_; }
  FieldElement det() const { return a_ * d_ - b_ * c_; }

  Point operator()(Point z) const;
  MoebiusMap operator*(const MoebiusMap& o) const;
  MoebiusMap inverse() const;
  MoebiusMap pow(std::uint64_t e) const;
  bool is_identity() const noexcept { return a_ == d_ && b_.is_zero() && c_.is_zero(); }

  friend bool operator==(const MoebiusMap& x, const MoebiusMap& y) noexcept {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

 private:
  Field F_;
  FieldElement a_, b_, c_, d_;
};

Perm moebius_to_perm(const MoebiusMap& m);
bool in_psl(const MoebiusMap& m);

// The unique element of PGL(2,q) with src[i] -> dst[i].
MoebiusMap three_point_transporter(const Field& F, std::array<Point, 3> src, std::array<Point, 3> dst);

// Recovers the Moebius map realizing a permutation of PG(1,q); nullopt when
// the permutation is not induced by PGL(2,q).
std::optional<MoebiusMap> perm_to_moebius(const Field& F, const Perm& g);

struct GroupContext {
  Field field;
  std::uint32_t q = 0, p = 0, f = 0;
  std::uint32_t n = 0;  // gcd(2, q-1)
  std::uint32_t v = 0;  // q + 1
  std::uint64_t order = 0;
  std::vector<MoebiusMap> generator_maps;
  std::vector<Perm> generators;
  PermGroup chain;

  Point infinity() const noexcept { return static_cast<Point>(q); }
  // Multiplier of the diagonal generator: g^2, or g when q is even.
  FieldElement torus_multiplier() const;
};

using GroupRef = std::shared_ptr<const GroupContext>;

// PSL(2,q) generated by z+1, g^2 z (g z for q even) and -1/z, with its order
// certified by the stabilizer chain.
GroupRef psl_generators(const Field& F);
GroupRef psl_group(std::uint32_t q);

}  // namespace psl4
