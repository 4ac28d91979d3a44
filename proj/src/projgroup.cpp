#include "psl4/projgroup.hpp"

#include <string>

namespace psl4 {

std::vector<ProjPoint> proj_line(const Field& F) {
  std::vector<ProjPoint> pts;
  pts.reserve(F.q() + 1);
  for (std::uint32_t i = 0; i < F.q(); ++i) pts.push_back({static_cast<Point>(i), false, F.element(i)});
  pts.push_back({static_cast<Point>(F.q()), true, F.zero()});
  return pts;
}

MoebiusMap::MoebiusMap(const Field& F, FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : F_(F), a_(a), b_(b), c_(c), d_(d) {
  for (auto x : {a, b, c, d})
    if (!F.owns(x)) throw DomainError("Moebius coefficient from a different field");
  if (det().is_zero()) throw DomainError("singular Moebius map");
  FieldElement lead = !a_.is_zero() ? a_ : b_;
  if (!lead.is_one()) {
    auto s = lead.inv();
    a_ = a_ * s;
    b_ = b_ * s;
    c_ = c_ * s;
    d_ = d_ * s;
  }
}

MoebiusMap MoebiusMap::identity(const Field& F) { return {F, F.one(), F.zero(), F.zero(), F.one()}; }

Point MoebiusMap::operator()(Point z) const {
  const auto q = F_.q();
  if (z > q) throw DomainError("point out of range");
  if (z == q) return c_.is_zero() ? static_cast<Point>(q) : static_cast<Point>((a_ / c_).index());
  auto x = F_.element(z);
  auto den = c_ * x + d_;
  if (den.is_zero()) return static_cast<Point>(q);
  return static_cast<Point>(((a_ * x + b_) / den).index());
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& o) const {
  if (!(F_ == o.F_)) throw DomainError("Moebius maps over different fields");
  // apply *this first: matrix product o * this
  return {F_, o.a_ * a_ + o.b_ * c_, o.a_ * b_ + o.b_ * d_, o.c_ * a_ + o.d_ * c_, o.c_ * b_ + o.d_ * d_};
}

MoebiusMap MoebiusMap::inverse() const { return {F_, d_, -b_, -c_, a_}; }

MoebiusMap MoebiusMap::pow(std::uint64_t e) const {
  MoebiusMap r = identity(F_), base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Perm moebius_to_perm(const MoebiusMap& m) {
  const auto v = m.field().q() + 1;
  std::vector<Point> img(v);
  for (std::uint32_t z = 0; z < v; ++z) img[z] = m(static_cast<Point>(z));
  return Perm(std::move(img));
}

bool in_psl(const MoebiusMap& m) {
  if (m.field().p() == 2) return true;
  return m.det().is_square();
}

namespace {

// Homogeneous coordinates (x, y) of a point: z -> (z, 1), infinity -> (1, 0).
std::pair<FieldElement, FieldElement> homog(const Field& F, Point z) {
  if (z == F.q()) return {F.one(), F.zero()};
  return {F.element(z), F.one()};
}

// The map sending (P1, P2, P3) to (0, 1, infinity).
MoebiusMap to_standard(const Field& F, std::array<Point, 3> P) {
  auto [x1, y1] = homog(F, P[0]);
  auto [x2, y2] = homog(F, P[1]);
  auto [x3, y3] = homog(F, P[2]);
  auto L1 = y1 * x2 - x1 * y2;
  auto L3 = y3 * x2 - x3 * y2;
  return {F, L3 * y1, -(L3 * x1), L1 * y3, -(L1 * x3)};
}

}  // namespace

MoebiusMap three_point_transporter(const Field& F, std::array<Point, 3> src, std::array<Point, 3> dst) {
  for (const auto& t : {src, dst}) {
    for (auto z : t)
      if (z > F.q()) throw DomainError("point out of range");
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) throw DomainError("transporter needs distinct points");
  }
  return to_standard(F, src) * to_standard(F, dst).inverse();
}

std::optional<MoebiusMap> perm_to_moebius(const Field& F, const Perm& g) {
  const auto q = static_cast<Point>(F.q());
  if (g.degree() != F.q() + 1u) throw DomainError("permutation degree is not q+1");
  auto m = three_point_transporter(F, {0, 1, q}, {g[0], g[1], g[q]});
  for (std::uint32_t z = 0; z <= q; ++z)
    if (m(static_cast<Point>(z)) != g[z]) return std::nullopt;
  return m;
}

FieldElement GroupContext::torus_multiplier() const {
  auto g = field.generator();
  return p == 2 ? g : g * g;
}

GroupRef psl_generators(const Field& F) {
  if (F.q() < 4) throw DomainError("PSL(2,q) requires q >= 4");
  const auto q = F.q();
  const std::uint32_t n = F.p() == 2 ? 1 : 2;
  auto g = F.generator();
  auto mult = F.p() == 2 ? g : g * g;
  std::vector<MoebiusMap> maps{
      MoebiusMap(F, F.one(), F.one(), F.zero(), F.one()),
      MoebiusMap(F, mult, F.zero(), F.zero(), F.one()),
      MoebiusMap(F, F.zero(), -F.one(), F.one(), F.zero()),
  };
  std::vector<Perm> perms;
  for (const auto& m : maps) {
    if (!in_psl(m)) throw std::logic_error("PSL generator fails the determinant test");
    perms.push_back(moebius_to_perm(m));
  }
  PermGroup chain(q + 1, perms);
  const std::uint64_t expected = std::uint64_t{q} * (std::uint64_t{q} * q - 1) / n;
  if (chain.order() != expected)
    throw std::logic_error("PSL(2," + std::to_string(q) + ") order certificate failed: " +
                           std::to_string(chain.order()));
  return std::make_shared<const GroupContext>(GroupContext{
      F, q, F.p(), F.f(), n, q + 1, expected, std::move(maps), std::move(perms), std::move(chain)});
}

GroupRef psl_group(std::uint32_t q) {
  auto pp = prime_power(q);
  if (!pp) throw DomainError(std::to_string(q) + " is not a prime power");
  return psl_generators(Field::make(static_cast<std::uint32_t>(pp.p), pp.f));
}

}  // namespace psl4
