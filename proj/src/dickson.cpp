#include "psl4/dickson.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace psl4 {

namespace {

std::string qstr(const GroupContext& ctx) { return "PSL(2," + std::to_string(ctx.q) + ")"; }

bool has_order(const MoebiusMap& m, std::uint64_t k) {
  if (!m.pow(k).is_identity()) return false;
  for (auto r : prime_factors(k))
    if (m.pow(k / r).is_identity()) return false;
  return true;
}

std::vector<Perm> to_perms(const std::vector<MoebiusMap>& maps) {
  std::vector<Perm> out;
  for (const auto& m : maps) out.push_back(moebius_to_perm(m));
  return out;
}

SubgroupHandle certified(GroupRef ctx, const std::vector<MoebiusMap>& maps, FamilySpec spec) {
  for (const auto& m : maps)
    if (!in_psl(m)) throw std::logic_error("constructed generator lies outside PSL");
  auto H = make_subgroup(std::move(ctx), to_perms(maps), spec);
  if (auto want = spec.predicted_order(); want != 0 && H.order != want)
    throw std::logic_error(spec.to_string() + " built with order " + std::to_string(H.order));
  return H;
}

MoebiusMap translation(const Field& F, FieldElement b) { return {F, F.one(), b, F.zero(), F.one()}; }
MoebiusMap scaling(const Field& F, FieldElement m) { return {F, m, F.zero(), F.zero(), F.one()}; }

std::uint32_t torus_size(const GroupContext& ctx, TorusSign s) {
  return s == TorusSign::Split ? (ctx.q - 1) / ctx.n : (ctx.q + 1) / ctx.n;
}

}  // namespace

TorusSign resolve_sign(const GroupContext& ctx, std::uint32_t c, TorusSign sign) {
  if (c < 2) throw DomainError("torus subgroups need c >= 2");
  auto fits = [&](TorusSign s) { return torus_size(ctx, s) % c == 0; };
  if (sign == TorusSign::Auto) {
    if (fits(TorusSign::Split)) return TorusSign::Split;
    if (fits(TorusSign::Nonsplit)) return TorusSign::Nonsplit;
    throw FamilyAbsent(std::to_string(c) + " divides neither (q-1)/n nor (q+1)/n in " + qstr(ctx));
  }
  if (!fits(sign)) throw FamilyAbsent("c = " + std::to_string(c) + " does not divide the torus order in " + qstr(ctx));
  return sign;
}

MoebiusMap torus_generator(const GroupContext& ctx, TorusSign sign) {
  const auto& F = ctx.field;
  if (sign == TorusSign::Split) return scaling(F, ctx.torus_multiplier());
  const auto N = torus_size(ctx, TorusSign::Nonsplit);
  for (std::uint32_t t = 0; t < ctx.q; ++t) {
    MoebiusMap m(F, F.zero(), -F.one(), F.one(), F.element(t));
    if (has_order(m, N)) return m;
  }
  throw std::logic_error("nonsplit torus scan exhausted for " + qstr(ctx));
}

SubgroupHandle build_cyclic(GroupRef ctx, std::uint32_t c, TorusSign sign) {
  sign = resolve_sign(*ctx, c, sign);
  auto x = torus_generator(*ctx, sign).pow(torus_size(*ctx, sign) / c);
  return certified(ctx, {x}, FamilySpec{Family::Cyclic, c, 0, sign});
}

std::vector<SubgroupHandle> dihedral_classes(GroupRef ctx, std::uint32_t c, TorusSign sign) {
  if (c < 3) throw DomainError("dihedral groups here need c >= 3");
  sign = resolve_sign(*ctx, c, sign);
  const auto& F = ctx->field;
  const auto T = torus_generator(*ctx, sign);
  const auto x = T.pow(torus_size(*ctx, sign) / c);
  const auto xinv = x.inverse();

  Point y0 = 0;
  while (x(y0) == y0) ++y0;
  const std::array<Point, 3> src{y0, x(y0), x(x(y0))};

  // every involution of PSL inverting x
  std::vector<MoebiusMap> W;
  for (std::uint32_t y = 0; y < ctx->v; ++y) {
    auto y1 = static_cast<Point>(y);
    if (x(y1) == y1) continue;
    auto m = three_point_transporter(F, src, {y1, xinv(y1), xinv(xinv(y1))});
    if (!in_psl(m) || !(m * m).is_identity() || !(m * x * m == xinv)) continue;
    W.push_back(m);
  }
  if (W.empty()) throw std::logic_error("no involution inverts the torus element");

  // group the involutions into dihedral subgroups <x, w>
  std::vector<std::size_t> reps;  // index into W of each group's first involution
  auto group_of = [&](const MoebiusMap& w) -> std::size_t {
    for (std::size_t g = 0; g < reps.size(); ++g)
      if ((W[reps[g]] * w).pow(c).is_identity()) return g;
    return reps.size();
  };
  for (std::size_t i = 0; i < W.size(); ++i)
    if (group_of(W[i]) == reps.size()) reps.push_back(i);

  // classes are orbits of the normalizer <T, w0>
  std::vector<std::size_t> parent(reps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  const MoebiusMap conj[] = {T, W.front()};
  for (std::size_t g = 0; g < reps.size(); ++g) {
    for (const auto& s : conj) {
      auto h = group_of(s.inverse() * W[reps[g]] * s);
      if (h == reps.size()) throw std::logic_error("conjugate involution missing from the list");
      auto a = find(g), b = find(h);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<SubgroupHandle> out;
  std::uint32_t idx = 0;
  for (std::size_t g = 0; g < reps.size(); ++g) {
    if (find(g) != g) continue;
    FamilySpec spec{Family::Dihedral, c, 0, sign, ++idx};
    out.push_back(certified(ctx, {x, W[reps[g]]}, spec));
  }
  return out;
}

SubgroupHandle build_dihedral(GroupRef ctx, std::uint32_t c, TorusSign sign, std::uint32_t class_index) {
  auto all = dihedral_classes(std::move(ctx), c, sign);
  if (class_index < 1 || class_index > all.size())
    throw DomainError("class index " + std::to_string(class_index) + " out of range 1.." + std::to_string(all.size()));
  return all[class_index - 1];
}

std::vector<SubgroupHandle> elementary_classes(GroupRef ctx, std::uint32_t q0) {
  const auto& F = ctx->field;
  auto pp = prime_power(q0);
  if (!pp || pp.p != ctx->p || pp.f > ctx->f)
    throw FamilyAbsent("E(" + std::to_string(q0) + ") does not embed in " + qstr(*ctx));
  const auto e = pp.f;
  if (e == ctx->f) {
    std::vector<MoebiusMap> maps;
    for (std::uint32_t i = 0; i < e; ++i) {
      Poly basis(e, 0);
      basis[i] = 1;
      maps.push_back(translation(F, F.from_coeffs(basis)));
    }
    return {certified(ctx, maps, FamilySpec{Family::Elementary, 0, q0, TorusSign::Auto, 1})};
  }

  // e-dimensional GF(p)-subspaces as sorted element lists
  auto span_with = [&](const std::vector<std::uint32_t>& V, std::uint32_t x) {
    std::vector<std::uint32_t> W;
    auto step = F.element(x);
    for (auto v : V) {
      auto acc = F.element(v);
      for (std::uint32_t k = 0; k < ctx->p; ++k) {
        W.push_back(acc.index());
        acc = acc + step;
      }
    }
    std::sort(W.begin(), W.end());
    return W;
  };
  std::set<std::vector<std::uint32_t>> layer{{0}};
  for (std::uint32_t d = 0; d < e; ++d) {
    std::set<std::vector<std::uint32_t>> next;
    for (const auto& V : layer)
      for (std::uint32_t x = 1; x < ctx->q; ++x) {
        if (std::binary_search(V.begin(), V.end(), x)) continue;
        next.insert(span_with(V, x));
        if (next.size() > 200000) throw UnsupportedError("too many subspaces to enumerate");
      }
    layer = std::move(next);
  }

  const auto s = ctx->torus_multiplier();
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::vector<std::uint32_t>> reps;
  for (const auto& V : layer) {
    if (seen.count(V)) continue;
    reps.push_back(V);  // layer is ordered, so V is the least of its orbit
    auto W = V;
    while (seen.insert(W).second) {
      for (auto& w : W) w = (F.element(w) * s).index();
      std::sort(W.begin(), W.end());
    }
  }

  std::vector<SubgroupHandle> out;
  std::uint32_t idx = 0;
  for (const auto& V : reps) {
    std::vector<std::uint32_t> basis, span{0};
    for (auto x : V) {
      if (std::binary_search(span.begin(), span.end(), x)) continue;
      basis.push_back(x);
      span = span_with(span, x);
    }
    std::vector<MoebiusMap> maps;
    for (auto b : basis) maps.push_back(translation(F, F.element(b)));
    out.push_back(certified(ctx, maps, FamilySpec{Family::Elementary, 0, q0, TorusSign::Auto, ++idx}));
  }
  return out;
}

SubgroupHandle build_elementary(GroupRef ctx, std::uint32_t q0, std::uint32_t class_index) {
  auto all = elementary_classes(std::move(ctx), q0);
  if (class_index < 1 || class_index > all.size())
    throw DomainError("class index " + std::to_string(class_index) + " out of range 1.." + std::to_string(all.size()));
  return all[class_index - 1];
}

SubgroupHandle build_frobenius(GroupRef ctx, std::uint32_t q0, std::uint32_t c) {
  const auto& F = ctx->field;
  auto pp = prime_power(q0);
  if (!pp || pp.p != ctx->p || ctx->f % pp.f != 0)
    throw FamilyAbsent("GF(" + std::to_string(q0) + ") is not a subfield of GF(" + std::to_string(ctx->q) + ")");
  if (c < 2 || (q0 - 1) % c != 0) throw FamilyAbsent("c must divide q0 - 1");
  auto sub = Field::make(ctx->p, pp.f);
  auto emb = subfield_embed(sub, F);

  std::vector<FieldElement> image;
  for (std::uint32_t i = 0; i < sub.q(); ++i) image.push_back(emb(sub.element(i)));
  std::sort(image.begin(), image.end(), [](FieldElement a, FieldElement b) { return a.index() < b.index(); });
  std::optional<FieldElement> mult;
  for (auto m : image)
    if (!m.is_zero() && m.mult_order() == c && m.is_square()) {
      mult = m;
      break;
    }
  if (!mult) throw FamilyAbsent("no square multiplier of order " + std::to_string(c) + " in GF(" + std::to_string(q0) + ")");

  std::vector<MoebiusMap> maps;
  for (std::uint32_t i = 0; i < pp.f; ++i) {
    Poly basis(pp.f, 0);
    basis[i] = 1;
    maps.push_back(translation(F, emb(sub.from_coeffs(basis))));
  }
  maps.push_back(scaling(F, *mult));
  return certified(ctx, maps, FamilySpec{Family::Frobenius, c, q0});
}

bool exceptional_exists(std::uint32_t q, Family type) {
  const bool even = q % 2 == 0;
  auto pp = prime_power(q);
  switch (type) {
    case Family::A4: return !even || pp.f % 2 == 0;
    case Family::S4: return !even && (q % 8 == 1 || q % 8 == 7);
    case Family::A5: return q % 5 == 0 || q % 5 == 1 || q % 5 == 4;
    default: throw DomainError("not an exceptional family");
  }
}

std::vector<SubgroupHandle> build_exceptional(GroupRef ctx, Family type) {
  const std::uint64_t k = type == Family::A4 ? 3 : type == Family::S4 ? 4 : type == Family::A5 ? 5 : 0;
  if (k == 0) throw DomainError("not an exceptional family");
  if (!exceptional_exists(ctx->q, type)) throw FamilyAbsent(family_name(type) + " is not a subgroup of " + qstr(*ctx));
  const auto& F = ctx->field;
  const MoebiusMap u(F, F.zero(), -F.one(), F.one(), F.zero());

  // t runs over trace-1, determinant-1 matrices, i.e. elements of order 3
  std::optional<MoebiusMap> found;
  auto try_t = [&](FieldElement a, FieldElement b, FieldElement c) {
    MoebiusMap t(F, a, b, c, F.one() - a);
    if (has_order(t, 3) && has_order(u * t, k)) found = t;
  };
  for (std::uint32_t ai = 0; ai < ctx->q && !found; ++ai) {
    auto a = F.element(ai);
    auto rhs = a * (F.one() - a) - F.one();  // bc
    for (std::uint32_t bi = 1; bi < ctx->q && !found; ++bi) {
      auto b = F.element(bi);
      try_t(a, b, rhs / b);
    }
    if (rhs.is_zero())
      for (std::uint32_t ci = 0; ci < ctx->q && !found; ++ci) try_t(a, F.zero(), F.element(ci));
  }
  if (!found) throw std::logic_error("exceptional subgroup scan exhausted for " + qstr(*ctx));

  FamilySpec spec{type};
  spec.class_index = 1;
  std::vector<SubgroupHandle> out{certified(ctx, {u, *found}, spec)};
  if (ctx->p == 2) return out;

  const MoebiusMap delta = scaling(F, F.generator());
  spec.class_index = 2;
  auto second = certified(ctx, {delta.inverse() * u * delta, delta.inverse() * *found * delta}, spec);
  bool split;
  if (ctx->order <= 10'000'000) {
    split = !conjugacy_test(out.front(), second).has_value();
  } else {
    const auto q = ctx->q;
    split = type == Family::S4 || (type == Family::A4 && (q % 8 == 1 || q % 8 == 7)) ||
            (type == Family::A5 && (q % 10 == 1 || q % 10 == 9));
  }
  if (split) out.push_back(std::move(second));
  return out;
}

SubgroupHandle build_subfield(GroupRef ctx, std::uint32_t q0, Family proj) {
  if (proj != Family::PSLSub && proj != Family::PGLSub) throw DomainError("subfield family must be PSL or PGL");
  auto pp = prime_power(q0);
  if (!pp || pp.p != ctx->p || ctx->f % pp.f != 0 || ctx->f / pp.f < 2)
    throw FamilyAbsent("q = " + std::to_string(ctx->q) + " is not a proper power of " + std::to_string(q0));
  const auto g = ctx->f / pp.f;
  if (proj == Family::PGLSub && g % 2 != 0) throw FamilyAbsent("PGL(2,q0) needs an even exponent g");
  const auto& F = ctx->field;
  auto sub = Field::make(ctx->p, pp.f);
  auto emb = subfield_embed(sub, F);
  auto g0 = emb(sub.generator());
  std::vector<MoebiusMap> maps{
      translation(F, F.one()),
      scaling(F, ctx->p == 2 ? g0 : g0 * g0),
      MoebiusMap(F, F.zero(), -F.one(), F.one(), F.zero()),
  };
  if (proj == Family::PGLSub) maps.push_back(scaling(F, g0));
  return certified(ctx, maps, FamilySpec{proj, 0, q0});
}

std::vector<SubgroupHandle> build_family(GroupRef ctx, const FamilySpec& spec) {
  switch (spec.family) {
    case Family::Cyclic: return {build_cyclic(ctx, spec.c, spec.sign)};
    case Family::Dihedral: return dihedral_classes(ctx, spec.c, spec.sign);
    case Family::Elementary: return elementary_classes(ctx, spec.q0);
    case Family::Frobenius: return {build_frobenius(ctx, spec.q0, spec.c)};
    case Family::A4:
    case Family::S4:
    case Family::A5: return build_exceptional(ctx, spec.family);
    case Family::PSLSub:
    case Family::PGLSub: return {build_subfield(ctx, spec.q0, spec.family)};
    case Family::Borel: return {point_stabilizer(ctx, ctx->infinity())};
    default: throw DomainError("cannot build family " + spec.to_string());
  }
}

SubgroupHandle build(GroupRef ctx, const FamilySpec& spec) {
  auto all = build_family(std::move(ctx), spec);
  std::uint32_t idx = spec.class_index.value_or(1);
  if (idx < 1 || idx > all.size())
    throw DomainError("class index " + std::to_string(idx) + " out of range 1.." + std::to_string(all.size()));
  return all[idx - 1];
}

std::vector<SubgroupHandle> classes_of_order(GroupRef ctx, std::uint64_t order) {
  std::vector<SubgroupHandle> out;
  auto take = [&](const FamilySpec& spec) {
    try {
      for (auto& h : build_family(ctx, spec)) out.push_back(std::move(h));
    } catch (const FamilyAbsent&) {
    }
  };
  if (order >= 2 && order < ctx->q) take(FamilySpec{Family::Cyclic, static_cast<std::uint32_t>(order)});
  if (order % 2 == 0 && order >= 6 && order < 2ull * ctx->q)
    take(FamilySpec{Family::Dihedral, static_cast<std::uint32_t>(order / 2)});
  if (auto pp = prime_power(order); pp && pp.p == ctx->p)
    take(FamilySpec{Family::Elementary, 0, static_cast<std::uint32_t>(order)});
  for (std::uint32_t e = 1; e <= ctx->f; ++e) {
    if (ctx->f % e != 0) continue;
    std::uint64_t q0 = 1;
    for (std::uint32_t i = 0; i < e; ++i) q0 *= ctx->p;
    if (order % q0 == 0 && order / q0 >= 2) take(FamilySpec{Family::Frobenius, static_cast<std::uint32_t>(order / q0),
                                                           static_cast<std::uint32_t>(q0)});
  }
  for (auto t : {Family::A4, Family::S4, Family::A5})
    if (FamilySpec{t}.predicted_order() == order) take(FamilySpec{t});
  return out;
}

}  // namespace psl4
