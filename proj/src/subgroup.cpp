#include "psl4/subgroup.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <unordered_set>

namespace psl4 {

namespace {

struct FamilyName {
  const char* name;
  Family family;
};

constexpr FamilyName kNames[] = {
    {"C", Family::Cyclic},    {"D", Family::Dihedral}, {"E", Family::Elementary}, {"ExC", Family::Frobenius},
    {"A4", Family::A4},       {"S4", Family::S4},      {"A5", Family::A5},        {"PSL", Family::PSLSub},
    {"PGL", Family::PGLSub},  {"Borel", Family::Borel}, {"Generic", Family::Generic},
};

std::uint32_t parse_uint(std::string_view s, std::string_view whole) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw DomainError("bad number '" + std::string(s) + "' in family spec '" + std::string(whole) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string family_name(Family f) {
  for (const auto& n : kNames)
    if (n.family == f) return n.name;
  return "?";
}

FamilySpec FamilySpec::parse(std::string_view text) {
  const auto whole = text;
  text = trim(text);
  FamilySpec spec;

  if (auto lb = text.find('['); lb != std::string_view::npos) {
    auto suffix = text.substr(lb);
    text = text.substr(0, lb);
    constexpr std::string_view key = "[class=";
    if (!suffix.starts_with(key) || !suffix.ends_with("]"))
      throw DomainError("bad class suffix in family spec '" + std::string(whole) + "'");
    auto idx = parse_uint(suffix.substr(key.size(), suffix.size() - key.size() - 1), whole);
    if (idx == 0) throw DomainError("class indices start at 1");
    spec.class_index = idx;
  }

  std::string_view name = text, args;
  if (auto lp = text.find('('); lp != std::string_view::npos) {
    if (text.back() != ')') throw DomainError("unbalanced parentheses in family spec '" + std::string(whole) + "'");
    name = text.substr(0, lp);
    args = text.substr(lp + 1, text.size() - lp - 2);
  }
  name = trim(name);
  bool known = false;
  for (const auto& n : kNames)
    if (name == n.name) {
      spec.family = n.family;
      known = true;
    }
  if (!known) throw DomainError("unknown subgroup family '" + std::string(name) + "'");

  std::vector<std::uint32_t> positional;
  while (!args.empty()) {
    auto comma = args.find(',');
    auto item = trim(args.substr(0, comma));
    args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      positional.push_back(parse_uint(item, whole));
      continue;
    }
    auto k = trim(item.substr(0, eq)), v = trim(item.substr(eq + 1));
    if (k == "sign") {
      if (v == "+" || v == "nonsplit")
        spec.sign = TorusSign::Nonsplit;
      else if (v == "-" || v == "split")
        spec.sign = TorusSign::Split;
      else
        throw DomainError("sign must be + or -");
    } else if (k == "c") {
      spec.c = parse_uint(v, whole);
    } else if (k == "2c") {
      auto m = parse_uint(v, whole);
      if (m % 2) throw DomainError("dihedral order must be even");
      spec.c = m / 2;
    } else if (k == "q0") {
      spec.q0 = parse_uint(v, whole);
    } else {
      throw DomainError("unknown key '" + std::string(k) + "' in family spec");
    }
  }

  auto need = [&](std::size_t n) {
    if (positional.size() > n) throw DomainError("too many arguments in family spec '" + std::string(whole) + "'");
  };
  switch (spec.family) {
    case Family::Cyclic:
      need(1);
      if (!positional.empty()) spec.c = positional[0];
      if (spec.c == 0) throw DomainError("C needs c");
      break;
    case Family::Dihedral:
      need(1);
      if (!positional.empty()) {
        if (positional[0] % 2) throw DomainError("dihedral order must be even");
        spec.c = positional[0] / 2;
      }
      if (spec.c == 0) throw DomainError("D needs its order");
      break;
    case Family::Elementary:
    case Family::PSLSub:
    case Family::PGLSub:
      need(1);
      if (!positional.empty()) spec.q0 = positional[0];
      if (spec.q0 == 0) throw DomainError(family_name(spec.family) + " needs q0");
      break;
    case Family::Frobenius:
      need(2);
      if (positional.size() >= 1) spec.q0 = positional[0];
      if (positional.size() >= 2) spec.c = positional[1];
      if (spec.q0 == 0 || spec.c == 0) throw DomainError("ExC needs q0 and c");
      break;
    default:
      need(0);
  }
  return spec;
}

std::string FamilySpec::to_string() const {
  std::string s = family_name(family);
  auto sign_str = [this] {
    return sign == TorusSign::Auto ? std::string{} : std::string(",sign=") + (sign == TorusSign::Nonsplit ? "+" : "-");
  };
  switch (family) {
    case Family::Cyclic:
      s += "(c=" + std::to_string(c) + sign_str() + ")";
      break;
    case Family::Dihedral:
      s += "(2c=" + std::to_string(2 * c) + sign_str() + ")";
      break;
    case Family::Elementary:
    case Family::PSLSub:
    case Family::PGLSub:
      s += "(q0=" + std::to_string(q0) + ")";
      break;
    case Family::Frobenius:
      s += "(q0=" + std::to_string(q0) + ",c=" + std::to_string(c) + ")";
      break;
    default:
      break;
  }
  if (class_index) s += "[class=" + std::to_string(*class_index) + "]";
  return s;
}

std::uint64_t FamilySpec::predicted_order() const {
  const std::uint64_t Q = q0;
  switch (family) {
    case Family::Cyclic: return c;
    case Family::Dihedral: return 2ull * c;
    case Family::Elementary: return q0;
    case Family::Frobenius: return Q * c;
    case Family::A4: return 12;
    case Family::S4: return 24;
    case Family::A5: return 60;
    case Family::PSLSub: return Q * (Q * Q - 1) / (Q % 2 ? 2 : 1);
    case Family::PGLSub: return Q * (Q * Q - 1);
    default: return 0;
  }
}

SubgroupHandle make_subgroup(GroupRef parent, std::vector<Perm> gens, FamilySpec family) {
  for (const auto& g : gens) {
    if (g.degree() != parent->v) throw DomainError("generator degree differs from q+1");
    if (!parent->chain.contains(g)) throw DomainError("generator does not lie in PSL(2," + std::to_string(parent->q) + ")");
  }
  auto order = PermGroup(parent->v, gens).order();
  return SubgroupHandle{std::move(parent), std::move(gens), order, family};
}

std::vector<std::vector<Point>> orbit_partition(const SubgroupHandle& H) {
  auto orbs = orbits(H.generators, H.degree());
  std::size_t total = 0;
  for (const auto& o : orbs) {
    if (H.order % o.size() != 0) throw std::logic_error("orbit length does not divide the group order");
    total += o.size();
  }
  if (total != H.degree()) throw std::logic_error("orbits do not partition the points");
  return orbs;
}

std::vector<std::size_t> orbit_lengths(const SubgroupHandle& H) {
  std::vector<std::size_t> lens;
  for (const auto& o : orbit_partition(H)) lens.push_back(o.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::vector<Point> orbit_of_point(const SubgroupHandle& H, Point pt) {
  auto o = orbit_of(H.generators, pt, H.degree());
  std::sort(o.begin(), o.end());
  return o;
}

std::vector<Perm> elements(const SubgroupHandle& H, std::size_t cap) {
  auto e = closure(H.generators, H.degree(), cap);
  if (!e) throw UnsupportedError("subgroup too large to enumerate");
  return std::move(*e);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> element_order_profile(const SubgroupHandle& H) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& e : elements(H)) ++counts[e.order()];
  return {counts.begin(), counts.end()};
}

SubgroupHandle point_stabilizer(GroupRef ctx, Point pt) {
  const auto& F = ctx->field;
  if (pt > ctx->q) throw DomainError("point out of range");
  std::vector<MoebiusMap> maps{
      MoebiusMap(F, F.one(), F.one(), F.zero(), F.one()),
      MoebiusMap(F, ctx->torus_multiplier(), F.zero(), F.zero(), F.one()),
  };
  if (pt != ctx->infinity()) {
    // t: z -> pt - 1/z sends infinity to pt and has determinant 1
    MoebiusMap t(F, F.element(pt), -F.one(), F.one(), F.zero());
    for (auto& m : maps) m = t.inverse() * m * t;
  }
  std::vector<Perm> gens;
  for (const auto& m : maps) gens.push_back(moebius_to_perm(m));
  auto H = make_subgroup(ctx, std::move(gens), FamilySpec{Family::Borel});
  if (H.order != std::uint64_t{ctx->q} * (ctx->q - 1) / ctx->n) throw std::logic_error("point stabilizer has wrong order");
  return H;
}

std::vector<MoebiusMap> stabilizer_maps_of_4set(const Field& F, std::array<Point, 4> T, bool allow_pgl) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (T[i] == T[j]) throw DomainError("4-set has repeated points");
  std::array<int, 4> idx{0, 1, 2, 3};
  std::vector<MoebiusMap> out;
  do {
    auto m = three_point_transporter(F, {T[0], T[1], T[2]}, {T[idx[0]], T[idx[1]], T[idx[2]]});
    if (m(T[3]) != T[idx[3]]) continue;
    if (!allow_pgl && !in_psl(m)) continue;
    out.push_back(m);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

SubgroupHandle setwise_stabilizer_of_4set(GroupRef ctx, std::array<Point, 4> T) {
  auto maps = stabilizer_maps_of_4set(ctx->field, T);
  std::vector<Perm> gens;
  for (const auto& m : maps)
    if (!m.is_identity()) gens.push_back(moebius_to_perm(m));
  auto H = make_subgroup(ctx, std::move(gens), FamilySpec{Family::Generic});
  if (H.order != maps.size()) throw std::logic_error("4-set stabilizer is not closed");
  return H;
}

std::optional<Perm> conjugacy_test(const SubgroupHandle& H1, const SubgroupHandle& H2, bool allow_pgl) {
  if (H1.parent->q != H2.parent->q) throw DomainError("subgroups of different groups");
  if (H1.order != H2.order) return std::nullopt;
  const auto& ctx = *H1.parent;
  const std::uint64_t ambient = ctx.order * (allow_pgl ? ctx.n : 1);
  if (H1.order > 60 || ambient > 10'000'000)
    throw UnsupportedError("conjugacy search limited to |H| <= 60 and |G| <= 10^7");
  if (element_order_profile(H1) != element_order_profile(H2)) return std::nullopt;
  if (orbit_lengths(H1) != orbit_lengths(H2)) return std::nullopt;

  const std::size_t v = ctx.v;
  std::vector<std::size_t> len1(v), len2(v);
  for (const auto& o : orbit_partition(H1))
    for (auto x : o) len1[x] = o.size();
  std::vector<Point> reps2;
  for (const auto& o : orbit_partition(H2)) {
    reps2.push_back(o.front());
    for (auto x : o) len2[x] = o.size();
  }

  std::vector<Point> order1(v);
  std::iota(order1.begin(), order1.end(), Point{0});
  std::stable_sort(order1.begin(), order1.end(), [&](Point a, Point b) { return len1[a] < len1[b]; });
  const Point x1 = order1[0], x2 = order1[1], x3 = order1[2];

  auto in_h2 = elements(H2);
  std::unordered_set<Perm, PermHash> E2(in_h2.begin(), in_h2.end());

  for (auto y1 : reps2) {
    if (len2[y1] != len1[x1]) continue;
    for (std::size_t y2 = 0; y2 < v; ++y2) {
      if (y2 == y1 || len2[y2] != len1[x2]) continue;
      for (std::size_t y3 = 0; y3 < v; ++y3) {
        if (y3 == y1 || y3 == y2 || len2[y3] != len1[x3]) continue;
        auto m = three_point_transporter(ctx.field, {x1, x2, x3},
                                         {y1, static_cast<Point>(y2), static_cast<Point>(y3)});
        if (!allow_pgl && !in_psl(m)) continue;
        auto g = moebius_to_perm(m);
        auto gi = g.inverse();
        bool ok = std::all_of(H1.generators.begin(), H1.generators.end(),
                              [&](const Perm& h) { return E2.count(gi * h * g) > 0; });
        if (ok) return g;
      }
    }
  }
  return std::nullopt;
}

}  // namespace psl4
