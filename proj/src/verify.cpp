#include "psl4/verify.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

#include "psl4/sieve.hpp"

namespace psl4 {

namespace {

struct RepMask {
  std::array<std::uint32_t, 4> word;
  std::array<std::uint64_t, 4> bit;
};

std::vector<RepMask> masks_of(std::span<const OrbitRep> reps) {
  std::vector<RepMask> out;
  out.reserve(reps.size());
  for (const auto& r : reps) {
    RepMask m{};
    for (int i = 0; i < 4; ++i) {
      m.word[i] = r.T[i] / 64;
      m.bit[i] = std::uint64_t{1} << (r.T[i] % 64);
    }
    out.push_back(m);
  }
  return out;
}

inline bool holds(const std::uint64_t* w, const RepMask& m) {
  return (w[m.word[0]] & m.bit[0]) && (w[m.word[1]] & m.bit[1]) && (w[m.word[2]] & m.bit[2]) &&
         (w[m.word[3]] & m.bit[3]);
}

DesignReport blank(const BlockSystem& sys, const FourSubsetOrbits& orbits, std::string method) {
  if (orbits.group()->q != sys.ctx->q) throw DomainError("orbit representatives belong to another group");
  DesignReport rep;
  rep.v = sys.v();
  rep.k = sys.k();
  rep.b = sys.b();
  rep.method = std::move(method);
  rep.flag_transitive = flag_transitive_check(sys);
  for (const auto& r : orbits.reps()) rep.lambda_profile.push_back({r.T, r.size, 0});
  return rep;
}

}  // namespace

std::vector<std::uint64_t> count_lambda_serial(const BlockSet& blocks, std::span<const OrbitRep> reps) {
  const auto masks = masks_of(reps);
  std::vector<std::uint64_t> tally(reps.size(), 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto* w = blocks.block(i).data();
    for (std::size_t r = 0; r < masks.size(); ++r) tally[r] += holds(w, masks[r]);
  }
  return tally;
}

std::vector<std::uint64_t> count_lambda(const BlockSet& blocks, std::span<const OrbitRep> reps, int threads) {
  const auto masks = masks_of(reps);
  const std::size_t R = masks.size();
  const auto nb = static_cast<std::int64_t>(blocks.size());
  std::vector<std::uint64_t> tally(R, 0);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
  {
    std::vector<std::uint64_t> local(R, 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < nb; ++i) {
      const auto* w = blocks.block(static_cast<std::size_t>(i)).data();
      for (std::size_t r = 0; r < R; ++r) local[r] += holds(w, masks[r]);
    }
#pragma omp critical
    for (std::size_t r = 0; r < R; ++r) tally[r] += local[r];
  }
  return tally;
}

void finish_report(DesignReport& rep) {
  rep.audit_lhs = 0;
  for (const auto& e : rep.lambda_profile) rep.audit_lhs += e.orbit_size * e.lambda;
  rep.audit_rhs = rep.b * binomial(rep.k, 4);
  const bool constant =
      !rep.lambda_profile.empty() && std::all_of(rep.lambda_profile.begin(), rep.lambda_profile.end(),
                                                 [&](const auto& e) { return e.lambda == rep.lambda_profile[0].lambda; });
  rep.lambda.reset();
  if (constant) rep.lambda = rep.lambda_profile[0].lambda;
  rep.is_4_design = constant && *rep.lambda > 0;
  rep.r = rep.v && (rep.b * rep.k) % rep.v == 0 ? rep.b * rep.k / rep.v : 0;
}

DesignReport verify_direct(const BlockSystem& sys, const FourSubsetOrbits& orbits, DirectLimits limits) {
  const std::uint64_t per_block = binomial(sys.k(), 4);
  if (sys.b() * per_block > limits.max_incidences || binomial(sys.v(), 4) > limits.max_subsets)
    throw UnsupportedError("verify_direct: block system too large, use verify_by_orbits");
  auto rep = blank(sys, orbits, "direct");
  auto key = [](Point a, Point b, Point c, Point d) {
    return (std::uint64_t{a} << 30) | (std::uint64_t{b} << 20) | (std::uint64_t{c} << 10) | d;
  };
  std::unordered_map<std::uint64_t, std::uint32_t> tally;
  tally.reserve(std::min<std::uint64_t>(binomial(sys.v(), 4), sys.b() * per_block));
  for (std::size_t i = 0; i < sys.b(); ++i) {
    const auto P = sys.blocks.points(i);
    const std::size_t k = P.size();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        for (std::size_t c = b + 1; c < k; ++c)
          for (std::size_t d = c + 1; d < k; ++d) ++tally[key(P[a], P[b], P[c], P[d])];
  }
  for (auto& e : rep.lambda_profile) {
    auto it = tally.find(key(e.T[0], e.T[1], e.T[2], e.T[3]));
    e.lambda = it == tally.end() ? 0 : it->second;
  }
  finish_report(rep);
  bool all_equal = tally.size() == binomial(sys.v(), 4);
  if (all_equal) {
    const auto first = tally.begin()->second;
    all_equal = std::all_of(tally.begin(), tally.end(), [&](const auto& kv) { return kv.second == first; });
  }
  if (all_equal != rep.is_4_design) throw std::logic_error("tally and orbit profile disagree");
  return rep;
}

DesignReport verify_by_orbits(const BlockSystem& sys, const FourSubsetOrbits& orbits, VerifyOptions opt) {
  auto rep = blank(sys, orbits, "orbit-reps");
  const auto counts = count_lambda(sys.blocks, orbits.reps(), opt.threads);
  for (std::size_t r = 0; r < counts.size(); ++r) rep.lambda_profile[r].lambda = counts[r];
  finish_report(rep);
  return rep;
}

DesignReport verify_local(GroupRef ctx, std::span<const Point> B, std::uint64_t b, const FourSubsetOrbits& orbits) {
  const std::size_t k = B.size();
  DesignReport rep;
  rep.v = ctx->v;
  rep.k = k;
  rep.b = b;
  rep.method = "local";
  std::vector<std::uint64_t> m(orbits.count(), 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = a + 1; c < k; ++c)
      for (std::size_t d = c + 1; d < k; ++d)
        for (std::size_t e = d + 1; e < k; ++e) ++m[orbits.classify({B[a], B[c], B[d], B[e]})];
  for (std::size_t r = 0; r < m.size(); ++r) {
    const auto& o = orbits.reps()[r];
    const unsigned __int128 num = static_cast<unsigned __int128>(b) * m[r];
    if (num % o.size != 0) throw std::logic_error("local lambda is not integral");
    rep.lambda_profile.push_back({o.T, o.size, static_cast<std::uint64_t>(num / o.size)});
  }
  finish_report(rep);
  return rep;
}

bool flag_transitive_check(const BlockSystem& sys) {
  const auto& B = sys.base_block;
  std::vector<Point> orbit;
  if (sys.stabilizer) {
    orbit = orbit_of_point(*sys.stabilizer, B.front());
  } else {
    std::vector<Perm> gens;
    for (const auto& m : block_stabilizer_maps(*sys.ctx, B)) gens.push_back(moebius_to_perm(m));
    orbit = orbit_of(gens, B.front(), sys.v());
  }
  if (orbit.size() != B.size()) return false;
  std::sort(orbit.begin(), orbit.end());
  return orbit == B;
}

}  // namespace psl4
