#include "psl4/sieve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "psl4/errors.hpp"
#include "psl4/gf.hpp"

namespace psl4 {

namespace {

using u128 = unsigned __int128;
using u64 = std::uint64_t;

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

u128 falling4(u64 k) { return u128{k} * (k - 1) * (k - 2) * (k - 3); }

std::uint32_t index_n(u64 q) { return q % 2 == 0 ? 1 : 2; }

// q(q^2-1) mod m without overflow for m < 2^63.
u64 group_numerator_mod(u64 q, u64 m) {
  const u128 r = q % m;
  const u128 s = (r * r + m - 1) % m;
  return static_cast<u64>(r * s % m);
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_char_power(u64 q0, u64 q) {
  auto a = prime_power(q0), b = prime_power(q);
  return a && b && a.p == b.p && a.f <= b.f;
}

bool lambda_ok(u64 lambda, u64 lo, u64 hi) { return lambda >= lo && (hi == 0 || lambda <= hi); }

ParamCandidate make(std::string sieve, FamilySpec spec, u64 q, u64 k, u64 lambda, u64 gb) {
  ParamCandidate c;
  c.sieve = std::move(sieve);
  c.spec = spec;
  c.q = q;
  c.k = k;
  c.lambda = lambda;
  c.gb = gb;
  c.gxb = gb / k;
  c.n = index_n(q);
  c.v = q + 1;
  const u128 g = u128{q} * (u128{q} * q - 1) / c.n;
  c.b = g % gb == 0 && g / gb <= u128{UINT64_MAX} ? static_cast<u64>(g / gb) : 0;
  c.conditions = parameter_conditions(q, k, lambda, gb, c.gxb);
  if (auto f = c.conditions.first_failure(); !f.empty()) c.eliminated_by = f;
  return c;
}

void sort_rows(std::vector<ParamCandidate>& rows) {
  auto key = [](const ParamCandidate& c) {
    return std::tuple(c.gb, ~c.k, c.q, c.lambda, c.i.value_or(0), c.spec.to_string());
  };
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
}

}  // namespace

std::string Conditions::first_failure() const {
  if (!lambda_identity) return "lambda_identity";
  if (!q_identity) return "q_identity";
  if (!k_divides_shift) return "k_divides_shift";
  if (!k_divides_gcd) return "k_divides_gcd";
  return {};
}

Conditions parameter_conditions(u64 q, u64 k, u64 lambda, u64 gb, u64 gxb) {
  if (q == 0 || k == 0 || lambda == 0 || gb == 0 || gxb == 0) throw DomainError("parameter_conditions: arguments must be positive");
  if (!prime_power(q)) throw DomainError(cat("parameter_conditions: ", q, " is not a prime power"));
  if (k >= (u64{1} << 24) || q < 3) throw DomainError("parameter_conditions: k or q out of range");
  const u64 n = index_n(q);
  Conditions c;
  const u128 lhs = falling4(k);
  u128 rhs = u128{lambda} * (q - 2);
  c.lambda_identity = !__builtin_mul_overflow(rhs, u128{n * 1} * gb, &rhs) && rhs == lhs;

  const u128 num = u128{k - 1} * (k - 2) * (k - 3);
  const u128 den = u128{lambda} * n * gxb;
  c.q_identity = num % den == 0 && num / den + 2 == q;

  // A = lambda n (q-2) |G_xB| + 6 taken mod k
  const u128 A = (u128{lambda % k} * n % k * ((q - 2) % k) % k * (gxb % k) + 6) % k;
  c.k_divides_shift = A == 0;
  c.k_divides_gcd = c.k_divides_shift && group_numerator_mod(q, k * n) == 0;
  return c;
}

std::vector<ParamCandidate> SieveReport::survivors() const {
  std::vector<ParamCandidate> out;
  for (const auto& c : candidates)
    if (c.survives()) out.push_back(c);
  return out;
}

bool SieveReport::audit() const {
  for (const auto& c : candidates) {
    if (!lambda_ok(c.lambda, lambda_min, lambda_max)) return false;
    if (!(c.k > 4 && c.k <= c.q) || c.gb % c.k != 0) return false;
    if (!c.conditions.lambda_identity || !c.conditions.q_identity) return false;
    if (c.survives() && !c.conditions.all()) return false;
    if (parameter_conditions(c.q, c.k, c.lambda, c.gb, c.gxb).first_failure() != c.conditions.first_failure()) return false;
  }
  for (const auto& r : rejected)
    if (!r.eliminated_by) return false;
  for (const auto& f : checks)
    if (f.solutions != 0) return false;
  return true;
}

SieveReport sieve_exceptional(u64 lambda_min, u64 lambda_max) {
  if (lambda_min < 5) throw DomainError("sieve_exceptional: lambda_min must be at least 5");
  SieveReport rep{.sieve = "exceptional", .lambda_min = lambda_min, .lambda_max = lambda_max};
  const std::pair<u64, Family> groups[] = {{12, Family::A4}, {24, Family::S4}, {60, Family::A5}};
  for (auto [gb, fam] : groups) {
    FamilySpec spec{.family = fam};
    for (u64 k = 5; k <= gb; ++k) {
      if (gb % k != 0 || falling4(k) % gb != 0) continue;
      const u64 N = static_cast<u64>(falling4(k) / gb);  // = lambda n (q-2)
      for (u64 d : divisors(N)) {
        const u64 q = d + 2;
        if (q < k || !prime_power(q)) continue;
        const u64 n = index_n(q);
        if (N % (n * d) != 0) continue;
        const u64 lambda = N / (n * d);
        if (!lambda_ok(lambda, lambda_min, lambda_max)) continue;
        rep.candidates.push_back(make("exceptional", spec, q, k, lambda, gb));
      }
    }
  }
  sort_rows(rep.candidates);
  return rep;
}

SieveReport sieve_subfield(u64 q0_max, std::uint32_t g_max, u64 lambda_min, u64 lambda_max, SubfieldProj proj) {
  if (q0_max < 2 || q0_max > 4096 || g_max < 2 || g_max > 16)
    throw DomainError("sieve_subfield: need 2 <= q0_max <= 4096 and 2 <= g_max <= 16");
  SieveReport rep{.sieve = "subfield", .lambda_min = lambda_min, .lambda_max = lambda_max};
  FiniteCheck grid{.name = "subfield grid",
                   .bound = cat("q0 <= ", q0_max, ", 2 <= g <= ", g_max, ", every k shape")};
  for (u64 q0 = 2; q0 <= q0_max; ++q0) {
    if (!prime_power(q0)) continue;
    for (std::uint32_t g = 2; g <= g_max; ++g) {
      u128 qq = 1;
      for (std::uint32_t e = 0; e < g; ++e) qq *= q0;
      if (qq >= (u128{1} << 62)) break;
      const u64 q = static_cast<u64>(qq);
      const u64 n0 = index_n(q0);
      struct Shape {
        Family fam;
        u64 gb, k;
      };
      std::vector<Shape> shapes;
      if (proj != SubfieldProj::PSL && g % 2 == 0) {
        const u64 gb = q0 * (q0 * q0 - 1);
        for (u64 k : {q0 + 1, q0 * (q0 - 1), gb}) shapes.push_back({Family::PGLSub, gb, k});
      }
      if (proj != SubfieldProj::PGL) {
        const u64 gb = q0 * (q0 * q0 - 1) / n0;
        shapes.push_back({Family::PSLSub, gb, q0 + 1});
        if (g % 2 == 0) shapes.push_back({Family::PSLSub, gb, q0 * (q0 - 1)});
        shapes.push_back({Family::PSLSub, gb, gb});
      }
      for (const auto& s : shapes) {
        ++grid.cases;
        if (s.k <= 4 || s.gb % s.k != 0) continue;
        const u128 num = falling4(s.k);
        const u128 den = u128{q - 2} * index_n(q) * s.gb;
        if (num % den != 0) continue;
        const u128 lam = num / den;
        if (lam > UINT64_MAX || !lambda_ok(static_cast<u64>(lam), lambda_min, lambda_max)) continue;
        FamilySpec spec{.family = s.fam, .q0 = static_cast<std::uint32_t>(q0)};
        if (s.k > q) {
          ParamCandidate c;
          c.sieve = "subfield";
          c.spec = spec;
          c.q = q;
          c.k = s.k;
          c.lambda = static_cast<u64>(lam);
          c.gb = s.gb;
          c.gxb = s.gb / s.k;
          c.n = index_n(q);
          c.v = q + 1;
          c.eliminated_by = cat("block size ", s.k, " exceeds q = ", q);
          rep.rejected.push_back(c);
          continue;
        }
        rep.candidates.push_back(make("subfield", spec, q, s.k, static_cast<u64>(lam), s.gb));
      }
    }
  }
  rep.checks.push_back(grid);
  sort_rows(rep.candidates);
  sort_rows(rep.rejected);
  return rep;
}

SieveReport sieve_torus(u64 lambda_min, u64 lambda_max, std::uint32_t f_max) {
  if (lambda_min < 5 || lambda_max > 10 || lambda_min > lambda_max)
    throw DomainError("sieve_torus: need 5 <= lambda_min <= lambda_max <= 10");
  SieveReport rep{.sieve = "torus", .lambda_min = lambda_min, .lambda_max = lambda_max};
  struct Row {
    ParamCandidate cand;
    bool exists;
  };
  std::vector<Row> rows;
  // (family, |G_xB|, k as a multiple of c)
  struct Shape {
    Family fam;
    u64 gxb, kmul;
  };
  const Shape shapes[] = {{Family::Cyclic, 1, 1}, {Family::Dihedral, 1, 2}, {Family::Dihedral, 2, 1}};
  for (u64 lambda = lambda_min; lambda <= lambda_max; ++lambda)
    for (u64 n : {1u, 2u})
      for (const auto& s : shapes)
        for (TorusSign side : {TorusSign::Split, TorusSign::Nonsplit}) {
          const u64 base = lambda * n * s.gxb;
          const u64 shifted = side == TorusSign::Split ? base : 3 * base;
          const u64 M = shifted > 6 ? shifted - 6 : 6 - shifted;  // c | M is sign-blind
          if (M == 0) continue;  // the q = 2^f branches below
          for (u64 c : divisors(M)) {
            if (c < 2 || (s.fam == Family::Dihedral && c < 3)) continue;
            const u64 k = c * s.kmul;
            if (k <= 4) continue;
            const u64 num = (k - 1) * (k - 2) * (k - 3), den = lambda * n * s.gxb;
            if (num % den != 0) continue;
            const u64 q = num / den + 2;
            if (q < k || !prime_power(q) || index_n(q) != n) continue;
            const u64 gb = k * s.gxb;
            FamilySpec spec{.family = s.fam, .c = static_cast<std::uint32_t>(c), .sign = side};
            auto cand = make("torus", spec, q, k, lambda, gb);
            const u64 torus = side == TorusSign::Split ? (q - 1) / n : (q + 1) / n;
            const bool exists = torus % c == 0;
            if (!exists)
              cand.eliminated_by = cat("subgroup order: no ", s.fam == Family::Cyclic ? "C_c" : "D_2c", " of order ", gb, " since c = ", c,
                                       " does not divide ", side == TorusSign::Split ? "(q-1)/n" : "(q+1)/n", " = ", torus,
                                       cand.conditions.all() ? "" : "; also fails " + cand.conditions.first_failure());
            rows.push_back({std::move(cand), exists});
          }
        }
  auto key = [](const ParamCandidate& c) { return std::tuple(c.lambda, c.gb, c.k, c.q); };
  for (auto& r : rows)
    if (r.cand.survives()) rep.candidates.push_back(r.cand);
  // a parameter tuple already realized by some family is not reported again
  for (auto& r : rows) {
    if (r.cand.survives()) continue;
    bool realized = std::any_of(rep.candidates.begin(), rep.candidates.end(),
                                [&](const auto& c) { return key(c) == key(r.cand); });
    bool dup = std::any_of(rep.rejected.begin(), rep.rejected.end(), [&](const auto& c) {
      return key(c) == key(r.cand) && c.spec.family == r.cand.spec.family && c.spec.c == r.cand.spec.c;
    });
    if (!realized && !dup) rep.rejected.push_back(r.cand);
  }

  // lambda n |G_xB| = 6 kills the split-side reduction: lambda = 6, n = 1,
  // |G_xB| = 1, so q = 2^f and (k-1)(k-2)(k-3) = 6(q-2).
  for (auto [fam, kmul] : {std::pair{Family::Dihedral, 2ull}, std::pair{Family::Cyclic, 1ull}}) {
    if (lambda_min > 6 || lambda_max < 6) break;
    FiniteCheck chk{.name = fam == Family::Dihedral ? "(lambda,n,|G_B|,k) = (6,1,2c,2c)" : "(lambda,n,|G_B|,k) = (6,1,c,c)",
                    .bound = cat("q = 2^f, 2 <= f <= ", f_max)};
    for (std::uint32_t f = 2; f <= f_max; ++f) {
      const u64 q = u64{1} << f;
      ++chk.cases;
      u64 k = 5;
      while ((k - 1) * (k - 2) * (k - 3) < 6 * (q - 2)) ++k;
      if ((k - 1) * (k - 2) * (k - 3) != 6 * (q - 2) || k % kmul != 0) continue;
      const u64 c = k / kmul;
      if ((q - 1) % c == 0 && parameter_conditions(q, k, 6, k, 1).all()) ++chk.solutions;
    }
    rep.checks.push_back(chk);
  }
  sort_rows(rep.candidates);
  sort_rows(rep.rejected);
  return rep;
}

SieveReport sieve_affine(u64 lambda_min, u64 lambda_max) {
  if (lambda_min < 5 || lambda_max > 10 || lambda_min > lambda_max)
    throw DomainError("sieve_affine: need 5 <= lambda_min <= lambda_max <= 10");
  SieveReport rep{.sieve = "affine", .lambda_min = lambda_min, .lambda_max = lambda_max};

  // q from the q identity, or 0 when it is not a usable field order for k.
  auto field_for = [](u64 num, u64 den, u64 n, u64 q0, u64 k) -> u64 {
    if (num % den != 0) return 0;
    const u64 q = num / den + 2;
    if (q < k || index_n(q) != n || !same_char_power(q0, q)) return 0;
    return q;
  };

  for (u64 lambda = lambda_min; lambda <= lambda_max; ++lambda)
    for (u64 n : {1u, 2u}) {
      // G_B = E_{q0}, k = q0, |G_xB| = 1: k | 2 lambda n - 6
      for (u64 k : divisors(2 * lambda * n - 6)) {
        if (k <= 4 || !prime_power(k)) continue;
        if (u64 q = field_for((k - 1) * (k - 2) * (k - 3), lambda * n, n, k, k))
          rep.candidates.push_back(make("affine", {.family = Family::Elementary, .q0 = static_cast<std::uint32_t>(k)}, q,
                                        k, lambda, k));
      }
      // G_B = E_{q0} x| C_c, k = q0 = ci + 1: k | 2 lambda n + 6i
      for (u64 i = 1; i < 2 * lambda * n; ++i)
        for (u64 k : divisors(2 * lambda * n + 6 * i)) {
          if (k <= 4 || !prime_power(k) || (k - 1) % i != 0) continue;
          const u64 c = (k - 1) / i;
          if (c < 2) continue;
          const u64 q = field_for(i * (k - 2) * (k - 3), lambda * n, n, k, k);
          if (!q) continue;
          auto cand = make("affine",
                           {.family = Family::Frobenius, .c = static_cast<std::uint32_t>(c), .q0 = static_cast<std::uint32_t>(k)},
                           q, k, lambda, c * k);
          cand.i = static_cast<std::uint32_t>(i);
          if (cand.survives() && ((q - 1) / n) % c != 0)
            cand.eliminated_by = cat("subgroup order: no E_q0 x| C_c of order ", c * k, " since c = ", c,
                                     " does not divide (q-1)/n = ", (q - 1) / n);
          rep.candidates.push_back(std::move(cand));
        }
    }

  // k = c q0 with |G_xB| = 1: q0 | 2 lambda n - 6 and c | q0 - 1
  FiniteCheck chk{.name = "k = c*q0 branch",
                  .bound = cat(lambda_min, " <= lambda <= ", lambda_max, ", n in {1,2}, q0 | 2*lambda*n - 6, c | q0 - 1")};
  for (u64 lambda = lambda_min; lambda <= lambda_max; ++lambda)
    for (u64 n : {1u, 2u})
      for (u64 q0 : divisors(2 * lambda * n - 6)) {
        if (q0 < 2 || !prime_power(q0)) continue;
        for (u64 c : divisors(q0 - 1)) {
          const u64 k = c * q0;
          if (c < 2 || k <= 4) continue;
          ++chk.cases;
          const u64 q = field_for((k - 1) * (k - 2) * (k - 3), lambda * n, n, q0, k);
          if (q && parameter_conditions(q, k, lambda, k, 1).all() && ((q - 1) / n) % c == 0) ++chk.solutions;
        }
      }
  rep.checks.push_back(chk);
  sort_rows(rep.candidates);
  return rep;
}

std::uint64_t binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (u64 j = 1; j <= k; ++j) {
    r = r * (n - k + j) / j;
    if (r > UINT64_MAX) throw DomainError("binomial: result exceeds 64 bits");
  }
  return static_cast<u64>(r);
}

DesignCounts design_identities(u64 v, u64 k, u64 lambda) {
  if (k < 4 || k > v) throw DomainError("design_identities: need 4 <= k <= v");
  DesignCounts d;
  bool ok = true;
  // lambda_s = lambda C(v-s, 4-s) / C(k-s, 4-s)
  auto level = [&](u64 s) -> u64 {
    const u128 num = u128{lambda} * binomial(v - s, 4 - s);
    const u128 den = binomial(k - s, 4 - s);
    if (num % den != 0) ok = false;
    return static_cast<u64>(num / den);
  };
  d.lambda3 = level(3);
  d.lambda2 = level(2);
  d.lambda1 = d.r = level(1);
  d.b = level(0);
  d.admissible = ok;
  return d;
}

}  // namespace psl4
