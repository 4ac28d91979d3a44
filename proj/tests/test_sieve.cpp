#include "doctest.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "psl4/errors.hpp"
#include "psl4/gf.hpp"
#include "psl4/sieve.hpp"

using namespace psl4;

namespace {

using Tuple4 = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;
using Tuple5 = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;

std::set<Tuple4> exceptional_rows(const std::vector<ParamCandidate>& v) {
  std::set<Tuple4> out;
  for (const auto& c : v) out.insert({c.gb, c.k, c.q, c.lambda});
  return out;
}

// (lambda, |G_B|, c, k, q)
std::set<Tuple5> torus_rows(const std::vector<ParamCandidate>& v) {
  std::set<Tuple5> out;
  for (const auto& c : v) out.insert({c.lambda, c.gb, c.spec.c, c.k, c.q});
  return out;
}

std::uint64_t n_of(std::uint64_t q) { return q % 2 ? 2 : 1; }

}  // namespace

TEST_CASE("parameter_conditions examples") {
  CHECK(parameter_conditions(761, 24, 7, 24, 1).all());
  CHECK(parameter_conditions(23, 8, 5, 8, 1).all());
  CHECK(parameter_conditions(8, 6, 10, 6, 1).all());
  auto bad = parameter_conditions(163, 24, 33, 24, 1);
  CHECK(bad.lambda_identity);
  CHECK(bad.q_identity);
  CHECK_FALSE(bad.k_divides_gcd);
  CHECK(bad.first_failure() == "k_divides_gcd");
  CHECK(parameter_conditions(23, 8, 6, 8, 1).first_failure() == "lambda_identity");
  CHECK_THROWS_AS(parameter_conditions(24, 8, 5, 8, 1), DomainError);
  CHECK_THROWS_AS(parameter_conditions(23, 8, 0, 8, 1), DomainError);
}

TEST_CASE("exceptional sieve gives the thirty tuples") {
  const std::set<Tuple4> expected{
      {12, 12, 32, 33},  {12, 12, 13, 45},  {12, 12, 17, 33},   {12, 12, 47, 11},   {12, 12, 101, 5},
      {12, 6, 8, 5},     {24, 24, 25, 231}, {24, 24, 71, 77},   {24, 24, 79, 69},   {24, 24, 163, 33},
      {24, 24, 233, 23}, {24, 24, 761, 7},  {24, 8, 16, 5},     {24, 8, 9, 5},      {60, 60, 61, 1653},
      {60, 60, 89, 1121}, {60, 60, 179, 551}, {60, 60, 1123, 87}, {60, 30, 128, 87}, {60, 30, 31, 189},
      {60, 30, 89, 63},  {60, 30, 263, 21}, {60, 30, 191, 29},  {60, 20, 53, 19},   {60, 20, 59, 17},
      {60, 15, 16, 39},  {60, 15, 23, 13},  {60, 15, 41, 7},    {60, 12, 13, 9},    {60, 10, 16, 6}};
  auto rep = sieve_exceptional();
  CHECK(rep.candidates.size() == 30);
  CHECK(exceptional_rows(rep.candidates) == expected);
  CHECK(rep.audit());
  const std::set<Tuple4> dead{{24, 24, 163, 33}, {60, 60, 1123, 87}, {60, 30, 128, 87},
                              {60, 30, 263, 21}, {60, 20, 53, 19},   {60, 15, 23, 13}};
  std::set<Tuple4> flagged;
  for (const auto& c : rep.candidates)
    if (!c.survives()) {
      flagged.insert({c.gb, c.k, c.q, c.lambda});
      CHECK(*c.eliminated_by == "k_divides_gcd");
    }
  CHECK(flagged == dead);
  for (const auto& c : rep.candidates) {
    if (c.q == 761) CHECK(c.b == 9181465);
  }
  auto capped = sieve_exceptional(5, 10);
  CHECK(exceptional_rows(capped.candidates) == std::set<Tuple4>{{12, 12, 101, 5}, {12, 6, 8, 5}, {24, 8, 16, 5},
                                                                 {24, 8, 9, 5},     {24, 24, 761, 7}, {60, 15, 41, 7},
                                                                 {60, 12, 13, 9},   {60, 10, 16, 6}});
  CHECK_THROWS_AS(sieve_exceptional(4), DomainError);
}

TEST_CASE("torus sieve") {
  auto rep = sieve_torus(5, 10);
  CHECK(rep.audit());
  CHECK(torus_rows(rep.candidates) == std::set<Tuple5>{{5, 8, 4, 8, 23}, {8, 18, 9, 18, 512}, {10, 6, 3, 6, 8},
                                                       {7, 8, 8, 8, 17}, {7, 8, 4, 8, 17}, {10, 14, 7, 7, 8},
                                                       {6, 6, 3, 6, 7}});
  CHECK(rep.candidates.size() == 7);
  auto hit = std::find_if(rep.rejected.begin(), rep.rejected.end(),
                          [](const auto& c) { return c.q == 197 && c.k == 16 && c.spec.c == 8; });
  REQUIRE(hit != rep.rejected.end());
  CHECK(hit->lambda == 7);
  CHECK(hit->gb == 16);
  CHECK(hit->eliminated_by->find("subgroup order") == 0);
  CHECK(hit->eliminated_by->find("also fails k_divides_gcd") != std::string::npos);
  for (const auto& r : rep.rejected) CHECK(r.eliminated_by->find("subgroup order") == 0);

  REQUIRE(rep.checks.size() == 2);
  for (const auto& chk : rep.checks) {
    CHECK(chk.cases == 29);
    CHECK(chk.solutions == 0);
    CHECK(chk.bound == "q = 2^f, 2 <= f <= 30");
  }
  CHECK_THROWS_AS(sieve_torus(4, 10), DomainError);
  CHECK_THROWS_AS(sieve_torus(5, 11), DomainError);
}

TEST_CASE("affine sieve") {
  auto rep = sieve_affine(5, 10);
  CHECK(rep.audit());
  std::set<Tuple4> frob, alive;  // (lambda, i, k, q)
  std::set<Tuple4> elem;         // (lambda, |G_B|, k, q)
  for (const auto& c : rep.candidates) {
    if (c.spec.family == Family::Elementary) {
      elem.insert({c.lambda, c.gb, c.k, c.q});
      continue;
    }
    REQUIRE(c.i.has_value());
    frob.insert({c.lambda, *c.i, c.k, c.q});
    if (c.survives()) alive.insert({c.lambda, *c.i, c.k, c.q});
  }
  CHECK(elem == std::set<Tuple4>{{7, 8, 8, 32}});
  CHECK(frob == std::set<Tuple4>{{5, 1, 8, 8}, {5, 1, 13, 13}, {6, 2, 9, 9}, {6, 3, 7, 7}, {7, 1, 17, 17},
                                 {8, 1, 19, 19}, {8, 2, 11, 11}, {10, 1, 23, 23}, {10, 2, 13, 13}});
  CHECK(alive == std::set<Tuple4>{{5, 1, 8, 8}, {6, 2, 9, 9}, {8, 2, 11, 11}, {10, 2, 13, 13}});
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].solutions == 0);
  CHECK(rep.checks[0].cases > 0);
}

TEST_CASE("subfield sieve") {
  auto psl = sieve_subfield(64, 8, 5, 0, SubfieldProj::PSL);
  REQUIRE(psl.candidates.size() == 1);
  const auto& c = psl.candidates[0];
  CHECK(std::tuple(c.q, c.k, c.lambda) == std::tuple(8ull, 6ull, 10ull));
  CHECK(c.spec.q0 == 2);
  CHECK(psl.audit());

  auto pgl = sieve_subfield(64, 8, 5, 0, SubfieldProj::PGL);
  CHECK(pgl.candidates.empty());
  std::set<std::pair<std::uint64_t, std::uint64_t>> dead;  // (g, q0)
  for (const auto& r : pgl.rejected) {
    auto pp = prime_power(r.q);
    auto p0 = prime_power(r.spec.q0);
    dead.insert({pp.f / p0.f, r.spec.q0});
  }
  CHECK(dead == std::set<std::pair<std::uint64_t, std::uint64_t>>{{2, 2}, {2, 3}});

  // no k = q0 + 1 solutions anywhere on the grid
  for (const auto& r : sieve_subfield(64, 8, 1, 0).candidates) CHECK(r.k != r.spec.q0 + 1);
  CHECK(sieve_subfield(64, 8, 11, 0).candidates.empty());
}

TEST_CASE("design identities") {
  auto a = design_identities(24, 8, 5);
  CHECK(a.b == 759);
  CHECK(a.b == 6072 / 8);
  CHECK(a.r == 253);
  CHECK(a.admissible);
  CHECK(design_identities(9, 8, 5).b == 9);
  auto c = design_identities(14, 13, 10);
  CHECK(c.b == 14);
  CHECK(c.b == 1092 / 78);
  CHECK_FALSE(design_identities(24, 8, 1).admissible);
  CHECK(binomial(24, 4) == 10626);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("completeness against a naive search") {
  // Every (q, k, lambda) with lambda_identity for some realizable block
  // stabilizer order must be found by one of the sieves.
  std::set<Tuple4> found;  // (q, k, lambda, |G_B|)
  for (const auto& rep : {sieve_exceptional(5, 10), sieve_torus(5, 10), sieve_affine(5, 10), sieve_subfield(64, 8, 5, 10)})
    for (const auto& c : rep.candidates)
      if (c.survives()) found.insert({c.q, c.k, c.lambda, c.gb});

  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 4; q <= 8192; ++q)
    if (prime_power(q)) qs.push_back(q);

  std::set<Tuple4> naive;
  for (auto q : qs) {
    const std::uint64_t n = n_of(q);
    const auto pq = prime_power(q);
    for (std::uint64_t k = 5; k <= q; ++k) {
      const unsigned __int128 top = (unsigned __int128)(k - 1) * (k - 2) * (k - 3);
      if (top > (unsigned __int128)10 * n * (q - 2) * q * q) break;
      for (std::uint64_t lambda = 5; lambda <= 10; ++lambda) {
        const unsigned __int128 den = (unsigned __int128)lambda * n * (q - 2);
        if (top % den != 0) continue;
        const std::uint64_t gxb = static_cast<std::uint64_t>(top / den);
        const std::uint64_t gb = gxb * k;
        if (!parameter_conditions(q, k, lambda, gb, gxb).all()) continue;
        bool realizable = false;
        // exceptional
        realizable |= gb == 12 || gb == 24 || gb == 60;
        // cyclic or dihedral in a torus
        for (std::uint64_t t : {(q - 1) / n, (q + 1) / n}) {
          realizable |= gxb == 1 && t % k == 0;
          realizable |= gxb == 1 && k % 2 == 0 && k / 2 >= 3 && t % (k / 2) == 0;
          realizable |= gxb == 2 && k >= 3 && t % k == 0;
        }
        // E_{q0} or E_{q0} x| C_c with q0 a power of p dividing q
        for (std::uint64_t q0 = pq.p; q0 <= q; q0 *= pq.p) {
          for (std::uint64_t c = 1; c < q0; ++c) {
            if ((q0 - 1) % c != 0 || ((q - 1) / n) % c != 0 || gb != c * q0) continue;
            realizable |= k == q0 || k == c * q0;
          }
          if (q % q0 != 0) break;
        }
        // subfield groups
        for (std::uint64_t q0 = pq.p; q0 * q0 <= q; q0 *= pq.p) {
          const std::uint64_t o = q0 * (q0 * q0 - 1);
          realizable |= gb == o / n_of(q0) || gb == o;
        }
        if (realizable) naive.insert({q, k, lambda, gb});
      }
    }
  }
  for (const auto& t : naive) {
    CAPTURE(std::get<0>(t));
    CAPTURE(std::get<1>(t));
    CAPTURE(std::get<2>(t));
    CAPTURE(std::get<3>(t));
    CHECK(found.count(t) == 1);
  }
  CHECK(naive.size() >= 15);
}

TEST_CASE("sieves are deterministic") {
  auto a = sieve_torus(5, 10), b = sieve_torus(5, 10);
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].q == b.candidates[i].q);
    CHECK(a.candidates[i].spec == b.candidates[i].spec);
  }
}
