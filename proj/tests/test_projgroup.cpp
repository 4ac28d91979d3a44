#include "doctest.h"

#include <random>
#include <set>

#include "psl4/projgroup.hpp"

using namespace psl4;

TEST_CASE("projective line") {
  CHECK(proj_line(Field::make(2, 2)).size() == 5);
  auto L = proj_line(Field::make(2, 3));
  CHECK(L.size() == 9);
  CHECK(L.back().infinite);
  CHECK(L[3].value.index() == 3);
  CHECK(proj_line(Field::make(761, 1)).size() == 762);
}

TEST_CASE("moebius maps as permutations") {
  auto F = Field::make(7, 1);
  CHECK(moebius_to_perm(MoebiusMap::identity(F)).is_identity());
  auto inv = MoebiusMap(F, F.zero(), -F.one(), F.one(), F.zero());
  auto p = moebius_to_perm(inv);
  CHECK(p[0] == 7);
  CHECK(p[7] == 0);
  CHECK(p[1] == 6);  // -1/1
  CHECK(p[3] == 2);  // -1/3 = -5 = 2
  auto tr = moebius_to_perm(MoebiusMap(F, F.one(), F.one(), F.zero(), F.one()));
  CHECK(tr[7] == 7);
  CHECK(tr.order() == 7);
  CHECK_THROWS_AS(MoebiusMap(F, F.one(), F.one(), F.one(), F.one()), DomainError);
}

TEST_CASE("composition matches permutation composition") {
  auto F = Field::make(3, 2);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
  for (int i = 0; i < 200; ++i) {
    auto rnd = [&] {
      while (true) {
        try {
          return MoebiusMap(F, F.element(pick(rng)), F.element(pick(rng)), F.element(pick(rng)), F.element(pick(rng)));
        } catch (const DomainError&) {
        }
      }
    };
    auto m1 = rnd(), m2 = rnd();
    CHECK(moebius_to_perm(m1 * m2) == moebius_to_perm(m1) * moebius_to_perm(m2));
    CHECK((m1 * m1.inverse()).is_identity());
    CHECK(perm_to_moebius(F, moebius_to_perm(m1)) == m1);
  }
}

TEST_CASE("PSL(2,q) orders") {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 23u, 25u, 27u, 31u, 32u}) {
    auto G = psl_group(q);
    std::uint64_t n = q % 2 ? 2 : 1;
    CHECK(G->order == std::uint64_t{q} * (q * q - 1) / n);
    CHECK(G->chain.order() == G->order);
    CHECK(G->chain.base() == std::vector<Point>{0, 1, 2});
  }
  CHECK(psl_group(8)->order == 504);
  CHECK(psl_group(23)->order == 6072);
  CHECK_THROWS_AS(psl_group(3), DomainError);
  CHECK_THROWS_AS(psl_group(12), DomainError);
}

TEST_CASE("chain order equals enumeration for q <= 32") {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u, 23u, 25u, 27u, 29u, 31u, 32u}) {
    auto G = psl_group(q);
    auto elems = closure(G->generators, G->v, 100000);
    REQUIRE(elems.has_value());
    CHECK(elems->size() == G->order);
  }
}

TEST_CASE("PSL(2,761) and PSL(2,512)") {
  auto G = psl_group(761);
  CHECK(G->order == 220355160ull);
  CHECK(G->order / G->v == 289180ull);
  CHECK(G->order / 24 == 9181465ull);
  auto H = psl_group(512);
  CHECK(H->order == 134217216ull);
  CHECK(H->order / 18 == 7456512ull);
  CHECK(G->chain.contains(Perm::identity(762)));
}

TEST_CASE("transporters are unique and realize the assignment") {
  for (std::uint32_t q : {7u, 8u, 9u, 25u}) {
    auto G = psl_group(q);
    const auto& F = G->field;
    std::mt19937 rng(q);
    std::uniform_int_distribution<std::uint32_t> pick(0, q);
    auto triple = [&] {
      std::array<Point, 3> t{};
      do {
        for (auto& x : t) x = static_cast<Point>(pick(rng));
      } while (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]);
      return t;
    };
    for (int i = 0; i < 250; ++i) {
      auto s = triple(), d = triple();
      auto m = three_point_transporter(F, s, d);
      for (int j = 0; j < 3; ++j) CHECK(m(s[j]) == d[j]);
      // any map agreeing on three points is the same map
      auto m2 = three_point_transporter(F, {s[1], s[2], s[0]}, {d[1], d[2], d[0]});
      CHECK(m2 == m);
    }
    CHECK(three_point_transporter(F, {0, 1, 2}, {0, 1, 2}).is_identity());
  }
  auto F = Field::make(7, 1);
  auto m = three_point_transporter(F, {0, 1, 7}, {7, 1, 0});
  CHECK(m == MoebiusMap(F, F.zero(), F.one(), F.one(), F.zero()));
  CHECK_THROWS_AS(three_point_transporter(F, {0, 0, 1}, {0, 1, 2}), DomainError);
}

TEST_CASE("determinant test splits PGL in half for odd q") {
  for (std::uint32_t q : {9u, 11u, 8u}) {
    auto F = psl_group(q)->field;
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    int total = 0, inside = 0;
    while (total < 1000) {
      try {
        MoebiusMap m(F, F.element(pick(rng)), F.element(pick(rng)), F.element(pick(rng)), F.element(pick(rng)));
        ++total;
        inside += in_psl(m) ? 1 : 0;
      } catch (const DomainError&) {
      }
    }
    if (q % 2 == 0) {
      CHECK(inside == 1000);
    } else {
      // 5 sigma around 500
      CHECK(inside > 420);
      CHECK(inside < 580);
      CHECK_FALSE(in_psl(MoebiusMap(F, F.generator(), F.zero(), F.zero(), F.one())));
    }
  }
}

TEST_CASE("PSL(2,q) is 2-transitive") {
  for (std::uint32_t q : {5u, 8u, 13u, 32u}) {
    auto G = psl_group(q);
    const std::size_t v = G->v;
    std::set<std::pair<Point, Point>> seen{{0, 1}};
    std::vector<std::pair<Point, Point>> queue{{0, 1}};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& g : G->generators) {
        std::pair<Point, Point> y{g[queue[i].first], g[queue[i].second]};
        if (seen.insert(y).second) queue.push_back(y);
      }
    CHECK(seen.size() == v * (v - 1));
  }
}
