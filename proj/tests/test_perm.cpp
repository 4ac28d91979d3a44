#include "doctest.h"

#include <numeric>
#include <random>

#include "psl4/permgroup.hpp"

using namespace psl4;

namespace {

Perm random_perm(std::size_t n, std::mt19937& rng) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(std::move(img));
}

}  // namespace

TEST_CASE("perm basics") {
  auto a = Perm::from_cycles(5, {{0, 1, 2}});
  auto b = Perm::from_cycles(5, {{2, 3}});
  // left to right: a first, then b
  CHECK((a * b)[1] == 3);
  CHECK((b * a)[1] == 2);
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.order() == 3);
  CHECK((a * b).order() == 4);
  CHECK(a.pow(3).is_identity());
  CHECK(a.pow(-1) == a.inverse());
  CHECK(a.first_moved() == 0);
  CHECK(Perm::identity(5).first_moved() == 5);
  CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0, 1}), DomainError);
  CHECK_THROWS_AS(Perm::from_cycles(3, {{0, 1}, {1, 2}}), DomainError);
}

TEST_CASE("closure") {
  auto c7 = Perm::from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}});
  std::vector<Perm> gens{c7};
  CHECK(closure(gens, 7)->size() == 7);
  CHECK(closure(std::vector<Perm>{}, 7)->size() == 1);
  std::vector<Perm> s6{Perm::from_cycles(6, {{0, 1}}), Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}})};
  CHECK(closure(s6, 6)->size() == 720);
  CHECK_FALSE(closure(s6, 6, 100).has_value());
}

TEST_CASE("orbits") {
  std::vector<Perm> gens{Perm::from_cycles(8, {{0, 1}, {2, 3, 4}})};
  auto orbs = orbits(gens, 8);
  CHECK(orbs.size() == 5);
  CHECK(orbs[0] == std::vector<Point>{0, 1});
  CHECK(orbs[1] == std::vector<Point>{2, 3, 4});
}

TEST_CASE("stabilizer chain agrees with enumeration on random groups") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 4 + trial % 5;
    std::size_t ngens = 1 + trial % 3;
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < ngens; ++i) {
      auto p = random_perm(n, rng);
      // keep some groups small by squaring
      if (trial % 4 == 0) p = p * p;
      gens.push_back(p);
    }
    auto elems = closure(gens, n, 100000);
    REQUIRE(elems.has_value());
    PermGroup G(n, gens);
    CHECK(G.order() == elems->size());
    for (const auto& e : *elems) CHECK(G.contains(e));
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    if (elems->size() < fact) {
      // some permutation lies outside
      std::size_t outside = 0;
      for (int k = 0; k < 50; ++k) outside += G.contains(random_perm(n, rng)) ? 0 : 1;
      CHECK(outside > 0);
    }
  }
}

TEST_CASE("chain on a large symmetric group") {
  std::vector<Perm> gens{Perm::from_cycles(30, {{0, 1}})};
  std::vector<Point> cyc(30);
  std::iota(cyc.begin(), cyc.end(), Point{0});
  gens.push_back(Perm::from_cycles(30, {cyc}));
  // |S_20| fits in 64 bits, |S_30| does not
  CHECK_THROWS_AS(PermGroup(30, gens).order(), UnsupportedError);
  std::vector<Point> c20(20);
  std::iota(c20.begin(), c20.end(), Point{0});
  PermGroup S20(20, {Perm::from_cycles(20, {{0, 1}}), Perm::from_cycles(20, {c20})});
  CHECK(S20.order() == 2432902008176640000ull);
  CHECK(S20.base().front() == 0);
}
