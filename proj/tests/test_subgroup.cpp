#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "psl4/dickson.hpp"

using namespace psl4;

namespace {

// 1-based cycles to a 0-based Perm.
Perm cycles1(std::size_t n, std::vector<std::vector<Point>> cyc) {
  for (auto& c : cyc)
    for (auto& x : c) --x;
  return Perm::from_cycles(n, cyc);
}

std::vector<Point> shift0(std::vector<Point> s) {
  for (auto& x : s) --x;
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<Perm> setwise_stabilizer(const std::vector<Perm>& elems, const std::vector<Point>& set) {
  std::vector<Perm> out;
  for (const auto& g : elems) {
    std::vector<Point> img;
    for (auto x : set) img.push_back(g[x]);
    std::sort(img.begin(), img.end());
    if (img == set) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("family spec strings") {
  auto d = FamilySpec::parse("D(2c=8,sign=+)");
  CHECK(d.family == Family::Dihedral);
  CHECK(d.c == 4);
  CHECK(d.sign == TorusSign::Nonsplit);
  CHECK(d.to_string() == "D(2c=8,sign=+)");
  CHECK(FamilySpec::parse("D(8)").c == 4);
  CHECK(FamilySpec::parse("C(8)").to_string() == "C(c=8)");
  auto f = FamilySpec::parse("ExC(13,6)");
  CHECK(f.q0 == 13);
  CHECK(f.c == 6);
  CHECK(FamilySpec::parse("ExC(q0=9,c=4)").to_string() == "ExC(q0=9,c=4)");
  auto s = FamilySpec::parse("S4[class=2]");
  CHECK(s.family == Family::S4);
  CHECK(s.class_index == 2u);
  CHECK(s.to_string() == "S4[class=2]");
  CHECK(FamilySpec::parse("PSL(2)").predicted_order() == 6);
  CHECK(FamilySpec::parse("PGL(3)").predicted_order() == 24);
  CHECK(FamilySpec::parse("E(q0=8)").predicted_order() == 8);
  for (const char* bad : {"X(3)", "D(7)", "C()", "ExC(9)", "S4[class=0]", "A4(3)", "C(8", "C(c=8,sign=*)"})
    CHECK_THROWS_AS(FamilySpec::parse(bad), DomainError);
}

TEST_CASE("listed generators for PSL(2,23)") {
  std::vector<Perm> gens{
      cycles1(24, {{1, 8}, {2, 10}, {3, 16}, {4, 24}, {5, 15}, {6, 21}, {7, 23}, {9, 20}, {11, 22}, {12, 14}, {13, 18}, {17, 19}}),
      cycles1(24, {{1, 19, 24, 6}, {2, 13, 22, 20}, {3, 12, 23, 5}, {4, 17, 8, 21}, {7, 14, 16, 15}, {9, 11, 18, 10}}),
      cycles1(24, {{1, 24}, {2, 22}, {3, 23}, {4, 8}, {5, 12}, {6, 19}, {7, 16}, {9, 18}, {10, 11}, {13, 20}, {14, 15}, {17, 21}}),
  };
  // these three generate the block stabilizer itself, a D8
  auto elems = closure(gens, 24);
  REQUIRE(elems.has_value());
  CHECK(elems->size() == 8);
  std::map<std::uint64_t, int> orders;
  for (const auto& g : *elems) ++orders[g.order()];
  CHECK(orders == std::map<std::uint64_t, int>{{1, 1}, {2, 5}, {4, 2}});
  auto O1 = shift0({1, 4, 6, 8, 17, 19, 21, 24});
  auto O2 = shift0({2, 9, 10, 11, 13, 18, 20, 22});
  auto O3 = shift0({3, 5, 7, 12, 14, 15, 16, 23});
  CHECK(orbits(gens, 24) == std::vector<std::vector<Point>>{O1, O2, O3});

  // our D8 has the same orbit shape
  auto G = psl_group(23);
  auto D = build_dihedral(G, 4);
  CHECK(orbit_lengths(D) == std::vector<std::size_t>{8, 8, 8});
  CHECK(dihedral_classes(G, 4).size() == 1);
}

TEST_CASE("listed generators for PSL(2,8)") {
  std::vector<Perm> gens{
      cycles1(9, {{1, 8}, {2, 4}, {3, 7}, {5, 6}}),
      cycles1(9, {{2, 7}, {3, 6}, {4, 5}, {8, 9}}),
      cycles1(9, {{1, 2, 3, 4, 5, 6, 7}}),
  };
  auto elems = closure(gens, 9);
  REQUIRE(elems.has_value());
  CHECK(elems->size() == 504);
  auto O1 = shift0({4, 6, 8});
  auto stab = setwise_stabilizer(*elems, O1);
  CHECK(stab.size() == 6);
  CHECK(orbits(stab, 9) == std::vector<std::vector<Point>>{shift0({1, 2, 3, 5, 7, 9}), O1});
  auto sub = build_subfield(psl_group(8), 2, Family::PSLSub);
  CHECK(sub.order == 6);
  CHECK(orbit_lengths(sub) == std::vector<std::size_t>{3, 6});
}

TEST_CASE("point stabilizers") {
  CHECK(point_stabilizer(psl_group(761), 5).order == 289180);
  CHECK(point_stabilizer(psl_group(512), 0).order == 261632);
  auto G = psl_group(8);
  for (Point x = 0; x < 9; ++x) {
    auto B = point_stabilizer(G, x);
    CHECK(B.order == 56);
    for (const auto& g : B.generators) CHECK(g[x] == x);
    CHECK(orbit_lengths(B) == std::vector<std::size_t>{1, 8});
  }
}

TEST_CASE("4-set stabilizers give the orbit sizes") {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    auto G = psl_group(q);
    const std::size_t v = G->v;
    auto elems = closure(G->generators, v);
    REQUIRE(elems.has_value());
    std::set<std::array<Point, 4>> done;
    std::uint64_t total = 0, expected = std::uint64_t{v} * (v - 1) * (v - 2) * (v - 3) / 24;
    for (Point a = 0; a < v; ++a)
      for (Point b = a + 1; b < v; ++b)
        for (Point c = b + 1; c < v; ++c)
          for (Point d = c + 1; d < v; ++d) {
            std::array<Point, 4> T{a, b, c, d};
            if (done.count(T)) continue;
            std::set<std::array<Point, 4>> orbit;
            for (const auto& g : *elems) {
              std::array<Point, 4> img{g[a], g[b], g[c], g[d]};
              std::sort(img.begin(), img.end());
              orbit.insert(img);
            }
            done.insert(orbit.begin(), orbit.end());
            auto S = setwise_stabilizer_of_4set(G, T);
            CHECK(G->order / S.order == orbit.size());
            total += orbit.size();
            auto maps = stabilizer_maps_of_4set(G->field, T);
            for (const auto& m1 : maps)
              for (const auto& m2 : maps) CHECK(std::find(maps.begin(), maps.end(), m1 * m2) != maps.end());
          }
    CHECK(total == expected);
  }
  CHECK_THROWS_AS(stabilizer_maps_of_4set(Field::make(7, 1), {0, 1, 1, 2}), DomainError);
}

TEST_CASE("conjugacy test") {
  auto G = psl_group(17);
  auto A4 = build_exceptional(G, Family::A4);
  REQUIRE(A4.size() == 2);
  CHECK(orbit_lengths(A4[0]) == std::vector<std::size_t>{6, 12});
  CHECK(orbit_lengths(A4[1]) == std::vector<std::size_t>{6, 12});
  CHECK_FALSE(conjugacy_test(A4[0], A4[1]).has_value());
  auto g = conjugacy_test(A4[0], A4[1], true);
  REQUIRE(g.has_value());
  CHECK_FALSE(G->chain.contains(*g));
  auto self = conjugacy_test(A4[0], A4[0]);
  REQUIRE(self.has_value());

  // conjugates of D8 in PSL(2,23) are found again
  auto H = psl_group(23);
  auto D = build_dihedral(H, 4);
  auto x = H->generators[0] * H->generators[2] * H->generators[1];
  std::vector<Perm> cg;
  for (const auto& h : D.generators) cg.push_back(x.inverse() * h * x);
  auto D2 = make_subgroup(H, cg, D.family);
  auto t = conjugacy_test(D, D2);
  REQUIRE(t.has_value());
  CHECK(H->chain.contains(*t));
  std::vector<Perm> check;
  for (const auto& h : D.generators) check.push_back(t->inverse() * h * *t);
  auto e2 = elements(D2);
  for (const auto& c : check) CHECK(std::find(e2.begin(), e2.end(), c) != e2.end());

  // invariants separate non-isomorphic groups
  CHECK_FALSE(conjugacy_test(build_cyclic(H, 12), build_dihedral(H, 6)).has_value());
  CHECK_THROWS_AS(conjugacy_test(point_stabilizer(H, 0), point_stabilizer(H, 1)), UnsupportedError);
}
