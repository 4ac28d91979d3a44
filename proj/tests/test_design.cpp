#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "psl4/design_io.hpp"
#include "psl4/dickson.hpp"
#include "psl4/iso.hpp"
#include "psl4/sieve.hpp"
#include "psl4/verify.hpp"

using namespace psl4;

namespace {

std::vector<Point> shift0(std::vector<Point> s) {
  for (auto& x : s) --x;
  std::sort(s.begin(), s.end());
  return s;
}

const std::vector<Point> kOmega1 = shift0({1, 4, 6, 8, 17, 19, 21, 24});
const std::vector<Point> kOmega2 = shift0({2, 9, 10, 11, 13, 18, 20, 22});
const std::vector<Point> kOmega3 = shift0({3, 5, 7, 12, 14, 15, 16, 23});

Perm cycles1(std::size_t n, std::vector<std::vector<Point>> cyc) {
  for (auto& c : cyc)
    for (auto& x : c) --x;
  return Perm::from_cycles(n, cyc);
}

// D8 of PSL(2,23) generated by the three maps listed for the D8 case.
SubgroupHandle listed_d8(GroupRef G) {
  std::vector<Perm> gens{
      cycles1(24, {{1, 8}, {2, 10}, {3, 16}, {4, 24}, {5, 15}, {6, 21}, {7, 23}, {9, 20}, {11, 22}, {12, 14}, {13, 18}, {17, 19}}),
      cycles1(24, {{1, 19, 24, 6}, {2, 13, 22, 20}, {3, 12, 23, 5}, {4, 17, 8, 21}, {7, 14, 16, 15}, {9, 11, 18, 10}}),
      cycles1(24, {{1, 24}, {2, 22}, {3, 23}, {4, 8}, {5, 12}, {6, 19}, {7, 16}, {9, 18}, {10, 11}, {13, 20}, {14, 15}, {17, 21}}),
  };
  return make_subgroup(G, gens, FamilySpec::parse("D(8)"));
}

std::vector<Point> orbit_of_size(const SubgroupHandle& H, std::size_t len) {
  for (const auto& o : orbit_partition(H))
    if (o.size() == len) return o;
  FAIL("no orbit of length " << len);
  return {};
}

void same_report(const DesignReport& a, const DesignReport& b) {
  CHECK(a.is_4_design == b.is_4_design);
  CHECK(a.lambda == b.lambda);
  REQUIRE(a.lambda_profile.size() == b.lambda_profile.size());
  for (std::size_t i = 0; i < a.lambda_profile.size(); ++i) {
    CHECK(a.lambda_profile[i].T == b.lambda_profile[i].T);
    CHECK(a.lambda_profile[i].lambda == b.lambda_profile[i].lambda);
  }
}

void check_cascade(const DesignReport& r) {
  REQUIRE(r.is_4_design);
  auto d = design_identities(r.v, r.k, *r.lambda);
  CHECK(d.admissible);
  CHECK(d.b == r.b);
  CHECK(d.r == r.r);
}

}  // namespace

TEST_CASE("4-subset orbit representatives agree with brute force") {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u, 23u, 25u, 27u, 29u, 31u, 32u, 37u}) {
    CAPTURE(q);
    auto G = psl_group(q);
    FourSubsetOrbits fo(G);
    auto brute = foursubset_orbits_bruteforce(*G);
    CHECK(fo.count() == brute.size());
    std::set<std::size_t> hit;
    std::uint64_t total = 0;
    for (const auto& o : brute) {
      auto idx = fo.classify(o.T);
      CHECK(fo.reps()[idx].size == o.size);
      hit.insert(idx);
      total += o.size;
    }
    CHECK(hit.size() == brute.size());
    CHECK(total == binomial(G->v, 4));
    for (std::size_t i = 0; i < fo.count(); ++i) CHECK(fo.classify(fo.reps()[i].T) == i);
  }
  FourSubsetOrbits q8(psl_group(8));
  std::uint64_t s = 0;
  for (const auto& r : q8.reps()) s += r.size;
  CHECK(s == 126);
}

TEST_CASE("large-field orbit representatives partition the 4-subsets") {
  FourSubsetOrbits fo(psl_group(761));
  std::uint64_t s = 0;
  for (const auto& r : fo.reps()) s += r.size;
  CHECK(s == binomial(762, 4));
  CHECK(fo.count() < 1000);
  auto rng = std::mt19937(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<Point> pts;
    while (pts.size() < 4) pts.insert(static_cast<Point>(rng() % 762));
    FourSet T;
    std::copy(pts.begin(), pts.end(), T.begin());
    auto g = psl_group(761)->generators[rng() % 3];
    FourSet U{g[T[0]], g[T[1]], g[T[2]], g[T[3]]};
    CHECK(fo.classify(T) == fo.classify(U));
  }
}

TEST_CASE("D8 of PSL(2,23): omega 1 fails, omega 2 and 3 give 4-(24,8,5)") {
  auto G = psl_group(23);
  auto D = listed_d8(G);
  CHECK(D.order == 8);
  CHECK(orbit_partition(D) == std::vector<std::vector<Point>>{kOmega1, kOmega2, kOmega3});
  FourSubsetOrbits fo(G);

  auto s1 = block_orbit(G, kOmega1, D);
  auto r1 = verify_direct(s1, fo);
  CHECK_FALSE(r1.is_4_design);
  CHECK(r1.audit_ok());
  same_report(r1, verify_by_orbits(s1, fo));
  same_report(r1, verify_local(G, s1.base_block, s1.b(), fo));

  for (const auto& omega : {kOmega2, kOmega3}) {
    auto s = block_orbit(G, omega, D);
    CHECK(s.b() == 759);
    CHECK(s.b() * s.stab_order == G->order);
    auto r = verify_direct(s, fo);
    CHECK(r.is_4_design);
    CHECK(r.lambda == 5u);
    CHECK(r.flag_transitive);
    CHECK(r.audit_ok());
    check_cascade(r);
    same_report(r, verify_by_orbits(s, fo));
    same_report(r, verify_local(G, s.base_block, s.b(), fo));
  }
}

TEST_CASE("small theorem designs") {
  struct Row {
    std::uint32_t q;
    const char* spec;
    std::size_t len;
    std::uint64_t lambda, b;
  };
  for (auto r : {Row{8, "PSL(2)", 6, 10, 84}, Row{8, "ExC(8,7)", 8, 5, 9}, Row{7, "D(6)", 6, 6, 28},
                 Row{9, "ExC(9,4)", 9, 6, 10}, Row{8, "D(14)", 7, 10, 36}, Row{11, "ExC(11,5)", 11, 8, 12},
                 Row{13, "ExC(13,6)", 13, 10, 14}, Row{8, "D(6)", 6, 10, 84}}) {
    CAPTURE(r.q);
    CAPTURE(r.spec);
    auto G = psl_group(r.q);
    auto H = build(G, FamilySpec::parse(r.spec));
    auto sys = block_orbit(G, orbit_of_size(H, r.len), H);
    FourSubsetOrbits fo(G);
    auto d = verify_direct(sys, fo);
    CHECK(d.is_4_design);
    CHECK(d.lambda == r.lambda);
    CHECK(d.b == r.b);
    CHECK(d.flag_transitive);
    CHECK(G->order / sys.stab_order == r.b);
    check_cascade(d);
    same_report(d, verify_by_orbits(sys, fo, {.threads = 2}));
  }
}

TEST_CASE("counting audit catches a dropped block") {
  auto G = psl_group(23);
  FourSubsetOrbits fo(G);
  auto sys = block_orbit(G, kOmega2, listed_d8(G));
  auto r = verify_by_orbits(sys, fo);
  REQUIRE(r.audit_ok());
  // drop a block that contains a representative
  BlockSet fewer(sys.v());
  bool dropped = false;
  for (std::size_t i = 0; i < sys.b(); ++i) {
    const auto& T = fo.reps()[0].T;
    if (!dropped && sys.blocks.contains(i, T[0]) && sys.blocks.contains(i, T[1]) && sys.blocks.contains(i, T[2]) &&
        sys.blocks.contains(i, T[3])) {
      dropped = true;
      continue;
    }
    fewer.push_back(sys.blocks.block(i));
  }
  REQUIRE(dropped);
  auto broken = sys;
  broken.blocks = fewer;
  auto rb = verify_by_orbits(broken, fo);
  CHECK_FALSE(rb.audit_ok());
  CHECK_FALSE(rb.is_4_design);
}

TEST_CASE("flag transitivity") {
  auto G = psl_group(23);
  auto D = listed_d8(G);
  auto sys = block_orbit(G, kOmega2, D);
  CHECK(flag_transitive_check(sys));
  std::vector<Point> two = kOmega1;
  two.insert(two.end(), kOmega2.begin(), kOmega2.end());
  auto uni = block_orbit(G, two, D);
  CHECK_FALSE(flag_transitive_check(uni));
  auto bare = block_orbit(G, kOmega2);
  CHECK(flag_transitive_check(bare));
}

TEST_CASE("block orbit details") {
  auto G = psl_group(23);
  auto a = block_orbit(G, kOmega2);
  std::vector<Perm> gens(G->generators.rbegin(), G->generators.rend());
  gens.push_back(G->generators[0] * G->generators[1]);
  auto b = block_orbit_with(G, gens, kOmega2);
  CHECK(DesignFile::from_blocks(a.blocks, 8, {}) == DesignFile::from_blocks(b.blocks, 8, {}));

  std::vector<Point> all(23);
  std::iota(all.begin(), all.end(), Point{0});
  CHECK_THROWS_AS(block_orbit(G, {}), DomainError);
  all.push_back(23);
  CHECK_THROWS_AS(block_orbit(G, all), DomainError);
  CHECK_THROWS_AS(block_orbit(G, kOmega2, {}, OrbitBudget{1000}), ResourceError);
  CHECK_THROWS_AS(block_orbit(G, kOmega2, build_cyclic(G, 3)), DomainError);
  try {
    block_orbit(psl_group(761), {0, 1, 2, 3, 5}, {}, OrbitBudget{1 << 20});
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.partial() == 0);
  }
}

TEST_CASE("design files") {
  auto G = psl_group(8);
  auto H = build(G, FamilySpec::parse("PSL(2)"));
  auto sys = block_orbit(G, orbit_of_size(H, 6), H);
  auto d = DesignFile::from_blocks(sys.blocks, 6, 10);
  std::stringstream ss;
  d.write(ss);
  auto text = ss.str();
  CHECK(text.rfind("4 9 6 84 10\n", 0) == 0);
  auto back = DesignFile::parse(ss);
  CHECK(back == d);
  for (const char* bad : {"", "4 9 6\n", "4 9 3 1 -1\n0 1 2 3\n", "4 9 3 1 -1\n0 2 1\n", "4 9 3 2 -1\n0 1 3\n0 1 2\n",
                          "4 9 3 1 -1\n0 1 9\n", "4 9 3 1 -1\n0 1 2\nextra\n", "4 9 3 2 -1\n0 1 2\n"}) {
    std::stringstream in(bad);
    CHECK_THROWS_AS(DesignFile::parse(in), DomainError);
  }
}

TEST_CASE("isomorphism") {
  auto G = psl_group(23);
  auto D = listed_d8(G);
  auto d2 = DesignFile::from_blocks(block_orbit(G, kOmega2, D).blocks, 8, 5);
  auto d3 = DesignFile::from_blocks(block_orbit(G, kOmega3, D).blocks, 8, 5);
  CHECK(d2 != d3);
  auto res = iso_test(d2, d3);
  REQUIRE(res.isomorphic);
  CHECK(is_isomorphism(d2, d3, res.map));

  auto self = iso_test(d2, d2);
  REQUIRE(self.isomorphic);
  for (std::size_t x = 0; x < self.map.size(); ++x) CHECK(self.map[x] == x);

  // the two 4-(9,6,10) constructions
  auto G8 = psl_group(8);
  auto P = build(G8, FamilySpec::parse("PSL(2)"));
  auto E = build(G8, FamilySpec::parse("D(6)"));
  auto a = DesignFile::from_blocks(block_orbit(G8, orbit_of_size(P, 6), P).blocks, 6, 10);
  auto b = DesignFile::from_blocks(block_orbit(G8, orbit_of_size(E, 6), E).blocks, 6, 10);
  auto ab = iso_test(a, b);
  CHECK(ab.isomorphic);

  // change one block: no longer isomorphic
  auto c = d2;
  c.blocks[0] = {0, 1, 2, 3, 4, 5, 6, 7};
  c.canonicalize();
  CHECK(c.blocks != d2.blocks);
  CHECK_FALSE(iso_test(d2, c).isomorphic);
  CHECK_THROWS_AS(iso_test(d2, a), DomainError);
}

TEST_CASE("random block systems satisfy the counting identities") {
  std::vector<std::uint32_t> qs;
  for (std::uint32_t q = 4; q <= 32; ++q)
    if (prime_power(q)) qs.push_back(q);
  std::mt19937 rng(2024);
  int done = 0, designs = 0;
  while (done < 200) {
    const auto q = qs[rng() % qs.size()];
    auto G = psl_group(q);
    const std::size_t v = G->v;
    std::vector<Point> B;
    std::optional<SubgroupHandle> H;
    if (rng() % 2) {
      auto cls = classes_of_order(G, 2 + rng() % 30);
      if (cls.empty()) continue;
      H = cls[rng() % cls.size()];
      auto parts = orbit_partition(*H);
      for (const auto& o : parts) CHECK(H->order % o.size() == 0);
      B = parts[rng() % parts.size()];
      if (B.size() < 4 || B.size() >= v) continue;
    } else {
      const std::size_t k = 4 + rng() % std::min<std::size_t>(7, v - 4);
      std::set<Point> pts;
      while (pts.size() < k) pts.insert(static_cast<Point>(rng() % v));
      B.assign(pts.begin(), pts.end());
    }
    FourSubsetOrbits fo(G);
    std::uint64_t total = 0;
    for (const auto& r : fo.reps()) total += r.size;
    CHECK(total == binomial(v, 4));
    auto sys = block_orbit(G, B, H);
    CHECK(sys.b() * sys.stab_order == G->order);
    auto rep = verify_by_orbits(sys, fo);
    CAPTURE(q);
    CHECK(rep.audit_ok());
    same_report(rep, verify_local(G, sys.base_block, sys.b(), fo));
    CHECK(count_lambda_serial(sys.blocks, fo.reps()) == count_lambda(sys.blocks, fo.reps(), 3));
    if (done % 10 == 0) same_report(rep, verify_direct(sys, fo));
    designs += rep.is_4_design;
    ++done;
  }
  MESSAGE("random systems that are 4-designs: " << designs);
}
