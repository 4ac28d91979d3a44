#include "psl4/foursets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "psl4/subgroup.hpp"

namespace psl4 {

namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Element of PSL(2,q) sending x to infinity and y to 0.
MoebiusMap pair_transporter(const GroupContext& ctx, Point x, Point y) {
  const Field& F = ctx.field;
  const Point inf = ctx.infinity();
  auto val = [&](Point p) { return F.element(p); };
  const auto one = F.one(), zero = F.zero();
  MoebiusMap m = x == inf   ? MoebiusMap(F, one, -val(y), zero, one)
                 : y == inf ? MoebiusMap(F, zero, one, one, -val(x))
                            : MoebiusMap(F, one, -val(y), one, -val(x));
  if (!in_psl(m)) m = m * MoebiusMap(F, F.generator(), zero, zero, one);
  return m;
}

std::uint64_t choose4(std::uint64_t n) { return n * (n - 1) * (n - 2) * (n - 3) / 24; }

}  // namespace

std::size_t FourSubsetOrbits::pair_index(Point a, Point b) const {
  if (a > b) std::swap(a, b);
  return std::size_t{a} * ctx_->v + b;
}

FourSet FourSubsetOrbits::normalize(FourSet S, int i, int j) const {
  auto h = pair_transporter(*ctx_, S[i], S[j]);
  FourSet out{};
  int t = 0;
  for (int r = 0; r < 4; ++r)
    if (r != i && r != j) out[t++] = h(S[r]);
  out[2] = 0;
  out[3] = ctx_->infinity();
  std::sort(out.begin(), out.end());
  return out;
}

FourSubsetOrbits::FourSubsetOrbits(GroupRef ctx) : ctx_(std::move(ctx)) {
  const auto& G = *ctx_;
  const std::size_t v = G.v;
  if (v < 5) throw DomainError("4-subset orbits need v >= 5");
  const Point inf = G.infinity();
  const Field& F = G.field;
  const MoebiusMap scale(F, G.torus_multiplier(), F.zero(), F.zero(), F.one());
  const MoebiusMap swap(F, F.zero(), -F.one(), F.one(), F.zero());

  UnionFind uf(v * v);
  // completions {inf, 0, a, b} with 1 <= a < b < q
  for (Point a = 1; a < inf; ++a)
    for (Point b = a + 1; b < inf; ++b) {
      const auto self = static_cast<std::int32_t>(pair_index(a, b));
      uf.unite(self, static_cast<std::int32_t>(pair_index(scale(a), scale(b))));
      uf.unite(self, static_cast<std::int32_t>(pair_index(swap(a), swap(b))));
      const FourSet S{0, a, b, inf};
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          if (i == 0 && j == 3) continue;  // already {0, inf}
          auto N = normalize(S, i, j);
          uf.unite(self, static_cast<std::int32_t>(pair_index(N[1], N[2])));
        }
    }

  class_of_pair_.assign(v * v, -1);
  std::vector<std::int32_t> rep_of_root(v * v, -1);
  std::vector<std::uint64_t> members;
  for (Point a = 1; a < inf; ++a)
    for (Point b = a + 1; b < inf; ++b) {
      const auto idx = pair_index(a, b);
      const auto root = uf.find(static_cast<std::int32_t>(idx));
      if (rep_of_root[root] < 0) {
        rep_of_root[root] = static_cast<std::int32_t>(reps_.size());
        reps_.push_back({FourSet{0, a, b, inf}, 0});
        members.push_back(0);
      }
      class_of_pair_[idx] = rep_of_root[root];
      ++members[rep_of_root[root]];
    }

  // each 4-set has 6 pairs and G is transitive on the C(v,2) pairs
  const std::uint64_t pairs = std::uint64_t{v} * (v - 1) / 2;
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < reps_.size(); ++r) {
    auto& rep = reps_[r];
    rep.size = G.order / stabilizer_maps_of_4set(F, rep.T).size();
    if (rep.size * 6 != members[r] * pairs) throw std::logic_error("4-subset orbit size disagrees with pair count");
    total += rep.size;
  }
  if (total != choose4(v)) throw std::logic_error("4-subset orbits do not partition the 4-subsets");
}

std::size_t FourSubsetOrbits::classify(FourSet S) const {
  for (int i = 0; i < 4; ++i) {
    if (S[i] >= ctx_->v) throw DomainError("point out of range");
    for (int j = i + 1; j < 4; ++j)
      if (S[i] == S[j]) throw DomainError("4-set has repeated points");
  }
  auto N = normalize(S, 0, 1);
  return static_cast<std::size_t>(class_of_pair_[pair_index(N[1], N[2])]);
}

std::vector<OrbitRep> foursubset_orbits_bruteforce(const GroupContext& ctx) {
  const std::size_t v = ctx.v;
  if (v > 40) throw UnsupportedError("brute-force 4-subset orbits limited to v <= 40");
  auto code = [v](FourSet s) {
    std::sort(s.begin(), s.end());
    return ((std::size_t{s[0]} * v + s[1]) * v + s[2]) * v + s[3];
  };
  std::vector<char> seen(v * v * v * v, 0);
  std::vector<OrbitRep> out;
  for (Point a = 0; a < v; ++a)
    for (Point b = a + 1; b < v; ++b)
      for (Point c = b + 1; c < v; ++c)
        for (Point d = c + 1; d < v; ++d) {
          FourSet T{a, b, c, d};
          if (seen[code(T)]) continue;
          std::vector<FourSet> queue{T};
          seen[code(T)] = 1;
          for (std::size_t i = 0; i < queue.size(); ++i)
            for (const auto& g : ctx.generators) {
              FourSet img{g[queue[i][0]], g[queue[i][1]], g[queue[i][2]], g[queue[i][3]]};
              std::sort(img.begin(), img.end());
              if (!seen[code(img)]) {
                seen[code(img)] = 1;
                queue.push_back(img);
              }
            }
          out.push_back({T, queue.size()});
        }
  return out;
}

}  // namespace psl4
