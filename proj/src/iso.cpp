#include "psl4/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace psl4 {

namespace {

using Colours = std::vector<int>;

struct Side {
  const DesignFile& D;
  std::vector<std::vector<std::uint32_t>> blocks_of;  // point -> incident blocks

  explicit Side(const DesignFile& d) : D(d), blocks_of(d.v) {
    for (std::uint32_t i = 0; i < d.blocks.size(); ++i)
      for (auto x : d.blocks[i]) blocks_of[x].push_back(i);
  }
};

int colour_count(const Colours& c) {
  auto s = c;
  std::sort(s.begin(), s.end());
  return static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
}

// Renames signatures jointly; false when the two sides' histograms differ.
bool rename(const std::vector<std::vector<int>>& sa, const std::vector<std::vector<int>>& sb, Colours& ca,
            Colours& cb) {
  std::map<std::vector<int>, int> ids;
  for (const auto& s : sa) ids.emplace(s, 0);
  for (const auto& s : sb) ids.emplace(s, 0);
  int next = 0;
  for (auto& [sig, id] : ids) id = next++;
  ca.resize(sa.size());
  cb.resize(sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) ca[i] = ids[sa[i]];
  for (std::size_t i = 0; i < sb.size(); ++i) cb[i] = ids[sb[i]];
  auto ha = ca, hb = cb;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  return ha == hb;
}

class Search {
 public:
  Search(const DesignFile& A, const DesignFile& B, std::uint64_t limit) : a_(A), b_(B), limit_(limit) {}

  std::uint64_t nodes() const { return nodes_; }

  bool run(Colours ca, Colours cb, std::vector<Point>& out) {
    if (++nodes_ > limit_) throw UnsupportedError("isomorphism search exceeded its node limit");
    if (!refine(ca, cb)) return false;
    std::map<int, int> sizes;
    for (int c : ca) ++sizes[c];
    int target = -1, best = 0;
    for (auto [c, n] : sizes)
      if (n > 1 && (target < 0 || n < best)) target = c, best = n;
    const std::size_t v = ca.size();
    if (target < 0) {
      std::vector<Point> map(v);
      std::vector<Point> where(v);
      for (std::size_t y = 0; y < v; ++y) where[cb[y]] = static_cast<Point>(y);
      for (std::size_t x = 0; x < v; ++x) map[x] = where[ca[x]];
      if (!is_isomorphism(a_.D, b_.D, map)) return false;
      out = std::move(map);
      return true;
    }
    const auto x = static_cast<std::size_t>(std::find(ca.begin(), ca.end(), target) - ca.begin());
    const int fresh = *std::max_element(ca.begin(), ca.end()) + 1;
    for (std::size_t y = 0; y < v; ++y) {
      if (cb[y] != target) continue;
      auto ca2 = ca, cb2 = cb;
      ca2[x] = cb2[y] = fresh;
      if (run(std::move(ca2), std::move(cb2), out)) return true;
    }
    return false;
  }

 private:
  bool refine(Colours& ca, Colours& cb) {
    int count = colour_count(ca);
    while (true) {
      std::vector<std::vector<int>> ba, bb;
      auto block_sigs = [](const DesignFile& D, const Colours& c, std::vector<std::vector<int>>& out) {
        out.clear();
        for (const auto& blk : D.blocks) {
          std::vector<int> s;
          for (auto x : blk) s.push_back(c[x]);
          std::sort(s.begin(), s.end());
          out.push_back(std::move(s));
        }
      };
      block_sigs(a_.D, ca, ba);
      block_sigs(b_.D, cb, bb);
      Colours blka, blkb;
      if (!rename(ba, bb, blka, blkb)) return false;

      auto point_sigs = [](const Side& s, const Colours& c, const Colours& blk) {
        std::vector<std::vector<int>> out;
        for (std::size_t x = 0; x < c.size(); ++x) {
          std::vector<int> sig;
          for (auto i : s.blocks_of[x]) sig.push_back(blk[i]);
          std::sort(sig.begin(), sig.end());
          sig.insert(sig.begin(), c[x]);
          out.push_back(std::move(sig));
        }
        return out;
      };
      if (!rename(point_sigs(a_, ca, blka), point_sigs(b_, cb, blkb), ca, cb)) return false;
      const int now = colour_count(ca);
      if (now == count) return true;
      count = now;
    }
  }

  Side a_, b_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

bool is_isomorphism(const DesignFile& A, const DesignFile& B, const std::vector<Point>& map) {
  if (A.v != B.v || A.k != B.k || A.b() != B.b() || map.size() != A.v) return false;
  std::vector<char> hit(B.v, 0);
  for (auto y : map) {
    if (y >= B.v || hit[y]) return false;
    hit[y] = 1;
  }
  auto target = B.blocks;
  for (auto& blk : target) std::sort(blk.begin(), blk.end());
  std::sort(target.begin(), target.end());
  std::vector<std::vector<Point>> image;
  image.reserve(A.blocks.size());
  for (const auto& blk : A.blocks) {
    std::vector<Point> img;
    for (auto x : blk) img.push_back(map[x]);
    std::sort(img.begin(), img.end());
    image.push_back(std::move(img));
  }
  std::sort(image.begin(), image.end());
  return image == target;
}

IsoResult iso_test(const DesignFile& A, const DesignFile& B, std::uint64_t node_limit) {
  if (A.v != B.v || A.k != B.k || A.b() != B.b()) throw DomainError("iso_test: designs have different (v, k, b)");
  if (A.v > 64) throw UnsupportedError("iso_test: limited to v <= 64");
  IsoResult res;
  std::vector<Point> id(A.v);
  std::iota(id.begin(), id.end(), Point{0});
  if (is_isomorphism(A, B, id)) {
    res.isomorphic = true;
    res.map = std::move(id);
    return res;
  }
  Search s(A, B, node_limit);
  res.isomorphic = s.run(Colours(A.v, 0), Colours(B.v, 0), res.map);
  res.nodes = s.nodes();
  if (res.isomorphic && !is_isomorphism(A, B, res.map)) throw std::logic_error("unverified isomorphism");
  return res;
}

}  // namespace psl4
