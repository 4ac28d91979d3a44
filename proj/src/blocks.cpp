#include "psl4/blocks.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

namespace psl4 {

BlockSet::BlockSet(std::size_t v) : v_(v), words_(words_for(v)) {}

std::vector<Point> BlockSet::points(std::size_t i) const {
  std::vector<Point> out;
  auto bits = block(i);
  for (std::size_t w = 0; w < words_; ++w)
    for (std::uint64_t x = bits[w]; x; x &= x - 1) out.push_back(static_cast<Point>(w * 64 + std::countr_zero(x)));
  return out;
}

void BlockSet::push_back(std::span<const std::uint64_t> bits) {
  if (bits.size() != words_) throw DomainError("block width mismatch");
  data_.insert(data_.end(), bits.begin(), bits.end());
}

void BlockSet::push_back_points(std::span<const Point> pts) {
  data_.resize(data_.size() + words_, 0);
  auto* row = data_.data() + data_.size() - words_;
  for (auto x : pts) {
    if (x >= v_) throw DomainError("block point out of range");
    row[x / 64] |= std::uint64_t{1} << (x % 64);
  }
}

std::vector<MoebiusMap> block_stabilizer_maps(const GroupContext& ctx, std::span<const Point> B) {
  const std::size_t k = B.size();
  if (k < 3 || k > 256) throw DomainError("block_stabilizer_maps: need 3 <= |B| <= 256");
  std::vector<char> in(ctx.v, 0);
  for (auto x : B) in.at(x) = 1;
  std::vector<MoebiusMap> out;
  for (auto x : B)
    for (auto y : B) {
      if (y == x) continue;
      for (auto z : B) {
        if (z == x || z == y) continue;
        auto m = three_point_transporter(ctx.field, {B[0], B[1], B[2]}, {x, y, z});
        if (!in_psl(m)) continue;
        bool ok = true;
        for (std::size_t i = 3; i < k && ok; ++i) ok = in[m(B[i])];
        if (ok) out.push_back(m);
      }
    }
  return out;
}

std::uint64_t block_orbit_bytes(std::uint64_t b, std::size_t v) {
  const std::uint64_t cap = std::bit_ceil(std::max<std::uint64_t>(2 * b, 1024));
  return b * BlockSet::words_for(v) * 8 + cap * 4;
}

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

std::uint64_t hash_words(std::span<const std::uint64_t> w) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (auto x : w) {
    h ^= x;
    h *= 0x9E3779B97F4A7C15ull;
    h ^= h >> 29;
  }
  return h;
}

class BlockIndex {
 public:
  BlockIndex(const BlockSet& set, std::size_t cap) : set_(set), slots_(cap, kEmpty) {}

  std::size_t bytes() const { return slots_.size() * sizeof(std::uint32_t); }
  std::size_t capacity() const { return slots_.size(); }

  // Slot holding an equal block, or the empty slot where it belongs.
  std::size_t find(std::span<const std::uint64_t> bits) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash_words(bits) & mask;; s = (s + 1) & mask) {
      const auto id = slots_[s];
      if (id == kEmpty) return s;
      auto other = set_.block(id);
      if (std::equal(bits.begin(), bits.end(), other.begin())) return s;
    }
  }
  bool occupied(std::size_t s) const { return slots_[s] != kEmpty; }
  void put(std::size_t s, std::uint32_t id) { slots_[s] = id; }

  void grow() {
    std::vector<std::uint32_t> fresh(slots_.size() * 2, kEmpty);
    slots_.swap(fresh);
    for (auto id : fresh)
      if (id != kEmpty) slots_[find(set_.block(id))] = id;
  }

 private:
  const BlockSet& set_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace

BlockSystem block_orbit_with(GroupRef ctx, std::span<const Perm> gens, std::vector<Point> base, OrbitBudget budget) {
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  const std::size_t v = ctx->v;
  if (base.empty() || base.size() >= v || base.back() >= v)
    throw DomainError("base block must be a nonempty proper subset of the points");

  BlockSystem sys{.ctx = ctx, .base_block = base, .blocks = BlockSet(v)};
  std::uint64_t expected = 0;
  if (base.size() >= 3 && base.size() <= 128) {
    sys.stab_order = block_stabilizer_maps(*ctx, base).size();
    expected = ctx->order / sys.stab_order;
    if (const auto need = block_orbit_bytes(expected, v); need > budget.bytes)
      throw ResourceError("block orbit of " + std::to_string(expected) + " blocks needs " + std::to_string(need) +
                              " bytes, budget is " + std::to_string(budget.bytes),
                          0);
    if (expected >= kEmpty) throw UnsupportedError("more than 2^32 blocks");
    sys.blocks.reserve(expected);
  }

  auto& set = sys.blocks;
  BlockIndex index(set, std::bit_ceil(std::max<std::uint64_t>(2 * expected, 1024)));
  set.push_back_points(base);
  index.put(index.find(set.block(0)), 0);

  const std::size_t words = set.words();
  std::vector<std::uint64_t> cur(words), img(words);
  auto check_budget = [&] {
    if (set.bytes() + index.bytes() > budget.bytes)
      throw ResourceError("block orbit exceeded the memory budget of " + std::to_string(budget.bytes) + " bytes",
                          set.size());
  };
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto src = set.block(i);
    std::copy(src.begin(), src.end(), cur.begin());
    for (const auto& g : gens) {
      std::fill(img.begin(), img.end(), 0);
      for (std::size_t w = 0; w < words; ++w)
        for (std::uint64_t x = cur[w]; x; x &= x - 1) {
          const Point y = g[w * 64 + std::countr_zero(x)];
          img[y / 64] |= std::uint64_t{1} << (y % 64);
        }
      const auto slot = index.find(img);
      if (index.occupied(slot)) continue;
      if (set.size() >= kEmpty - 1) throw UnsupportedError("more than 2^32 blocks");
      set.push_back(img);
      index.put(slot, static_cast<std::uint32_t>(set.size() - 1));
      if (set.size() * 10 > index.capacity() * 7) {
        index.grow();
        check_budget();
      }
    }
    if ((i & 0xFFFF) == 0) check_budget();
  }
  if (expected && set.size() != expected)
    throw std::logic_error("block orbit size " + std::to_string(set.size()) + " disagrees with |G|/|Stab(B)| = " +
                           std::to_string(expected));
  if (!sys.stab_order && ctx->order % set.size() == 0) sys.stab_order = ctx->order / set.size();
  return sys;
}

BlockSystem block_orbit(GroupRef ctx, std::vector<Point> base, std::optional<SubgroupHandle> stabilizer,
                        OrbitBudget budget) {
  auto sys = block_orbit_with(ctx, ctx->generators, std::move(base), budget);
  if (stabilizer) {
    if (stabilizer->parent != ctx) throw DomainError("stabilizer belongs to another group");
    for (const auto& g : stabilizer->generators)
      for (auto x : sys.base_block)
        if (!std::binary_search(sys.base_block.begin(), sys.base_block.end(), g[x]))
          throw DomainError("constructing subgroup does not fix the base block");
    sys.stabilizer = std::move(stabilizer);
  }
  return sys;
}

}  // namespace psl4
