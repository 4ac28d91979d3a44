#pragma once

// Block orbits B^G stored as fixed-width bit-sets.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psl4/subgroup.hpp"

namespace psl4 {

// Arena of equal-width bit-sets over v points.
class BlockSet {
 public:
  BlockSet() = default;
  explicit BlockSet(std::size_t v);

  std::size_t v() const noexcept { return v_; }
  std::size_t words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_ ? data_.size() / words_ : 0; }
  std::span<const std::uint64_t> block(std::size_t i) const { return {data_.data() + i * words_, words_}; }
  bool contains(std::size_t i, Point x) const { return (data_[i * words_ + x / 64] >> (x % 64)) & 1u; }
  std::vector<Point> points(std::size_t i) const;

  void reserve(std::size_t blocks) { data_.reserve(blocks * words_); }
  void push_back(std::span<const std::uint64_t> bits);
  void push_back_points(std::span<const Point> pts);
  void pop_back() { data_.resize(data_.size() - words_); }
  std::size_t bytes() const noexcept { return data_.capacity() * sizeof(std::uint64_t); }

  static std::size_t words_for(std::size_t v) { return (v + 63) / 64; }

 private:
  std::size_t v_ = 0, words_ = 0;
  std::vector<std::uint64_t> data_;
};

struct BlockSystem {
  GroupRef ctx;
  std::optional<SubgroupHandle> stabilizer;  // the constructing G_B, if any
  std::vector<Point> base_block;             // sorted
  BlockSet blocks;
  std::uint64_t stab_order = 0;              // |Stab_G(B)|

  std::uint64_t b() const noexcept { return blocks.size(); }
  std::uint64_t k() const noexcept { return base_block.size(); }
  std::uint64_t v() const noexcept { return ctx->v; }
};

// Elements of PSL(2,q) fixing B setwise, found from the images of three
// points of B.  Needs 3 <= |B| <= 256.
std::vector<MoebiusMap> block_stabilizer_maps(const GroupContext& ctx, std::span<const Point> B);

struct OrbitBudget {
  std::uint64_t bytes = std::uint64_t{4} << 30;
};

// BFS over generator images of B, deduplicated through a hash index.
// Throws ResourceError (partial = blocks found) when the budget is exceeded.
BlockSystem block_orbit(GroupRef ctx, std::vector<Point> base_block, std::optional<SubgroupHandle> stabilizer = {},
                        OrbitBudget budget = {});
// Same, generating with the given permutations instead of ctx->generators.
BlockSystem block_orbit_with(GroupRef ctx, std::span<const Perm> gens, std::vector<Point> base_block,
                             OrbitBudget budget = {});

// Bytes block_orbit needs for b blocks over v points.
std::uint64_t block_orbit_bytes(std::uint64_t b, std::size_t v);

}  // namespace psl4
