#pragma once

// Text design files: a header line "t v k b lambda" (lambda = -1 when the
// structure is not a design), then b lines of k ascending 0-based points,
// the lines in lexicographic order.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "psl4/blocks.hpp"

namespace psl4 {

struct DesignFile {
  std::uint32_t t = 4;
  std::uint32_t v = 0, k = 0;
  std::int64_t lambda = -1;
  std::vector<std::vector<Point>> blocks;

  std::uint64_t b() const noexcept { return blocks.size(); }

  // Sorts points within blocks and blocks lexicographically.
  void canonicalize();

  static DesignFile from_blocks(const BlockSet& blocks, std::uint32_t k, std::optional<std::uint64_t> lambda);
  static DesignFile parse(std::istream& in);
  static DesignFile read(const std::filesystem::path& path);
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

  friend bool operator==(const DesignFile&, const DesignFile&) = default;
};

}  // namespace psl4
