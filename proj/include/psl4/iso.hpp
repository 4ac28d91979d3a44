#pragma once

// Isomorphism of small incidence structures by individualization and
// joint colour refinement on the point-block incidence graph.

#include <cstdint>
#include <optional>
#include <vector>

#include "psl4/design_io.hpp"

namespace psl4 {

struct IsoResult {
  bool isomorphic = false;
  std::vector<Point> map;  // point x of the first design goes to map[x]
  std::uint64_t nodes = 0;
};

// Requires equal (v, k, b) and v <= 64.  A returned map has been checked to
// send blocks onto blocks; a negative answer is an exhausted search.
// Throws UnsupportedError when the search exceeds node_limit.
IsoResult iso_test(const DesignFile& A, const DesignFile& B, std::uint64_t node_limit = 2'000'000);

bool is_isomorphism(const DesignFile& A, const DesignFile& B, const std::vector<Point>& map);

}  // namespace psl4
