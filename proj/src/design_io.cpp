#include "psl4/design_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

namespace psl4 {

void DesignFile::canonicalize() {
  for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
  std::sort(blocks.begin(), blocks.end());
}

DesignFile DesignFile::from_blocks(const BlockSet& set, std::uint32_t k, std::optional<std::uint64_t> lambda) {
  DesignFile d;
  d.v = static_cast<std::uint32_t>(set.v());
  d.k = k;
  d.lambda = lambda ? static_cast<std::int64_t>(*lambda) : -1;
  d.blocks.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    d.blocks.push_back(set.points(i));
    if (d.blocks.back().size() != k) throw DomainError("block of the wrong size");
  }
  d.canonicalize();
  return d;
}

DesignFile DesignFile::parse(std::istream& in) {
  DesignFile d;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("design file: missing header");
  std::istringstream head(line);
  std::uint64_t b = 0;
  if (!(head >> d.t >> d.v >> d.k >> b >> d.lambda)) throw DomainError("design file: header must be 't v k b lambda'");
  if (d.v == 0 || d.v > kMaxDegree || d.k == 0 || d.k > d.v || d.lambda < -1)
    throw DomainError("design file: header out of range");
  d.blocks.reserve(b);
  for (std::uint64_t i = 0; i < b; ++i) {
    if (!std::getline(in, line)) throw DomainError("design file: expected " + std::to_string(b) + " blocks");
    std::istringstream row(line);
    std::vector<Point> blk;
    long long x;
    while (row >> x) {
      if (x < 0 || x >= d.v) throw DomainError("design file: point out of range on block line " + std::to_string(i + 1));
      blk.push_back(static_cast<Point>(x));
    }
    if (!row.eof()) throw DomainError("design file: malformed block line " + std::to_string(i + 1));
    if (blk.size() != d.k) throw DomainError("design file: block line " + std::to_string(i + 1) + " has wrong size");
    if (!std::is_sorted(blk.begin(), blk.end()) || std::adjacent_find(blk.begin(), blk.end()) != blk.end())
      throw DomainError("design file: block line " + std::to_string(i + 1) + " is not strictly ascending");
    if (!d.blocks.empty() && !(d.blocks.back() < blk))
      throw DomainError("design file: block lines are not strictly sorted at line " + std::to_string(i + 1));
    d.blocks.push_back(std::move(blk));
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw DomainError("design file: trailing data");
  return d;
}

DesignFile DesignFile::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  return parse(in);
}

void DesignFile::write(std::ostream& out) const {
  out << t << ' ' << v << ' ' << k << ' ' << b() << ' ' << lambda << '\n';
  for (const auto& blk : blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
    out << '\n';
  }
}

void DesignFile::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  write(out);
}

}  // namespace psl4
