#include "psl4/permgroup.hpp"

#include <algorithm>
#include <unordered_set>

namespace psl4 {

std::vector<Point> orbit_of(std::span<const Perm> gens, Point pt, std::size_t degree) {
  if (pt >= degree) throw DomainError("point out of range");
  std::vector<bool> seen(degree, false);
  std::vector<Point> orb{pt};
  seen[pt] = true;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (const auto& g : gens) {
      Point y = g[orb[i]];
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  }
  return orb;
}

std::vector<std::vector<Point>> orbits(std::span<const Perm> gens, std::size_t degree) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree, false);
  for (std::size_t x = 0; x < degree; ++x) {
    if (seen[x]) continue;
    auto orb = orbit_of(gens, static_cast<Point>(x), degree);
    for (auto y : orb) seen[y] = true;
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::optional<std::vector<Perm>> closure(std::span<const Perm> gens, std::size_t degree, std::size_t cap) {
  std::vector<Perm> elems{Perm::identity(degree)};
  std::unordered_set<Perm, PermHash> seen{elems.front()};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      Perm h = elems[i] * g;
      if (seen.insert(h).second) {
        if (elems.size() >= cap) return std::nullopt;
        elems.push_back(std::move(h));
      }
    }
  }
  return elems;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens) : degree_(degree), gens_(std::move(gens)) {
  if (degree_ > kMaxDegree) throw DomainError("degree exceeds 1024");
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw DomainError("generator degree mismatch");
  build();
}

std::pair<Perm, std::size_t> PermGroup::sift(Perm g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const auto& lv = levels_[l];
    auto at = lv.pos[g[lv.base]];
    if (at < 0) return {std::move(g), l};
    g = g * lv.uinv[at];
  }
  return {std::move(g), levels_.size()};
}

void PermGroup::add_level(Point base) {
  Level lv;
  lv.base = base;
  lv.pos.assign(degree_, -1);
  lv.pos[base] = 0;
  lv.orbit.push_back(base);
  lv.u.push_back(Perm::identity(degree_));
  lv.uinv.push_back(Perm::identity(degree_));
  lv.done.push_back(0);
  levels_.push_back(std::move(lv));
}

void PermGroup::add_generator(std::size_t level, const Perm& g) {
  auto& lv = levels_[level];
  lv.gens.push_back(g);
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    for (const auto& s : lv.gens) {
      Point y = s[lv.orbit[i]];
      if (lv.pos[y] >= 0) continue;
      lv.pos[y] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(y);
      lv.u.push_back(lv.u[i] * s);
      lv.uinv.push_back(lv.u.back().inverse());
      lv.done.push_back(0);
    }
  }
}

void PermGroup::build() {
  auto add_strong = [this](std::size_t from, std::size_t to, const Perm& h) {
    if (to == levels_.size()) add_level(static_cast<Point>(h.first_moved()));
    for (std::size_t m = from; m <= to; ++m) add_generator(m, h);
  };
  for (const auto& g : gens_) {
    auto [h, j] = sift(g, 0);
    if (!h.is_identity()) add_strong(0, j, h);
  }

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    for (std::size_t p = 0; p < levels_[i].orbit.size() && !restarted; ++p) {
      while (levels_[i].done[p] < levels_[i].gens.size()) {
        const auto& lv = levels_[i];
        const auto& s = lv.gens[lv.done[p]];
        Perm schreier = lv.u[p] * s * lv.uinv[lv.pos[s[lv.orbit[p]]]];
        ++levels_[i].done[p];
        if (schreier.is_identity()) continue;
        auto [h, j] = sift(std::move(schreier), i + 1);
        if (!h.is_identity()) {
          add_strong(i + 1, j, h);
          i = static_cast<std::ptrdiff_t>(j);
          restarted = true;
          break;
        }
      }
    }
    if (!restarted) --i;
  }
}

std::uint64_t PermGroup::order() const {
  unsigned __int128 ord = 1;
  for (const auto& lv : levels_) {
    ord *= lv.orbit.size();
    if (ord > UINT64_MAX) throw UnsupportedError("group order exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(ord);
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return sift(g, 0).first.is_identity();
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

std::vector<std::size_t> PermGroup::basic_orbit_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& lv : levels_) s.push_back(lv.orbit.size());
  return s;
}

std::vector<Perm> PermGroup::stabilizer_generators(std::size_t depth) const {
  if (depth >= levels_.size()) return {};
  return levels_[depth].gens;
}

}  // namespace psl4
