#include "psl4/perm.hpp"

#include <numeric>
#include <string>

namespace psl4 {

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  if (img_.size() > kMaxDegree) throw DomainError("degree exceeds 1024");
  std::vector<bool> seen(img_.size(), false);
  for (auto x : img_) {
    if (x >= img_.size() || seen[x]) throw DomainError("image array is not a bijection");
    seen[x] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  if (degree > kMaxDegree) throw DomainError("degree exceeds 1024");
  Perm p;
  p.img_.resize(degree);
  std::iota(p.img_.begin(), p.img_.end(), Point{0});
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree || used[c[i]]) throw DomainError("bad cycle notation");
      used[c[i]] = true;
      img[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(img));
}

Perm Perm::operator*(const Perm& o) const {
  if (o.degree() != degree()) throw DomainError("degree mismatch");
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = o.img_[img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
  return r;
}

Perm Perm::pow(std::int64_t e) const {
  Perm base = e < 0 ? inverse() : *this;
  auto n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  Perm r = identity(degree());
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::uint64_t Perm::order() const {
  std::uint64_t ord = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::size_t Perm::first_moved() const noexcept {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return i;
  return img_.size();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace psl4
