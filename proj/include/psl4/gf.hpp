#pragma once

// Exact arithmetic in GF(p^f).
//
// Elements are identified with their canonical index: the coefficient vector
// (c_0, ..., c_{f-1}) of the reduced polynomial read as the base-p number
// c_0 + c_1 p + ... + c_{f-1} p^{f-1}.  For prime fields the index is the
// residue itself.  This index order is the "canonical element order" used by
// every deterministic scan in the library.

#include <cstdint>
#include <memory>
#include <vector>

#include "psl4/errors.hpp"

namespace psl4 {

/// Dense polynomial over GF(p), lowest degree first.
using Poly = std::vector<std::uint32_t>;

namespace detail {
struct FieldImpl;
}

/// A value of some Field.  Elements borrow their field: the Field they came
/// from must outlive them.  Mixing elements of different fields throws
/// DomainError.
class FieldElement {
 public:
  FieldElement() = default;

  std::uint32_t index() const noexcept { return idx_; }
  bool is_zero() const noexcept { return idx_ == 0; }
  bool is_one() const noexcept { return idx_ == 1; }
  std::uint32_t field_order() const;

  FieldElement operator+(FieldElement o) const;
  FieldElement operator-(FieldElement o) const;
  FieldElement operator*(FieldElement o) const;
  FieldElement operator/(FieldElement o) const;
  FieldElement operator-() const;

  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  /// True iff the element is a nonzero square.  Throws on zero.
  bool is_square() const;
  /// Least e >= 1 with a^e = 1.  Throws on zero.
  std::uint64_t mult_order() const;

  bool same_field(FieldElement o) const noexcept { return owner_ == o.owner_; }

  friend bool operator==(FieldElement a, FieldElement b) noexcept {
    return a.owner_ == b.owner_ && a.idx_ == b.idx_;
  }
  friend bool operator!=(FieldElement a, FieldElement b) noexcept { return !(a == b); }

 private:
  friend class Field;
  friend struct detail::FieldImpl;
  FieldElement(const detail::FieldImpl* owner, std::uint32_t idx) : owner_(owner), idx_(idx) {}

  const detail::FieldImpl* checked_owner() const;
  const detail::FieldImpl* common_owner(FieldElement o) const;

  const detail::FieldImpl* owner_ = nullptr;
  std::uint32_t idx_ = 0;
};

class Field {
 public:
  /// Largest supported field order.
  static constexpr std::uint32_t kMaxOrder = 1u << 20;
  /// Fields up to this order get log/exp tables.
  static constexpr std::uint32_t kTableLimit = 4096;

  /// Deterministic construction: the modulus is the smallest monic irreducible
  /// polynomial of degree f (compared as base-p numbers, leading term most
  /// significant); the generator is the smallest element of order q - 1.
  static Field make(std::uint32_t p, std::uint32_t f);

  std::uint32_t p() const;
  std::uint32_t f() const;
  std::uint32_t q() const;
  const Poly& modulus() const;
  FieldElement generator() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(std::uint32_t index) const;
  FieldElement from_coeffs(const Poly& coeffs) const;
  Poly coeffs(FieldElement a) const;

  /// The class of x modulo the modulus (zero when f = 1).
  FieldElement indeterminate() const;

  FieldElement add(FieldElement a, FieldElement b) const { return a + b; }
  FieldElement mul(FieldElement a, FieldElement b) const { return a * b; }
  FieldElement neg(FieldElement a) const { return -a; }
  FieldElement inv(FieldElement a) const { return a.inv(); }
  FieldElement pow(FieldElement a, std::uint64_t e) const { return a.pow(e); }

  /// Multiplication through dense polynomial reduction, bypassing any tables.
  FieldElement mul_reference(FieldElement a, FieldElement b) const;
  bool has_tables() const;

  bool operator==(const Field& o) const noexcept { return impl_ == o.impl_; }
  bool owns(FieldElement a) const noexcept;

 private:
  explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::FieldImpl> impl_;
};

/// Field homomorphism GF(q0) -> GF(q) onto the unique subfield of order q0.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(Field sub, Field big, std::vector<std::uint32_t> image)
      : sub_(std::move(sub)), big_(std::move(big)), image_(std::move(image)) {}

  FieldElement operator()(FieldElement a) const;
  const Field& sub() const noexcept { return sub_; }
  const Field& big() const noexcept { return big_; }

 private:
  Field sub_;
  Field big_;
  std::vector<std::uint32_t> image_;
};

/// Requires sub.p == big.p and sub.f | big.f.  For f_sub > 1 the root of the
/// sub modulus is sent to its smallest root in `big`.
SubfieldEmbedding subfield_embed(const Field& sub, const Field& big);

// Integer helpers shared by the group and sieve code.
bool is_prime(std::uint64_t n);
/// (p, f) with n = p^f, or {0, 0} when n is not a prime power.
struct PrimePower {
  std::uint64_t p = 0;
  std::uint32_t f = 0;
  explicit operator bool() const noexcept { return p != 0; }
};
PrimePower prime_power(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace psl4
