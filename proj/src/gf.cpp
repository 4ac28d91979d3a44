#include "psl4/gf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace psl4 {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

PrimePower prime_power(std::uint64_t n) {
  if (n < 2) return {};
  auto fs = prime_factors(n);
  if (fs.size() != 1) return {};
  PrimePower pp{fs[0], 0};
  while (n > 1) {
    n /= pp.p;
    ++pp.f;
  }
  return pp;
}

namespace detail {

struct FieldImpl {
  std::uint32_t p = 0;
  std::uint32_t f = 0;
  std::uint32_t q = 0;
  Poly modulus;                     // monic, degree f
  std::uint32_t generator = 0;
  std::vector<std::uint32_t> exp;  // exp[i] = g^i, i < 2(q-1)
  std::vector<std::uint32_t> log;  // log[a] for a != 0
  std::vector<std::uint64_t> q1_factors;

  Poly to_poly(std::uint32_t a) const {
    Poly c(f, 0);
    for (std::uint32_t i = 0; i < f; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  }

  std::uint32_t from_poly(const Poly& c) const {
    std::uint32_t a = 0;
    for (std::uint32_t i = f; i-- > 0;) a = a * p + (i < c.size() ? c[i] % p : 0);
    return a;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (f == 1) return (a + b) % p;
    if (p == 2) return a ^ b;
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (f == 1) return a == 0 ? 0 : p - a;
    if (p == 2) return a;
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
      r += ((p - a % p) % p) * scale;
      a /= p;
      scale *= p;
    }
    return r;
  }

  std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const {
    if (f == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    Poly x = to_poly(a), y = to_poly(b);
    std::vector<std::uint64_t> prod(2 * f - 1, 0);
    for (std::uint32_t i = 0; i < f; ++i) {
      if (x[i] == 0) continue;
      for (std::uint32_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    }
    // modulus is monic: x^f = -(m_0 + ... + m_{f-1} x^{f-1})
    for (std::uint32_t d = 2 * f - 1; d-- > f;) {
      std::uint64_t lead = prod[d];
      if (lead == 0) continue;
      prod[d] = 0;
      for (std::uint32_t i = 0; i < f; ++i)
        prod[d - f + i] = (prod[d - f + i] + (p - modulus[i]) % p * lead) % p;
    }
    Poly r(f);
    for (std::uint32_t i = 0; i < f; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return from_poly(r);
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!log.empty()) return exp[log[a] + log[b]];
    return mul_poly(a, b);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1, base = a;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("GF(" + std::to_string(q) + "): division by zero");
    if (!log.empty()) return exp[(q - 1) - log[a]];
    return pow(a, q - 2);
  }

  std::uint64_t order(std::uint32_t a) const {
    std::uint64_t e = q - 1;
    for (auto r : q1_factors)
      while (e % r == 0 && pow(a, e / r) == 1) e /= r;
    return e;
  }
};

}  // namespace detail

namespace {

using detail::FieldImpl;

// Remainder of a modulo monic b over GF(p), in place.  Both lowest degree first.
void poly_rem(Poly& a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint64_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - b[i]) % p * lead) % p);
    }
    a.pop_back();
  }
}

Poly poly_from_code(std::uint64_t code, std::uint32_t p, std::uint32_t deg) {
  // monic of degree `deg`; code holds the lower coefficients in base p
  Poly c(deg + 1, 0);
  for (std::uint32_t i = 0; i < deg; ++i) {
    c[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  c[deg] = 1;
  return c;
}

bool irreducible(const Poly& m, std::uint32_t p) {
  const auto f = static_cast<std::uint32_t>(m.size() - 1);
  if (f <= 1) return true;
  std::uint64_t count = 1;
  for (std::uint32_t d = 1; d <= f / 2; ++d) {
    count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly r = m;
      poly_rem(r, poly_from_code(code, p, d), p);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- FieldElement

const detail::FieldImpl* FieldElement::checked_owner() const {
  if (owner_ == nullptr) throw DomainError("field element without a field");
  return owner_;
}

const detail::FieldImpl* FieldElement::common_owner(FieldElement o) const {
  if (owner_ == nullptr || owner_ != o.owner_) throw DomainError("operands belong to different fields");
  return owner_;
}

std::uint32_t FieldElement::field_order() const { return checked_owner()->q; }

FieldElement FieldElement::operator+(FieldElement o) const {
  auto* F = common_owner(o);
  return {F, F->add(idx_, o.idx_)};
}

FieldElement FieldElement::operator-(FieldElement o) const {
  auto* F = common_owner(o);
  return {F, F->add(idx_, F->neg(o.idx_))};
}

FieldElement FieldElement::operator*(FieldElement o) const {
  auto* F = common_owner(o);
  return {F, F->mul(idx_, o.idx_)};
}

FieldElement FieldElement::operator/(FieldElement o) const {
  auto* F = common_owner(o);
  return {F, F->mul(idx_, F->inv(o.idx_))};
}

FieldElement FieldElement::operator-() const {
  auto* F = checked_owner();
  return {F, F->neg(idx_)};
}

FieldElement FieldElement::inv() const {
  auto* F = checked_owner();
  return {F, F->inv(idx_)};
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  auto* F = checked_owner();
  return {F, F->pow(idx_, e)};
}

bool FieldElement::is_square() const {
  auto* F = checked_owner();
  if (idx_ == 0) throw DomainError("square class of zero");
  if (F->p == 2) return true;
  return F->pow(idx_, (F->q - 1) / 2) == 1;
}

std::uint64_t FieldElement::mult_order() const {
  auto* F = checked_owner();
  if (idx_ == 0) throw DomainError("multiplicative order of zero");
  return F->order(idx_);
}

// ----------------------------------------------------------------------- Field

Field Field::make(std::uint32_t p, std::uint32_t f) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (f < 1 || f > 12) throw DomainError("extension degree must lie in [1, 12]");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxOrder) throw DomainError("field order exceeds 2^20");
  }

  auto impl = std::make_shared<FieldImpl>();
  impl->p = p;
  impl->f = f;
  impl->q = static_cast<std::uint32_t>(q);
  if (f == 1) {
    impl->modulus = {0, 1};
  } else {
    const std::uint64_t codes = q;  // p^f monic candidates of degree f
    for (std::uint64_t code = 0; code < codes; ++code) {
      Poly m = poly_from_code(code, p, f);
      if (m[0] == 0) continue;  // divisible by x
      if (irreducible(m, p)) {
        impl->modulus = std::move(m);
        break;
      }
    }
    if (impl->modulus.empty()) throw std::logic_error("no irreducible polynomial found");
  }
  impl->q1_factors = prime_factors(q - 1);
  if (q == 2) {
    impl->generator = 1;
  } else {
    for (std::uint32_t a = 1; a < q; ++a) {
      if (impl->order(a) == q - 1) {
        impl->generator = a;
        break;
      }
    }
    if (impl->generator == 0) throw std::logic_error("no primitive element found");
  }
  if (q <= kTableLimit && f > 1) {
    const auto n = impl->q - 1;
    impl->exp.resize(2 * n);
    impl->log.assign(impl->q, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < 2 * n; ++i) {
      impl->exp[i] = x;
      if (i < n) impl->log[x] = i;
      x = impl->mul_poly(x, impl->generator);
    }
  }
  return Field(std::move(impl));
}

std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::f() const { return impl_->f; }
std::uint32_t Field::q() const { return impl_->q; }
const Poly& Field::modulus() const { return impl_->modulus; }
FieldElement Field::generator() const { return {impl_.get(), impl_->generator}; }
FieldElement Field::zero() const { return {impl_.get(), 0}; }
FieldElement Field::one() const { return {impl_.get(), 1}; }
bool Field::has_tables() const { return !impl_->log.empty(); }
bool Field::owns(FieldElement a) const noexcept { return a.owner_ == impl_.get(); }

FieldElement Field::element(std::uint32_t index) const {
  if (index >= impl_->q) throw DomainError("element index out of range");
  return {impl_.get(), index};
}

FieldElement Field::from_coeffs(const Poly& coeffs) const {
  Poly r;
  r.reserve(coeffs.size());
  for (auto c : coeffs) r.push_back(c % impl_->p);
  if (r.size() > impl_->f) poly_rem(r, impl_->modulus, impl_->p);
  return {impl_.get(), impl_->from_poly(r)};
}

Poly Field::coeffs(FieldElement a) const {
  if (!owns(a)) throw DomainError("element of a different field");
  return impl_->to_poly(a.index());
}

FieldElement Field::indeterminate() const { return from_coeffs({0, 1}); }

FieldElement Field::mul_reference(FieldElement a, FieldElement b) const {
  if (!owns(a) || !owns(b)) throw DomainError("element of a different field");
  return {impl_.get(), impl_->mul_poly(a.index(), b.index())};
}

// ------------------------------------------------------------------ embedding

FieldElement SubfieldEmbedding::operator()(FieldElement a) const {
  if (!sub_.owns(a)) throw DomainError("element is not in the embedded subfield");
  return big_.element(image_[a.index()]);
}

SubfieldEmbedding subfield_embed(const Field& sub, const Field& big) {
  if (sub.p() != big.p() || big.f() % sub.f() != 0)
    throw DomainError("GF(" + std::to_string(sub.q()) + ") is not a subfield of GF(" + std::to_string(big.q()) + ")");
  std::vector<std::uint32_t> image(sub.q());
  if (sub.f() == 1) {
    // prime field: c -> c * 1
    auto acc = big.zero();
    for (std::uint32_t c = 0; c < sub.q(); ++c) {
      image[c] = acc.index();
      acc = acc + big.one();
    }
    return {sub, big, std::move(image)};
  }
  const auto& m = sub.modulus();
  std::uint32_t root = 0;
  bool found = false;
  for (std::uint32_t r = 0; r < big.q() && !found; ++r) {
    auto x = big.element(r);
    // Horner evaluation with prime-field coefficients
    auto acc = big.zero();
    for (std::size_t i = m.size(); i-- > 0;) acc = acc * x + big.element(m[i]);
    if (acc.is_zero()) {
      root = r;
      found = true;
    }
  }
  if (!found) throw std::logic_error("subfield modulus has no root in the big field");
  const auto x = big.element(root);
  for (std::uint32_t a = 0; a < sub.q(); ++a) {
    auto c = sub.coeffs(sub.element(a));
    auto acc = big.zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + big.element(c[i]);
    image[a] = acc.index();
  }
  return {sub, big, std::move(image)};
}

}  // namespace psl4
