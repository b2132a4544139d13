#include "dpg/gf.hpp"

#include <string>

namespace dpg {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e != 0; e >>= 1) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - f * b[i] % p) % p);
    trim(a);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(const Poly& poly, std::uint32_t p) {
  std::size_t deg = poly.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t k = 1; 2 * k <= deg; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly d(k + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        d[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      d[k] = 1;
      if (poly_mod(poly, d, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec build_field(std::uint32_t p, std::uint32_t m) {
  if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
  if (m < 1 || m > 8) throw FieldError("extension degree must lie in 1..8");
  FieldSpec f;
  f.p_ = p;
  f.m_ = m;
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < m; ++i) order *= p;
  if (order > (1ULL << 31)) throw FieldError("field too large");
  f.order_ = static_cast<std::uint32_t>(order);
  for (std::uint64_t code = 0; code < order; ++code) {
    Poly cand(m + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      cand[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    cand[m] = 1;
    if (is_irreducible(cand, p)) {
      f.modulus_ = cand;
      break;
    }
  }
  if (f.order_ <= 256) {
    std::uint32_t q = f.order_;
    f.add_table_.resize(q * q);
    f.mul_table_.resize(q * q);
    f.neg_table_.resize(q);
    f.inv_table_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        auto ca = f.coefficients(a), cb = f.coefficients(b);
        for (std::uint32_t i = 0; i < m; ++i) ca[i] = (ca[i] + cb[i]) % p;
        f.add_table_[a * q + b] = static_cast<std::uint8_t>(f.from_coefficients(ca));
        f.mul_table_[a * q + b] = static_cast<std::uint8_t>(f.mul_slow(a, b));
      }
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        if (f.add_table_[a * q + b] == 0) f.neg_table_[a] = static_cast<std::uint8_t>(b);
        if (f.mul_table_[a * q + b] == 1) f.inv_table_[a] = static_cast<std::uint8_t>(b);
      }
  }
  return f;
}

std::vector<std::uint32_t> FieldSpec::coefficients(FieldElement a) const {
  std::vector<std::uint32_t> c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

FieldElement FieldSpec::from_coefficients(const std::vector<std::uint32_t>& c) const {
  FieldElement v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i] % p_;
  return v;
}

FieldElement FieldSpec::generator_x() const {
  if (m_ == 1) return (p_ - modulus_[0]) % p_;
  return p_;
}

FieldElement FieldSpec::mul_slow(FieldElement a, FieldElement b) const {
  auto ca = coefficients(a), cb = coefficients(b);
  Poly prod(2 * m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
  Poly r = poly_mod(prod, modulus_, p_);
  r.resize(m_, 0);
  return from_coefficients(r);
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  if (!add_table_.empty()) return add_table_[a * order_ + b];
  auto ca = coefficients(a), cb = coefficients(b);
  for (std::uint32_t i = 0; i < m_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
  return from_coefficients(ca);
}

FieldElement FieldSpec::neg(FieldElement a) const {
  if (!neg_table_.empty()) return neg_table_[a];
  auto ca = coefficients(a);
  for (auto& c : ca) c = (p_ - c) % p_;
  return from_coefficients(ca);
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  if (!mul_table_.empty()) return mul_table_[a * order_ + b];
  return mul_slow(a, b);
}

FieldElement FieldSpec::pow(FieldElement a, std::uint64_t n) const {
  FieldElement r = 1;
  while (n != 0) {
    if (n & 1U) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a == 0) throw FieldError("inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, order_ - 2);
}

std::uint32_t FieldSpec::sqrt_order() const {
  if (m_ % 2 != 0) throw FieldError("frobenius conjugation needs an even extension degree");
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < m_ / 2; ++i) q *= p_;
  return q;
}

FieldElement FieldSpec::frobenius(FieldElement x, std::uint32_t q) const {
  if (q != sqrt_order()) throw FieldError("frobenius exponent must satisfy q^2 = field order");
  return pow(x, q);
}

}  // namespace dpg
