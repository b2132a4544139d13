// Finite fields GF(p^m) in the polynomial basis.
//
// An element is stored as the integer sum c_i p^i of its coefficient vector
// (c_0, ..., c_{m-1}).  The modulus is the smallest monic irreducible of
// degree m when monic polynomials are ordered by that same integer encoding
// of their lower coefficients.  Fields of order at most 256 use full
// addition and multiplication tables.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dpg {

using FieldElement = std::uint32_t;

struct FieldError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class FieldSpec {
 public:
  FieldSpec() = default;

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t order() const { return order_; }
  // Coefficients of the modulus, lowest degree first, leading 1 included.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return 0; }
  FieldElement one() const { return 1; }
  // The class of x in GF(p)[x]/(modulus); equals the constant x itself when m = 1.
  FieldElement generator_x() const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t n) const;

  std::vector<std::uint32_t> coefficients(FieldElement a) const;
  FieldElement from_coefficients(const std::vector<std::uint32_t>& c) const;

  // x -> x^q for q^2 = order; the involution of GF(q^2) over GF(q).
  FieldElement frobenius(FieldElement x, std::uint32_t q) const;
  // The integer q with q^2 = order; throws when m is odd.
  std::uint32_t sqrt_order() const;

  friend FieldSpec build_field(std::uint32_t p, std::uint32_t m);

 private:
  FieldElement mul_slow(FieldElement a, FieldElement b) const;

  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint8_t> add_table_;
  std::vector<std::uint8_t> mul_table_;
  std::vector<std::uint8_t> neg_table_;
  std::vector<std::uint8_t> inv_table_;
};

bool is_prime(std::uint32_t n);
// Whether the monic polynomial with these coefficients (lowest first) is irreducible over GF(p).
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);
FieldSpec build_field(std::uint32_t p, std::uint32_t m);

}  // namespace dpg
