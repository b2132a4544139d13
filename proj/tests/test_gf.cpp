// Finite field arithmetic in the polynomial basis.

#include <cmath>
#include <set>
#include <tuple>
#include <utility>

#include "doctest.h"
#include "dpg/gf.hpp"

using namespace dpg;

namespace {

// Product of two polynomials over GF(p), lowest coefficient first.
std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                    std::uint32_t p) {
  std::vector<std::uint32_t> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

// All monic polynomials of degree deg, in the encoding order of their lower coefficients.
std::vector<std::vector<std::uint32_t>> monic(std::uint32_t p, std::uint32_t deg) {
  std::vector<std::vector<std::uint32_t>> out;
  std::uint32_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= p;
  for (std::uint32_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> poly(deg + 1, 0);
    std::uint32_t c = code;
    for (std::uint32_t i = 0; i < deg; ++i) {
      poly[i] = c % p;
      c /= p;
    }
    poly[deg] = 1;
    out.push_back(poly);
  }
  return out;
}

// Irreducible when no product of two monic polynomials of positive degree equals it.
bool irreducible_by_products(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  std::uint32_t deg = static_cast<std::uint32_t>(poly.size() - 1);
  for (std::uint32_t d1 = 1; d1 <= deg / 2; ++d1)
    for (const auto& f : monic(p, d1))
      for (const auto& g : monic(p, deg - d1))
        if (poly_mul(f, g, p) == poly) return false;
  return true;
}

}  // namespace

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}}) {
    auto f = build_field(p, m);
    std::uint32_t n = f.order();
    CHECK(n == static_cast<std::uint32_t>(std::pow(p, m)));
    for (FieldElement a = 0; a < n; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.mul(a, 1) == a);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      if (a) CHECK(f.pow(a, n - 1) == 1);
      for (FieldElement b = 0; b < n; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(f.add(a, b), b) == a);
        for (FieldElement c = 0; c < n; c += (n > 8 ? 3 : 1)) {
          CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
    CHECK_THROWS_AS(f.inv(0), FieldError);
  }
}

TEST_CASE("the modulus is the first irreducible monic polynomial") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
    auto f = build_field(p, m);
    std::vector<std::uint32_t> first;
    for (const auto& poly : monic(p, m))
      if (irreducible_by_products(poly, p)) {
        first = poly;
        break;
      }
    CHECK(f.modulus() == first);
    for (const auto& poly : monic(p, m)) CHECK(is_irreducible(poly, p) == irreducible_by_products(poly, p));
  }
}

TEST_CASE("coefficient encoding round-trips") {
  auto f = build_field(3, 3);
  for (FieldElement a = 0; a < f.order(); ++a) CHECK(f.from_coefficients(f.coefficients(a)) == a);
}

TEST_CASE("conjugation is an involutive automorphism fixing the subfield") {
  for (auto [p, m, q] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{2, 2, 2}, {3, 2, 3}, {2, 4, 4}}) {
    auto f = build_field(p, m);
    CHECK(f.sqrt_order() == q);
    std::set<FieldElement> fixed;
    for (FieldElement a = 0; a < f.order(); ++a) {
      CHECK(f.frobenius(f.frobenius(a, q), q) == a);
      if (f.frobenius(a, q) == a) fixed.insert(a);
      for (FieldElement b = 0; b < f.order(); ++b) {
        CHECK(f.frobenius(f.mul(a, b), q) == f.mul(f.frobenius(a, q), f.frobenius(b, q)));
        CHECK(f.frobenius(f.add(a, b), q) == f.add(f.frobenius(a, q), f.frobenius(b, q)));
      }
    }
    CHECK(fixed.size() == q);
  }
  CHECK_THROWS_AS(build_field(2, 3).sqrt_order(), FieldError);
}

TEST_CASE("invalid field parameters are rejected") {
  CHECK_THROWS_AS(build_field(4, 1), FieldError);
  CHECK_THROWS_AS(build_field(2, 0), FieldError);
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
