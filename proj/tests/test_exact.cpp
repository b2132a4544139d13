// Exact scalars in Q and Q(sqrt b).

#include <cmath>
#include <random>

#include "doctest.h"
#include "dpg/exact.hpp"

using namespace dpg;

namespace {

// (a, c) represents a + c sqrt(r); products by the textbook rule.
struct Pair {
  Rational a, c;
};

Pair mul(const Pair& x, const Pair& y, long r) {
  return {x.a * y.a + r * x.c * y.c, x.a * y.c + x.c * y.a};
}

ExactScalar from_pair(const Pair& p, std::uint32_t r) { return ExactScalar(p.a) + ExactScalar(p.c) * ExactScalar::sqrt_of(r); }

double approx(const Pair& p, long r) { return p.a.get_d() + p.c.get_d() * std::sqrt(static_cast<double>(r)); }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("rational arithmetic collapses to canonical form") {
  CHECK(ExactScalar::fraction(6, 4) == ExactScalar::fraction(3, 2));
  CHECK(ExactScalar::fraction(1, 3) + ExactScalar::fraction(2, 3) == ExactScalar(1));
  CHECK((ExactScalar(7) / ExactScalar(7)).is_one());
  CHECK_THROWS_AS(ExactScalar(1) / ExactScalar(0), DivisionByZero);
  CHECK_THROWS_AS(ExactScalar(0).inverse(), DivisionByZero);
}

TEST_CASE("sqrt_of reduces square factors") {
  CHECK(ExactScalar::sqrt_of(4) == ExactScalar(2));
  CHECK(ExactScalar::sqrt_of(1) == ExactScalar(1));
  CHECK(ExactScalar::sqrt_of(8) == ExactScalar(2) * ExactScalar::sqrt_of(2));
  CHECK(ExactScalar::sqrt_of(2) * ExactScalar::sqrt_of(2) == ExactScalar(2));
  CHECK_FALSE(ExactScalar::sqrt_of(3).is_rational());
}

TEST_CASE("square-free split agrees with trial division") {
  for (std::uint32_t b = 1; b <= 300; ++b) {
    std::uint32_t s = 0, f = 0;
    squarefree_split(b, s, f);
    CHECK(s * s * f == b);
    for (std::uint32_t k = 2; k * k <= f; ++k) CHECK(f % (k * k) != 0);
  }
}

TEST_CASE("field operations in Q(sqrt r) match the pair oracle") {
  std::mt19937_64 rng(7);
  for (std::uint32_t r : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 200; ++trial) {
      Pair x{random_rational(rng), random_rational(rng)}, y{random_rational(rng), random_rational(rng)};
      ExactScalar ex = from_pair(x, r), ey = from_pair(y, r);
      CHECK(ex * ey == from_pair(mul(x, y, r), r));
      CHECK(ex + ey == from_pair({x.a + y.a, x.c + y.c}, r));
      CHECK(ex - ey == from_pair({x.a - y.a, x.c - y.c}, r));
      CHECK(ex.norm() == x.a * x.a - r * x.c * x.c);
      if (!ex.is_zero()) {
        CHECK((ex * ex.inverse()).is_one());
        CHECK((ey / ex) * ex == ey);
      }
      double d = approx(x, r);
      if (std::abs(d) > 1e-9) CHECK(ex.sign() == (d > 0 ? 1 : -1));
      CHECK(ExactScalar::parse(ex.to_string()) == ex);
    }
  }
}

TEST_CASE("mixing different radicands is rejected") {
  CHECK_THROWS_AS(ExactScalar::sqrt_of(2) + ExactScalar::sqrt_of(3), RadicandMismatch);
}

TEST_CASE("parse accepts the printed forms and rejects garbage") {
  CHECK(ExactScalar::parse("-3/4") == ExactScalar::fraction(-3, 4));
  CHECK(ExactScalar::parse("17") == ExactScalar(17));
  CHECK(ExactScalar::parse("0 + 4*sqrt(2)") == ExactScalar(4) * ExactScalar::sqrt_of(2));
  CHECK_THROWS_AS(ExactScalar::parse("banana"), ParseError);
}

TEST_CASE("q powers and Gaussian brackets agree with direct sums") {
  for (ExactScalar q : {ExactScalar(2), ExactScalar(3), ExactScalar::sqrt_of(2), ExactScalar::fraction(1, 2)}) {
    QPowers qp(q);
    ExactScalar pw(1);
    for (long n = 0; n <= 12; ++n) {
      CHECK(qp(n) == pw);
      CHECK(q_pow(q, n) == pw);
      CHECK(q_pow(q, -n) == pw.inverse());
      CHECK(qp(-n) == pw.inverse());
      // [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
      ExactScalar sum;
      for (long k = 0; k < n; ++k) sum += q_pow(q, n - 1 - 2 * k);
      CHECK(qp.bracket(n) == sum);
      pw *= q;
    }
  }
}
