// Exact scalars in Q or a quadratic extension Q(sqrt(b)).
//
// An ExactScalar is a + c*sqrt(b) with a, c rational.  Elements with c = 0
// are plain rationals and carry radicand 0; they combine freely with any
// radicand.  Two irrational elements must share the same radicand.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dpg {

using Rational = mpq_class;
using Integer = mpz_class;

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

struct RadicandMismatch : std::domain_error {
  RadicandMismatch(std::uint32_t a, std::uint32_t b);
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long n) : a_(n) {}
  ExactScalar(int n) : a_(n) {}
  ExactScalar(Rational a) : a_(std::move(a)) { a_.canonicalize(); }
  ExactScalar(Rational a, Rational c, std::uint32_t radicand);

  // The element sqrt(b) of Q(sqrt(b)).
  static ExactScalar sqrt_of(std::uint32_t b);
  static ExactScalar fraction(long p, long q) { return ExactScalar(Rational(p, q)); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return c_; }
  std::uint32_t radicand() const { return rad_; }

  bool is_zero() const { return sgn(a_) == 0 && rad_ == 0; }
  bool is_rational() const { return rad_ == 0; }
  bool is_one() const { return rad_ == 0 && a_ == 1; }

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& y);
  ExactScalar& operator-=(const ExactScalar& y);
  ExactScalar& operator*=(const ExactScalar& y);
  ExactScalar& operator/=(const ExactScalar& y);

  // this += x*y without temporaries in the rational case.
  void add_product(const ExactScalar& x, const ExactScalar& y);
  void sub_product(const ExactScalar& x, const ExactScalar& y);

  ExactScalar inverse() const;
  ExactScalar conjugate() const;
  // a^2 - b c^2, the field norm down to Q.
  Rational norm() const;

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.rad_ == y.rad_ && x.a_ == y.a_ && x.c_ == y.c_;
  }
  friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

  // Sign of the real number a + c*sqrt(b).
  int sign() const;
  friend bool operator<(const ExactScalar& x, const ExactScalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const ExactScalar& x, const ExactScalar& y) { return (x - y).sign() > 0; }

  // Textual form "p/q" or "p/q + r/s*sqrt(b)".
  std::string to_string() const;
  static ExactScalar parse(std::string_view text);

  friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
  friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
  friend ExactScalar operator*(ExactScalar x, const ExactScalar& y) { return x *= y; }
  friend ExactScalar operator/(ExactScalar x, const ExactScalar& y) { return x /= y; }

 private:
  void normalize();
  std::uint32_t common_radicand(const ExactScalar& y) const;

  Rational a_;
  Rational c_;
  std::uint32_t rad_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

// q^n for nonzero q and any integer n.
ExactScalar q_pow(const ExactScalar& q, long n);

// A base together with an integer exponent; value() evaluates exactly.
struct QPower {
  ExactScalar base;
  long exponent = 0;
  ExactScalar value() const { return q_pow(base, exponent); }
};

// Cached powers q^n for |n| up to a bound, grown on demand.
class QPowers {
 public:
  explicit QPowers(ExactScalar q);
  const ExactScalar& q() const { return q_; }
  ExactScalar operator()(long n) const;
  // The Gaussian integer [n] = (q^n - q^-n)/(q - q^-1).
  ExactScalar bracket(long n) const;

 private:
  ExactScalar q_;
  mutable std::vector<ExactScalar> pos_;
  mutable std::vector<ExactScalar> neg_;
};

// Square-free decomposition b = s^2 * f.
void squarefree_split(std::uint32_t b, std::uint32_t& s, std::uint32_t& f);

}  // namespace dpg
