#include "dpg/exact.hpp"

#include <cctype>
#include <ostream>

namespace dpg {

RadicandMismatch::RadicandMismatch(std::uint32_t a, std::uint32_t b)
    : std::domain_error("radicand mismatch: sqrt(" + std::to_string(a) + ") vs sqrt(" +
                        std::to_string(b) + ")") {}

void squarefree_split(std::uint32_t b, std::uint32_t& s, std::uint32_t& f) {
  s = 1;
  f = 1;
  std::uint32_t n = b;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      f *= p;
    }
  }
  f *= n;
}

ExactScalar::ExactScalar(Rational a, Rational c, std::uint32_t radicand)
    : a_(std::move(a)), c_(std::move(c)), rad_(radicand) {
  a_.canonicalize();
  c_.canonicalize();
  normalize();
}

ExactScalar ExactScalar::sqrt_of(std::uint32_t b) { return ExactScalar(0, 1, b); }

// Collapse perfect squares, strip square factors and give rationals radicand 0.
void ExactScalar::normalize() {
  if (rad_ == 0 || sgn(c_) == 0) {
    c_ = 0;
    rad_ = 0;
    return;
  }
  std::uint32_t s, f;
  squarefree_split(rad_, s, f);
  if (s != 1) c_ *= s;
  if (f == 1) {
    a_ += c_;
    c_ = 0;
    rad_ = 0;
    return;
  }
  rad_ = f;
}

std::uint32_t ExactScalar::common_radicand(const ExactScalar& y) const {
  if (rad_ == 0) return y.rad_;
  if (y.rad_ == 0 || y.rad_ == rad_) return rad_;
  throw RadicandMismatch(rad_, y.rad_);
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r;
  r.a_ = -a_;
  if (rad_ != 0) {
    r.c_ = -c_;
    r.rad_ = rad_;
  }
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& y) {
  if (y.rad_ == 0) {
    a_ += y.a_;
    return *this;
  }
  rad_ = common_radicand(y);
  a_ += y.a_;
  c_ += y.c_;
  if (sgn(c_) == 0) rad_ = 0;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& y) {
  if (y.rad_ == 0) {
    a_ -= y.a_;
    return *this;
  }
  rad_ = common_radicand(y);
  a_ -= y.a_;
  c_ -= y.c_;
  if (sgn(c_) == 0) rad_ = 0;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& y) {
  if (y.rad_ == 0) {
    if (rad_ == 0) {
      a_ *= y.a_;
      return *this;
    }
    a_ *= y.a_;
    c_ *= y.a_;
    if (sgn(c_) == 0) rad_ = 0;
    return *this;
  }
  if (rad_ == 0) {
    c_ = a_ * y.c_;
    a_ *= y.a_;
    rad_ = sgn(c_) == 0 ? 0 : y.rad_;
    return *this;
  }
  std::uint32_t b = common_radicand(y);
  Rational na = a_ * y.a_ + c_ * y.c_ * b;
  Rational nc = a_ * y.c_ + c_ * y.a_;
  a_ = std::move(na);
  c_ = std::move(nc);
  rad_ = sgn(c_) == 0 ? 0 : b;
  if (rad_ == 0) c_ = 0;
  return *this;
}

void ExactScalar::add_product(const ExactScalar& x, const ExactScalar& y) {
  if (x.rad_ == 0 && y.rad_ == 0) {
    if (sgn(x.a_) == 0 || sgn(y.a_) == 0) return;
    mpq_class t = x.a_ * y.a_;
    a_ += t;
    return;
  }
  *this += x * y;
}

void ExactScalar::sub_product(const ExactScalar& x, const ExactScalar& y) {
  if (x.rad_ == 0 && y.rad_ == 0) {
    if (sgn(x.a_) == 0 || sgn(y.a_) == 0) return;
    mpq_class t = x.a_ * y.a_;
    a_ -= t;
    return;
  }
  *this -= x * y;
}

Rational ExactScalar::norm() const {
  if (rad_ == 0) return a_ * a_;
  return a_ * a_ - c_ * c_ * rad_;
}

ExactScalar ExactScalar::conjugate() const {
  ExactScalar r = *this;
  r.c_ = -r.c_;
  return r;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (rad_ == 0) return ExactScalar(Rational(1) / a_);
  Rational n = norm();
  ExactScalar r;
  r.a_ = a_ / n;
  r.c_ = -c_ / n;
  r.rad_ = rad_;
  return r;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& y) {
  if (y.is_zero()) throw DivisionByZero();
  if (y.rad_ == 0) {
    a_ /= y.a_;
    if (rad_ != 0) c_ /= y.a_;
    return *this;
  }
  return *this *= y.inverse();
}

int ExactScalar::sign() const {
  int sa = sgn(a_);
  if (rad_ == 0) return sa;
  int sc = sgn(c_);
  if (sa == 0) return sc;
  if (sa == sc) return sa;
  int cmp_ = cmp(Rational(a_ * a_), Rational(c_ * c_ * rad_));
  return cmp_ > 0 ? sa : sc;
}

std::string ExactScalar::to_string() const {
  std::string s = a_.get_str();
  if (rad_ == 0) return s;
  if (sgn(c_) < 0) {
    Rational m = -c_;
    return s + " - " + m.get_str() + "*sqrt(" + std::to_string(rad_) + ")";
  }
  return s + " + " + c_.get_str() + "*sqrt(" + std::to_string(rad_) + ")";
}

namespace {

std::string_view trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

Rational parse_rational(std::string_view t) {
  t = trim(t);
  if (t.empty()) throw ParseError("empty rational");
  std::string s(t);
  if (s.front() == '+') s.erase(0, 1);
  for (char ch : s)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-'))
      throw ParseError("bad rational '" + std::string(t) + "'");
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + std::string(t) + "'");
  if (sgn(r.get_den()) == 0) throw ParseError("zero denominator in '" + std::string(t) + "'");
  r.canonicalize();
  return r;
}

}  // namespace

ExactScalar ExactScalar::parse(std::string_view text) {
  std::string_view t = trim(text);
  std::size_t sq = t.find("sqrt(");
  if (sq == std::string_view::npos) return ExactScalar(parse_rational(t));
  std::size_t close = t.find(')', sq);
  if (close == std::string_view::npos || trim(t.substr(close + 1)).size() != 0)
    throw ParseError("bad surd in '" + std::string(text) + "'");
  std::string_view radtxt = trim(t.substr(sq + 5, close - sq - 5));
  unsigned long rad = 0;
  for (char ch : radtxt) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad radicand");
    rad = rad * 10 + static_cast<unsigned long>(ch - '0');
    if (rad > 0xffffffffUL) throw ParseError("radicand too large");
  }
  if (radtxt.empty()) throw ParseError("empty radicand");
  std::string_view head = trim(t.substr(0, sq));
  if (head.empty() || head.back() != '*') throw ParseError("expected '*' before sqrt");
  head = trim(head.substr(0, head.size() - 1));
  // Split "a + c" or "a - c" at the last binary sign; a lone coefficient means a = 0.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] == ' ') {
      std::string_view left = trim(head.substr(0, i));
      if (left.empty() || left.back() == '+' || left.back() == '-') continue;
      split = i;
      break;
    }
  }
  Rational a = 0, c;
  if (split == std::string_view::npos) {
    c = parse_rational(head);
  } else {
    a = parse_rational(head.substr(0, split));
    c = parse_rational(head.substr(split + 1));
    if (head[split] == '-') c = -c;
  }
  return ExactScalar(a, c, static_cast<std::uint32_t>(rad));
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.to_string(); }

ExactScalar q_pow(const ExactScalar& q, long n) {
  if (q.is_zero()) throw DivisionByZero();
  ExactScalar base = n < 0 ? q.inverse() : q;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  ExactScalar result(1);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

QPowers::QPowers(ExactScalar q) : q_(std::move(q)) {
  if (q_.is_zero()) throw DivisionByZero();
  pos_.push_back(ExactScalar(1));
  neg_.push_back(ExactScalar(1));
}

ExactScalar QPowers::operator()(long n) const {
  if (n >= 0) {
    while (pos_.size() <= static_cast<std::size_t>(n)) pos_.push_back(pos_.back() * q_);
    return pos_[static_cast<std::size_t>(n)];
  }
  std::size_t m = static_cast<std::size_t>(-n);
  if (neg_.size() == 1) neg_.push_back(q_.inverse());
  while (neg_.size() <= m) neg_.push_back(neg_.back() * neg_[1]);
  return neg_[m];
}

ExactScalar QPowers::bracket(long n) const {
  return ((*this)(n) - (*this)(-n)) / ((*this)(1) - (*this)(-1));
}

}  // namespace dpg
