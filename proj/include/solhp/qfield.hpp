#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt d).

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace solhp {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

// (p + q*sqrt(d)) / den, kept in lowest terms with den > 0.
// d == 0 marks a plain rational that has not been tied to a field yet;
// it combines with any field. Combining two different nonzero d throws.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(long long v) : p_(v) {}  // NOLINT: integers promote implicitly

  static QuadNum make(BigInt p, BigInt q, BigInt den, std::int64_t d) {
    if (den == 0) throw Error(ErrorKind::Arithmetic, "qfield", "construct", "zero denominator");
    if (d < 0 || (d == 1)) throw Error(ErrorKind::Arithmetic, "qfield", "construct", "field parameter must be >= 2");
    QuadNum r;
    r.p_ = std::move(p);
    r.q_ = std::move(q);
    r.den_ = std::move(den);
    r.d_ = d;
    if (r.q_ != 0 && d == 0)
      throw Error(ErrorKind::Arithmetic, "qfield", "construct", "irrational part without a field");
    r.normalize();
    return r;
  }
  static QuadNum rational(BigInt p, BigInt den = 1, std::int64_t d = 0) {
    return make(std::move(p), 0, std::move(den), d);
  }
  static QuadNum root(std::int64_t d) { return make(0, 1, 1, d); }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& den() const { return den_; }
  std::int64_t disc() const { return d_; }

  bool is_zero() const { return p_ == 0 && q_ == 0; }
  bool is_rational() const { return q_ == 0; }

  // Same value tagged with field d (for rationals built without a field).
  QuadNum in_field(std::int64_t d) const {
    QuadNum r = *this;
    combine_disc(d_, d);
    r.d_ = d == 0 ? d_ : d;
    return r;
  }

  QuadNum conj() const { return make(p_, -q_, den_, d_); }

  // a * conj(a), always rational.
  QuadNum norm() const {
    return make(p_ * p_ - q_ * q_ * d_, 0, den_ * den_, d_);
  }

  QuadNum inverse() const {
    if (is_zero()) throw Error(ErrorKind::Arithmetic, "qfield", "div", "division by zero");
    // den / (p + q r) = den (p - q r) / (p^2 - q^2 d)
    BigInt n = p_ * p_ - q_ * q_ * d_;
    return make(den_ * p_, -den_ * q_, n, d_);
  }

  int sign() const {
    int sp = p_.sign();
    int sq = q_.sign();
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // opposite signs: compare p^2 with q^2 d
    BigInt lhs = p_ * p_;
    BigInt rhs = q_ * q_ * d_;
    return lhs > rhs ? sp : sq;
  }

  QuadNum abs() const { return sign() < 0 ? -*this : *this; }

  QuadNum operator-() const { return make(-p_, -q_, den_, d_); }

  friend QuadNum operator+(const QuadNum& a, const QuadNum& b) {
    std::int64_t d = combine_disc(a.d_, b.d_);
    return make(a.p_ * b.den_ + b.p_ * a.den_, a.q_ * b.den_ + b.q_ * a.den_, a.den_ * b.den_, d);
  }
  friend QuadNum operator-(const QuadNum& a, const QuadNum& b) {
    std::int64_t d = combine_disc(a.d_, b.d_);
    return make(a.p_ * b.den_ - b.p_ * a.den_, a.q_ * b.den_ - b.q_ * a.den_, a.den_ * b.den_, d);
  }
  friend QuadNum operator*(const QuadNum& a, const QuadNum& b) {
    std::int64_t d = combine_disc(a.d_, b.d_);
    return make(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, a.den_ * b.den_, d);
  }
  friend QuadNum operator/(const QuadNum& a, const QuadNum& b) {
    if (b.is_zero()) throw Error(ErrorKind::Arithmetic, "qfield", "div", "division by zero");
    combine_disc(a.d_, b.d_);
    return a * b.inverse();
  }
  QuadNum& operator+=(const QuadNum& b) { return *this = *this + b; }
  QuadNum& operator-=(const QuadNum& b) { return *this = *this - b; }
  QuadNum& operator*=(const QuadNum& b) { return *this = *this * b; }
  QuadNum& operator/=(const QuadNum& b) { return *this = *this / b; }

  // Equality is by value; a rational equals its field-tagged copy.
  friend bool operator==(const QuadNum& a, const QuadNum& b) {
    if (a.q_ != 0 || b.q_ != 0) combine_disc(a.d_, b.d_);
    return a.p_ == b.p_ && a.q_ == b.q_ && a.den_ == b.den_;
  }
  friend bool operator!=(const QuadNum& a, const QuadNum& b) { return !(a == b); }
  friend bool operator<(const QuadNum& a, const QuadNum& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QuadNum& a, const QuadNum& b) { return (a - b).sign() > 0; }

  // Canonical literal: "p", "p/den", "q*r", "q*r/den", "p+q*r", "(p+q*r)/den".
  std::string str() const {
    if (q_ == 0) return den_ == 1 ? p_.str() : p_.str() + "/" + den_.str();
    std::string qpart = q_.str() + "*r";
    if (p_ == 0) return den_ == 1 ? qpart : qpart + "/" + den_.str();
    std::string sum = p_.str() + (q_ > 0 ? "+" : "") + qpart;
    return den_ == 1 ? sum : "(" + sum + ")/" + den_.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadNum& a) { return os << a.str(); }

 private:
  static std::int64_t combine_disc(std::int64_t a, std::int64_t b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw Error(ErrorKind::Arithmetic, "qfield", "field", "mixing Q(sqrt " + std::to_string(a) +
                                                              ") with Q(sqrt " + std::to_string(b) + ")");
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      p_ = -p_;
      q_ = -q_;
    }
    BigInt g = big_gcd(big_gcd(p_, q_), den_);
    if (g > 1) {
      p_ /= g;
      q_ /= g;
      den_ /= g;
    }
    if (p_ == 0 && q_ == 0) den_ = 1;
  }

  BigInt p_ = 0;
  BigInt q_ = 0;
  BigInt den_ = 1;
  std::int64_t d_ = 0;
};

// Integer square-freeness test used when a field is declared.
inline bool is_squarefree(std::int64_t d) {
  if (d < 2) return false;
  for (std::int64_t f = 2; f * f <= d; ++f)
    if (d % (f * f) == 0) return false;
  return true;
}

namespace detail {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, std::int64_t d) : s_(text), d_(d) {}

  QuadNum parse() {
    skip();
    QuadNum value;
    std::size_t terms = 0;
    bool grouped = false;
    if (peek() == '(') {
      ++pos_;
      value = sum(terms);
      skip();
      expect(')');
      grouped = true;
      terms = 1;
    } else {
      value = sum(terms);
    }
    skip();
    if (peek() == '/') {
      if (!grouped && terms > 1) fail("a denominator after a multi-term sum needs parentheses");
      ++pos_;
      skip();
      BigInt den = integer();
      if (den == 0) fail("zero denominator");
      value = value / QuadNum::rational(den, 1, d_);
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  QuadNum sum(std::size_t& terms) {
    QuadNum acc = QuadNum::rational(0, 1, d_);
    skip();
    int sgn = 1;
    if (peek() == '+' || peek() == '-') {
      sgn = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    acc = term(sgn);
    terms = 1;
    for (;;) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      skip();
      sgn = c == '-' ? -1 : 1;
      if (peek() == '-' || peek() == '+') {
        if (peek() == '-') sgn = -sgn;
        ++pos_;
      }
      acc += term(sgn);
      ++terms;
    }
    return acc;
  }

  QuadNum term(int sgn) {
    skip();
    if (peek() == 'r') {
      ++pos_;
      return root_times(sgn);
    }
    BigInt v = integer();
    if (sgn < 0) v = -v;
    skip();
    if (peek() == '*') {
      ++pos_;
      skip();
      expect('r');
      return root_times(v);
    }
    return QuadNum::rational(v, 1, d_);
  }

  QuadNum root_times(const BigInt& c) {
    if (d_ == 0) fail("'r' used without a field");
    return QuadNum::make(0, c, 1, d_);
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse, "qfield", "literal",
                "malformed number \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view s_;
  std::int64_t d_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses "(p+q*r)/den", "p/den", "q*r", "-4*r", bare integers. r is sqrt(d).
inline QuadNum parse_quadnum(std::string_view text, std::int64_t d) {
  return detail::LiteralParser(text, d).parse();
}

}  // namespace solhp
