#pragma once

// Truncated Laurent series in one formal parameter with QuadNum coefficients.

#include <algorithm>
#include <string>
#include <vector>

#include "qfield.hpp"

namespace solhp {

class Series {
 public:
  Series() : Series(0, 0) {}
  // Zero series tracking exponents lo..hi.
  Series(int lo, int hi) : lo_(lo), hi_(hi) {
    if (hi < lo) hi_ = lo - 1;
    c_.assign(static_cast<std::size_t>(hi_ - lo_ + 1), QuadNum());
  }

  static Series constant(const QuadNum& c, int lo, int hi) { return monomial(c, 0, lo, hi); }
  static Series monomial(const QuadNum& c, int k, int lo, int hi) {
    Series s(lo, hi);
    if (k >= lo && k <= hi) s.c_[static_cast<std::size_t>(k - lo)] = c;
    return s;
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }

  QuadNum coeff(int k) const {
    if (k < lo_ || k > hi_) return QuadNum();
    return c_[static_cast<std::size_t>(k - lo_)];
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const QuadNum& x) { return x.is_zero(); });
  }

  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, 1); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, -1); }
  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.lo_ + b.lo_, std::min(a.hi_, b.hi_));
    for (int i = a.lo_; i <= a.hi_; ++i) {
      const QuadNum& x = a.coeff(i);
      if (x.is_zero()) continue;
      for (int j = b.lo_; j <= b.hi_ && i + j <= r.hi_; ++j) {
        const QuadNum& y = b.coeff(j);
        if (y.is_zero()) continue;
        r.c_[static_cast<std::size_t>(i + j - r.lo_)] += x * y;
      }
    }
    return r;
  }
  friend Series operator*(const QuadNum& k, const Series& a) {
    Series r = a;
    for (auto& x : r.c_) x = k * x;
    return r;
  }

  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }

  friend bool operator==(const Series& a, const Series& b) {
    int lo = std::min(a.lo_, b.lo_);
    int hi = std::min(a.hi_, b.hi_);
    for (int k = lo; k <= hi; ++k)
      if (a.coeff(k) != b.coeff(k)) return false;
    return true;
  }

  // Terms as "c*s^k", joined with " + "; "0" for the zero series.
  std::string str(const std::string& var = "s") const {
    std::string out;
    for (int k = lo_; k <= hi_; ++k) {
      const QuadNum& x = coeff(k);
      if (x.is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + x.str() + ")*" + var + "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static Series combine(const Series& a, const Series& b, int sgn) {
    Series r(std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
    for (int k = r.lo_; k <= r.hi_; ++k) {
      QuadNum v = sgn > 0 ? a.coeff(k) + b.coeff(k) : a.coeff(k) - b.coeff(k);
      r.c_[static_cast<std::size_t>(k - r.lo_)] = v;
    }
    return r;
  }

  int lo_;
  int hi_;
  std::vector<QuadNum> c_;
};

// Value at parameter -> 0. Throws if a negative power survives.
inline QuadNum series_limit0(const Series& a) {
  for (int k = a.lo(); k < 0 && k <= a.hi(); ++k) {
    if (!a.coeff(k).is_zero())
      throw Error(ErrorKind::Verification, "qfield", "limit", "pole at 0: coefficient of s^" + std::to_string(k) +
                                                                  " is " + a.coeff(k).str());
  }
  if (a.hi() < 0) throw Error(ErrorKind::Verification, "qfield", "limit", "window truncated below s^0");
  return a.coeff(0);
}

}  // namespace solhp
