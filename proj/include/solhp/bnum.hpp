#pragma once

// B_s = R + R kappa with kappa^2 = -s^2. s = 0 gives the dual numbers.

#include <string>

#include "matrix.hpp"

namespace solhp {

class BNum {
 public:
  BNum() = default;
  BNum(long long v) : re_(v) {}  // NOLINT
  BNum(QuadNum re, QuadNum im = QuadNum(), QuadNum s2 = QuadNum())
      : re_(std::move(re)), im_(std::move(im)), s2_(std::move(s2)) {
    if (!s2_.is_rational() || s2_.sign() < 0)
      throw Error(ErrorKind::Arithmetic, "holonomy", "bnum", "s^2 must be a nonnegative rational");
  }

  const QuadNum& re() const { return re_; }
  const QuadNum& im() const { return im_; }
  const QuadNum& s2() const { return s2_; }

  BNum conj() const { return {re_, -im_, s2_}; }
  // z * conj(z), real.
  QuadNum norm() const { return re_ * re_ + s2_ * im_ * im_; }

  BNum operator-() const { return {-re_, -im_, s2_}; }
  friend BNum operator+(const BNum& a, const BNum& b) { return {a.re_ + b.re_, a.im_ + b.im_, ctx(a, b)}; }
  friend BNum operator-(const BNum& a, const BNum& b) { return {a.re_ - b.re_, a.im_ - b.im_, ctx(a, b)}; }
  friend BNum operator*(const BNum& a, const BNum& b) {
    QuadNum s2 = ctx(a, b);
    return {a.re_ * b.re_ - s2 * a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_, s2};
  }
  friend BNum operator/(const BNum& a, const BNum& b) {
    QuadNum n = b.norm();
    if (n.is_zero()) throw Error(ErrorKind::Arithmetic, "holonomy", "bnum", "division by a non-unit");
    BNum p = a * b.conj();
    return {p.re_ / n, p.im_ / n, p.s2_};
  }
  BNum& operator+=(const BNum& b) { return *this = *this + b; }

  friend bool operator==(const BNum& a, const BNum& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const BNum& a, const BNum& b) { return !(a == b); }

  std::string str() const { return re_.str() + " + (" + im_.str() + ")*k"; }

 private:
  // Untagged zeros/ones (s2 == 0, im == 0) adopt the other operand's parameter.
  static QuadNum ctx(const BNum& a, const BNum& b) {
    if (a.s2_ == b.s2_) return a.s2_;
    if (a.s2_.is_zero() && a.im_.is_zero()) return b.s2_;
    if (b.s2_.is_zero() && b.im_.is_zero()) return a.s2_;
    throw Error(ErrorKind::Arithmetic, "holonomy", "bnum", "mixing different s parameters");
  }

  QuadNum re_;
  QuadNum im_;
  QuadNum s2_;
};

using Mat2B = Matrix<BNum>;

inline Mat2B mat2b(const QMatrix& a, const QMatrix& b, const QuadNum& s2 = QuadNum()) {
  Mat2B m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = BNum(a(i, j), b(i, j), s2);
  return m;
}

inline QMatrix real_part(const Mat2B& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).re();
  return r;
}

inline QMatrix kappa_part(const Mat2B& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).im();
  return r;
}

inline BNum det2(const Mat2B& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline Mat2B inverse2(const Mat2B& m) {
  BNum d = det2(m);
  Mat2B r(2, 2);
  r(0, 0) = m(1, 1) / d;
  r(0, 1) = -m(0, 1) / d;
  r(1, 0) = -m(1, 0) / d;
  r(1, 1) = m(0, 0) / d;
  return r;
}

// Conjugate transpose.
inline Mat2B star(const Mat2B& m) {
  Mat2B r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conj();
  return r;
}

inline QuadNum det2(const QMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline QMatrix inverse2(const QMatrix& m) {
  QuadNum d = det2(m);
  if (d.is_zero()) throw Error(ErrorKind::Arithmetic, "holonomy", "inverse", "singular 2x2 matrix");
  return QMatrix{{m(1, 1) / d, -m(0, 1) / d}, {-m(1, 0) / d, m(0, 0) / d}};
}

}  // namespace solhp
