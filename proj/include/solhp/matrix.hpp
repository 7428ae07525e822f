#pragma once

// Dense matrices over an exact ring, plus field linear algebra over QuadNum.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qfield.hpp"

namespace solhp {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : r_(rows), c_(cols), a_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw Error(ErrorKind::Internal, "matrix", "shape", "ragged initializer");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n, const T& zero = T(0), const T& one = T(1)) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v;
    v.reserve(r_);
    for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  Matrix transpose() const {
    Matrix t(c_, r_, r_ && c_ ? a_[0] : T());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc, a_.empty() ? T() : a_[0]);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw Error(ErrorKind::Internal, "matrix", "shape", "product dimension mismatch");
    Matrix r(a.r_, b.c_, a.a_.empty() ? T() : a.a_[0] - a.a_[0]);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        for (std::size_t j = 0; j < b.c_; ++j) r(i, j) = r(i, j) + x * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.a_) x = s * x;
    return r;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.c_ != v.size()) throw Error(ErrorKind::Internal, "matrix", "shape", "matrix-vector mismatch");
    std::vector<T> r(a.r_, v.empty() ? T() : v[0] - v[0]);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t j = 0; j < a.c_; ++j) r[i] = r[i] + a(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (std::size_t k = 0; k < a.a_.size(); ++k)
      if (!(a.a_[k] == b.a_[k])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw Error(ErrorKind::Internal, "matrix", "shape", "size mismatch");
  }

  std::size_t r_ = 0;
  std::size_t c_ = 0;
  std::vector<T> a_;
};

using QMatrix = Matrix<QuadNum>;
using QVector = std::vector<QuadNum>;

// Row-major bracketed text: [[a, b], [c, d]].
template <class T>
std::string matrix_str(const Matrix<T>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).str();
    s += "]";
  }
  return s + "]";
}

inline std::string vector_str(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

// Reduced row echelon form. Pivot is the first row (from the current one down)
// whose entry is nonzero, columns scanned left to right.
struct Echelon {
  QMatrix m;
  std::vector<std::size_t> pivots;  // pivot column of row r
};

inline Echelon rref(QMatrix m, std::size_t ncols_to_reduce = static_cast<std::size_t>(-1)) {
  std::size_t ncols = std::min(ncols_to_reduce, m.cols());
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).sign() == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    QuadNum inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      QuadNum f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) = m(i, j) - f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.m = std::move(m);
  return e;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

// Nullspace basis; each vector has a 1 in its free column and 0 in the other free columns.
inline std::vector<QVector> kernel(const QMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), QuadNum());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "matrix", "inverse", "not square");
  std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug, n);
  if (e.pivots.size() != n) throw Error(ErrorKind::Arithmetic, "matrix", "inverse", "singular matrix");
  return e.m.block(0, n, n, n);
}

// Polynomial with ascending coefficients.
struct Poly {
  std::vector<QuadNum> c;

  int degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
      if (!c[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly r{std::vector<QuadNum>(a.c.size() + b.c.size() - 1)};
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t k = 0; k < n; ++k) {
      QuadNum x = k < a.c.size() ? a.c[k] : QuadNum();
      QuadNum y = k < b.c.size() ? b.c[k] : QuadNum();
      if (x != y) return false;
    }
    return true;
  }
  std::string str() const {
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      const QuadNum& x = c[static_cast<std::size_t>(k)];
      if (x.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + x.str() + ")";
      if (k > 0) s += k == 1 ? "*x" : "*x^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }
};

// Quotient and remainder of a by b (b nonzero).
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  int db = b.degree();
  if (db < 0) throw Error(ErrorKind::Arithmetic, "matrix", "poly", "division by zero polynomial");
  int da = a.degree();
  Poly q{std::vector<QuadNum>(static_cast<std::size_t>(std::max(da - db + 1, 1)))};
  const QuadNum& lead = b.c[static_cast<std::size_t>(db)];
  for (int k = da; k >= db; --k) {
    QuadNum f = a.c[static_cast<std::size_t>(k)] / lead;
    if (f.is_zero()) continue;
    q.c[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j)
      a.c[static_cast<std::size_t>(k - db + j)] -= f * b.c[static_cast<std::size_t>(j)];
  }
  a.c.resize(static_cast<std::size_t>(std::max(db, 1)));
  return {q, a};
}

inline bool poly_divides(const Poly& divisor, const Poly& a) {
  return poly_divmod(a, divisor).second.degree() < 0;
}

// det(xI - M), ascending coefficients, by Berkowitz (division free).
inline Poly char_poly(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "matrix", "char_poly", "not square");
  std::size_t n = m.rows();
  // v holds coefficients of the char poly of the leading r x r block, highest degree first.
  std::vector<QuadNum> v{QuadNum(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R A C, ... with A the leading r x r block.
    std::vector<QuadNum> t;
    t.push_back(1);
    t.push_back(-m(r, r));
    std::vector<QuadNum> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      QuadNum acc;
      for (std::size_t j = 0; j < r; ++j) acc += m(r, j) * col[j];
      t.push_back(-acc);
      std::vector<QuadNum> next(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += m(i, j) * col[j];
      col = std::move(next);
    }
    std::vector<QuadNum> w(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j) w[i] += t[i - j] * v[j];
    v = std::move(w);
  }
  Poly p;
  p.c.assign(v.rbegin(), v.rend());
  return p;
}

inline QuadNum determinant(const QMatrix& m) {
  Poly p = char_poly(m);
  QuadNum c0 = p.c.empty() ? QuadNum(1) : p.c[0];
  return m.rows() % 2 == 0 ? c0 : -c0;
}

// p(M) by Horner.
inline QMatrix poly_eval(const Poly& p, const QMatrix& m) {
  std::size_t n = m.rows();
  QMatrix acc(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.c[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace solhp
