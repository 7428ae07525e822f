#pragma once

// rho0, rho_HP, rho_Sol as exact matrices; Hermitian model; s -> 0 limit.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deformation.hpp"
#include "series.hpp"

namespace solhp {

using Mat4 = QMatrix;
using Rep = std::map<Gen, Mat4>;

inline Mat2B rho0_matrix(const Gen& g, const MappingTorusInput& in) {
  QMatrix r = rho0(in, g);
  return mat2b(r, QMatrix(2, 2));
}

namespace detail {

// Hermitian basis: P(e_k) = X_k + Y_k kappa.
inline void hermitian_basis(std::size_t k, QMatrix& X, QMatrix& Y) {
  X = QMatrix(2, 2);
  Y = QMatrix(2, 2);
  switch (k) {
    case 0: X = QMatrix{{1, 0}, {0, 1}}; break;
    case 1: X = QMatrix{{1, 0}, {0, -1}}; break;
    case 2: X = QMatrix{{0, 1}, {1, 0}}; break;
    default: Y = QMatrix{{0, 1}, {-1, 0}}; break;
  }
}

}  // namespace detail

// Image of X + Y kappa0 under conjugation by A + B kappa0, divided by det A.
inline Mat4 hp_from_pair(const QMatrix& A, const QMatrix& B) {
  QuadNum det = det2(A);
  if (det.sign() <= 0) throw Error(ErrorKind::Validation, "holonomy", "hp_from_pair", "det A must be positive");
  QMatrix Ainv = inverse2(A);
  QMatrix BA = B * Ainv;
  if (!(BA(0, 0) + BA(1, 1)).is_zero())
    throw Error(ErrorKind::Validation, "holonomy", "hp_from_pair", "tr(B A^-1) must vanish");
  QMatrix At = A.transpose();
  QMatrix Bt = B.transpose();
  QuadNum half = QuadNum::rational(1, 2);
  Mat4 m(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    QMatrix X, Y;
    detail::hermitian_basis(k, X, Y);
    QMatrix Xp = A * X * At;
    QMatrix Yp = B * X * At - A * X * Bt + A * Y * At;
    m(0, k) = half * (Xp(0, 0) + Xp(1, 1)) / det;
    m(1, k) = half * (Xp(0, 0) - Xp(1, 1)) / det;
    m(2, k) = Xp(0, 1) / det;
    m(3, k) = Yp(0, 1) / det;
  }
  return m;
}

inline Rep hp_rep(const MappingTorusInput& in, const DeformationCocycle& z) {
  Rep rep;
  for (std::size_t s = 0; s <= in.size(); ++s) {
    Gen g = s < in.size() ? in.gen(s) : Gen::tau();
    QMatrix A = rho0(in, g);
    rep[g] = hp_from_pair(A, sl2_matrix(z.at(in, g)) * A);
  }
  return rep;
}

inline Rep sol_rep(const MappingTorusInput& in, const QuadNum& z_scale = QuadNum(1)) {
  Rep rep;
  for (std::size_t s = 0; s < in.size(); ++s) {
    Mat4 m = Mat4::identity(4);
    QuadNum b = z_scale * in.b(s);
    m(2, 0) = b;
    m(2, 1) = b;
    m(3, 0) = in.a(s);
    m(3, 1) = -in.a(s);
    rep[in.gen(s)] = m;
  }
  QuadNum l = in.lambda, li = in.lambda.inverse(), half = QuadNum::rational(1, 2);
  Mat4 t = Mat4::identity(4);
  t(0, 0) = t(1, 1) = half * (l + li);
  t(0, 1) = t(1, 0) = half * (l - li);
  rep[Gen::tau()] = t;
  return rep;
}

inline bool is_hp_form(const Mat4& m) {
  QMatrix J{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  QMatrix U = m.block(0, 0, 3, 3);
  if (U.transpose() * J * U != J) return false;
  return m(0, 3).is_zero() && m(1, 3).is_zero() && m(2, 3).is_zero() && m(3, 3) == QuadNum(1);
}

struct RelationResult {
  std::string name;
  bool passed = false;
  bool up_to_sign = false;   // product was -I
  std::size_t row = 0, col = 0;
  QuadNum max_residual;      // largest |entry of product - I|
};

inline Mat4 word_image(const Rep& rep, const Word& w) {
  Mat4 m = Mat4::identity(4);
  std::map<Gen, Mat4> inv;
  for (const Letter& l : w.letters()) {
    const Mat4& g = rep.at(l.gen);
    if (l.exp > 0) {
      m = m * g;
    } else {
      auto it = inv.find(l.gen);
      if (it == inv.end()) it = inv.emplace(l.gen, inverse(g)).first;
      m = m * it->second;
    }
  }
  return m;
}

inline std::vector<RelationResult> verify_relations(const Rep& rep, const MappingTorusInput& in) {
  std::vector<RelationResult> out;
  Mat4 id = Mat4::identity(4);
  for (const Relator& r : relators(in)) {
    Mat4 m = word_image(rep, r.word);
    RelationResult res;
    res.name = r.name;
    Mat4 diff = m - id;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (diff(i, j).abs() > res.max_residual) {
          res.max_residual = diff(i, j).abs();
          res.row = i;
          res.col = j;
        }
    res.passed = res.max_residual.is_zero();
    if (!res.passed && m == -id) {
      res.passed = true;
      res.up_to_sign = true;
    }
    out.push_back(res);
  }
  return out;
}

inline bool all_passed(const std::vector<RelationResult>& v) {
  for (const auto& r : v)
    if (!r.passed) return false;
  return true;
}

using SMatrix = Matrix<Series>;

inline constexpr int kSeriesLo = -2;
inline constexpr int kSeriesHi = 2;

inline Series sconst(const QuadNum& c) { return Series::constant(c, kSeriesLo, kSeriesHi); }
inline Series smono(const QuadNum& c, int k) { return Series::monomial(c, k, kSeriesLo, kSeriesHi); }

inline SMatrix to_series(const Mat4& m) {
  SMatrix r(m.rows(), m.cols(), sconst(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = sconst(m(i, j));
  return r;
}

// r1(s) and its inverse.
inline SMatrix rescale_r1(bool inverse_) {
  QuadNum h = QuadNum::rational(1, 2);
  Series c = smono(h, 1) + smono(h, -1);
  Series sh = smono(h, 1) - smono(h, -1);
  SMatrix m(4, 4, sconst(0));
  m(0, 0) = m(1, 1) = c;
  m(0, 1) = m(1, 0) = inverse_ ? -sh : sh;
  if (!inverse_) {
    m(2, 3) = smono(-1, 1);
    m(3, 2) = smono(1, -1);
  } else {
    m(2, 3) = smono(1, 1);
    m(3, 2) = smono(-1, -1);
  }
  return m;
}

inline SMatrix conjugate_r1(const Mat4& m) { return rescale_r1(false) * to_series(m) * rescale_r1(true); }

inline Mat4 limit0(const SMatrix& m) {
  Mat4 r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      try {
        r(i, j) = series_limit0(m(i, j));
      } catch (const Error& e) {
        throw Error(ErrorKind::Verification, "holonomy", "sol_limit",
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + e.what());
      }
    }
  return r;
}

inline Rep sol_limit(const Rep& hp) {
  Rep out;
  for (const auto& [g, m] : hp) out[g] = limit0(conjugate_r1(m));
  return out;
}

// x' with A P_s(x) A^* = P_s(x') after dividing by |det A|.
inline QVector hermitian_action(const Mat2B& A, const QVector& x) {
  if (x.size() != 4) throw Error(ErrorKind::Validation, "holonomy", "hermitian_action", "x needs 4 entries");
  QuadNum s2 = A(0, 0).s2();
  BNum det = det2(A);
  if (!det.im().is_zero() || det.re().is_zero())
    throw Error(ErrorKind::Validation, "holonomy", "hermitian_action", "det A must be real and nonzero");
  QuadNum scale = det.re().abs();
  Mat2B P(2, 2);
  P(0, 0) = BNum(x[0] + x[1], 0, s2);
  P(0, 1) = BNum(x[2], x[3], s2);
  P(1, 0) = BNum(x[2], -x[3], s2);
  P(1, 1) = BNum(x[0] - x[1], 0, s2);
  Mat2B H = A * P * star(A);
  QuadNum h = QuadNum::rational(1, 2);
  return {h * (H(0, 0).re() + H(1, 1).re()) / scale, h * (H(0, 0).re() - H(1, 1).re()) / scale,
          H(0, 1).re() / scale, H(0, 1).im() / scale};
}

inline QuadNum s_form(const QVector& x, const QuadNum& s2) {
  return -(x[0] * x[0]) + x[1] * x[1] + x[2] * x[2] + s2 * x[3] * x[3];
}

}  // namespace solhp
