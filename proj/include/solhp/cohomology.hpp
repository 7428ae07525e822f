#pragma once

// Induced action on H^1 of the punctured surface, pairing, homological checks.

#include <string>
#include <vector>

#include "matrix.hpp"
#include "presentation.hpp"

namespace solhp {

// Row i holds abelianize(phi(gamma_i)) on the 2g+n surface slots. Acting on column
// vectors of gamma-values this is the pullback, so a and b are its eigenvectors.
inline QMatrix action_matrix(const MappingTorusInput& in) {
  std::size_t N = in.size();
  QMatrix m(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    auto ab = abelianize(in.image(in.gen(i)), in.g, in.n);
    for (std::size_t j = 0; j < N; ++j) m(i, j) = in.num(ab[j]);
  }
  return m;
}

// Permutation block P: row j has a 1 in column k_j.
inline QMatrix permutation_block(const MappingTorusInput& in) {
  BoundaryData bd = boundary_data(in);
  QMatrix p(static_cast<std::size_t>(in.n), static_cast<std::size_t>(in.n));
  for (int j = 0; j < in.n; ++j) p(static_cast<std::size_t>(j), static_cast<std::size_t>(bd.perm[j] - 1)) = 1;
  return p;
}

inline QMatrix shift_identity(const QMatrix& m, const QuadNum& c) {
  QMatrix r = m;
  for (std::size_t i = 0; i < r.rows(); ++i) r(i, i) -= c;
  return r;
}

inline QuadNum intersection_pairing(const QVector& u, const QVector& v, int g) {
  if (u.size() < static_cast<std::size_t>(2 * g) || v.size() < static_cast<std::size_t>(2 * g))
    throw Error(ErrorKind::Validation, "cohomology", "pairing", "vectors shorter than 2g");
  QuadNum s;
  for (int i = 0; i < g; ++i) {
    auto a = static_cast<std::size_t>(i);
    auto b = static_cast<std::size_t>(g + i);
    s += u[a] * v[b] - u[b] * v[a];
  }
  return s;
}

inline QMatrix closed_block(const MappingTorusInput& in) {
  auto m = static_cast<std::size_t>(2 * in.g);
  return action_matrix(in).block(0, 0, m, m);
}

inline bool eigenvalue_one_check(const MappingTorusInput& in) {
  QMatrix b = shift_identity(closed_block(in), QuadNum(1));
  return !determinant(b).is_zero();
}

struct Check {
  std::string name;
  bool passed = false;
  QVector residual;
  std::string detail;
};

struct HomologyReport {
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

inline HomologyReport validate_homology(const MappingTorusInput& in) {
  HomologyReport rep;
  QMatrix m = action_matrix(in);
  QuadNum linv = in.lambda.inverse();

  auto eig = [&](const std::string& name, const QVector& v, const QuadNum& ev) {
    QVector mv = m * v;
    QVector res(v.size());
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      res[i] = mv[i] - ev * v[i];
      ok = ok && res[i].is_zero();
    }
    bool nonzero = false;
    for (const auto& x : v) nonzero = nonzero || !x.is_zero();
    rep.checks.push_back({name, ok && nonzero, res, nonzero ? "" : "zero vector"});
  };
  eig("mu_u is a lambda-eigenvector", in.mu_u, in.lambda);
  eig("mu_s is a 1/lambda-eigenvector", in.mu_s, linv);

  // Homology class of phi(prod [a_i,b_i]) (prod phi(d_j))^-1 must be a multiple of (1,..,1) on deltas.
  Word comm;
  for (int i = 1; i <= in.g; ++i)
    comm *= commutator(in.image(Gen::alpha(i)), in.image(Gen::beta(i)));
  Word deltas;
  for (int j = 1; j <= in.n; ++j) deltas *= in.image(Gen::delta(j));
  auto ab = abelianize(comm * deltas.inverse(), in.g, in.n);
  QVector res;
  bool ok = true;
  long c = ab[static_cast<std::size_t>(2 * in.g)];
  for (std::size_t s = 0; s < in.size(); ++s) {
    long expect = s < static_cast<std::size_t>(2 * in.g) ? 0 : c;
    res.push_back(in.num(ab[s] - expect));
    ok = ok && ab[s] == expect;
  }
  rep.checks.push_back({"surface relation respected in homology", ok, res, ""});

  QMatrix shifted = shift_identity(closed_block(in), QuadNum(1));
  QuadNum det = determinant(shifted);
  rep.checks.push_back({"1 is not an eigenvalue of the closed-surface block", !det.is_zero(), {det},
                        "det(phi* - I) = " + det.str()});
  return rep;
}

}  // namespace solhp
