#pragma once

// Infinitesimal cone angles along the singular orbits.

#include <map>
#include <string>
#include <vector>

#include "holonomy.hpp"

namespace solhp {

inline QuadNum meridian_omega(const DeformationCocycle& z, const MappingTorusInput& in, int j) {
  if (j < 1 || j > in.n) throw Error(ErrorKind::Validation, "cone", "meridian", "singular point index out of range");
  return QuadNum(2) * z.y.at(in.slot(Gen::delta(j)));
}

struct OrbitCompat {
  int rep = 0;          // representative j
  int m = 0;            // orbit size
  Word v;               // phi^m(d_j) = v d_j v^-1
  QuadNum A;            // upper-right entry of rho0(v)
  QuadNum lhs, rhs;     // x(lambda^m - 1) and -2 y A
  bool holds = false;
};

inline Word phi_power(const MappingTorusInput& in, const Word& w, int m) {
  Word r = w;
  for (int k = 0; k < m; ++k) r = in.apply_phi(r);
  return r;
}

inline OrbitCompat boundary_compat_detail(const MappingTorusInput& in, const DeformationCocycle& z,
                                          const std::vector<int>& orbit) {
  if (orbit.empty()) throw Error(ErrorKind::Validation, "cone", "boundary", "empty orbit");
  OrbitCompat oc;
  oc.rep = orbit.front();
  oc.m = static_cast<int>(orbit.size());
  Gen dj = Gen::delta(oc.rep);
  ConjugacyForm cf = extract_conjugacy(phi_power(in, Word::letter(dj), oc.m));
  if (!(cf.core == Letter{dj, 1}))
    throw Error(ErrorKind::Validation, "cone", "boundary",
                "phi^" + std::to_string(oc.m) + "(" + dj.token() + ") is not a conjugate of " + dj.token());
  oc.v = cf.conjugator;
  oc.A = rho0_word(in, oc.v)(0, 1);
  QuadNum lm = in.num(1);
  for (int k = 0; k < oc.m; ++k) lm *= in.lambda;
  std::size_t s = in.slot(dj);
  oc.lhs = z.x[s] * (lm - QuadNum(1));
  oc.rhs = QuadNum(-2) * z.y[s] * oc.A;
  oc.holds = oc.lhs == oc.rhs;
  return oc;
}

inline bool boundary_compat(const MappingTorusInput& in, const DeformationCocycle& z, const std::vector<int>& orbit) {
  return boundary_compat_detail(in, z, orbit).holds;
}

// 2(a_i b_{g+i} - a_{g+i} b_i), checked against the (4,3) entry of the HP commutator.
inline QuadNum commutator_omega(const MappingTorusInput& in, int i) {
  if (i < 1 || i > in.g) throw Error(ErrorKind::Validation, "cone", "commutator", "index out of range");
  std::size_t a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(in.g + i - 1);
  QuadNum w = QuadNum(2) * (in.a(a) * in.b(b) - in.a(b) * in.b(a));

  auto hp = [&](std::size_t s) {
    QMatrix A = rho0(in, in.gen(s));
    return hp_from_pair(A, sl2_matrix({0, 0, in.b(s)}) * A);
  };
  Mat4 ha = hp(a), hb = hp(b);
  Mat4 c = ha * hb * inverse(ha) * inverse(hb);
  if (c(3, 2) != w)
    throw Error(ErrorKind::Internal, "cone", "commutator",
                "formula " + w.str() + " disagrees with matrix entry " + c(3, 2).str());
  return w;
}

inline QuadNum omega_sum(const MappingTorusInput& in) {
  QuadNum t = in.num(0);
  for (int i = 1; i <= in.g; ++i) t += commutator_omega(in, i);
  return t;
}

inline QuadNum total_omega(const MappingTorusInput& in) {
  QuadNum t = omega_sum(in);
  if (t.is_zero())
    throw Error(ErrorKind::Verification, "cone", "total omega",
                "degenerate intersection pairing: input inconsistent with a nonzero total angle");
  return t;
}

// omega_tot / i(a, b) with this library's pairing.
inline QuadNum pairing_factor(const MappingTorusInput& in) {
  return total_omega(in) / intersection_pairing(in.mu_u, in.mu_s, in.g);
}

// Equal split of the constrained total over singular points, or the unique
// admissible point when the constraints leave no freedom.
inline std::map<std::size_t, QuadNum> decreasing_choice(const MappingTorusInput& in, const QuadNum& z_scale) {
  QuadNum wt = total_omega(in) * z_scale;
  if (wt.sign() > 0)
    throw Error(ErrorKind::Validation, "cone", "decreasing",
                "total angle " + wt.str() + " is positive; flip the orientation of the stable measure (negate mu_s)");
  AffineDeformation aff = solve_affine(in, z_scale);
  QuadNum per_point = QuadNum::rational(1, 2) * wt / in.num(in.n);
  std::map<std::size_t, QuadNum> choice;
  for (std::size_t o = 0; o < aff.params.size(); ++o) choice[o] = per_point;
  try {
    resolve_params(aff, choice);
    return choice;
  } catch (const Error&) {
  }
  ResolvedParams pinned = resolve_params(aff, {});
  if (!pinned.defaulted.empty())
    throw Error(ErrorKind::Verification, "cone", "decreasing", "equal split rejected by the cocycle constraints");
  std::map<std::size_t, QuadNum> unique;
  for (std::size_t o = 0; o < pinned.values.size(); ++o) {
    if (pinned.values[o].sign() >= 0)
      throw Error(ErrorKind::Verification, "cone", "decreasing",
                  "constraints pin " + aff.params[o] + " = " + pinned.values[o].str() +
                      ", so not every cone angle can decrease (equal split " + per_point.str() + " rejected)");
    unique[o] = pinned.values[o];
  }
  return unique;
}

struct ConeReport {
  struct Component {
    std::vector<int> orbit;
    int m = 0;
    QuadNum omega;
    QuadNum x;
    OrbitCompat compat;
  };
  std::vector<Component> components;
  QuadNum omega_tot;
  QuadNum pairing;         // i(a, b)
  QuadNum pairing_factor;  // omega_tot / i(a, b)
  QuadNum y_sum;           // sum over singular points of omega/2
  bool sum_consistent = false;
  bool decreasing = false;
};

inline ConeReport cone_report(const MappingTorusInput& in, const DeformationCocycle& z, const QuadNum& z_scale) {
  ConeReport r;
  BoundaryData bd = boundary_data(in);
  r.omega_tot = total_omega(in) * z_scale;
  r.pairing = intersection_pairing(in.mu_u, in.mu_s, in.g) * z_scale;
  r.pairing_factor = r.omega_tot / r.pairing;
  r.y_sum = in.num(0);
  r.decreasing = true;
  for (const auto& orbit : bd.orbits) {
    ConeReport::Component c;
    c.orbit = orbit;
    c.m = static_cast<int>(orbit.size());
    c.omega = meridian_omega(z, in, orbit.front());
    c.x = z.x[in.slot(Gen::delta(orbit.front()))];
    c.compat = boundary_compat_detail(in, z, orbit);
    for (int j : orbit) r.y_sum += z.y[in.slot(Gen::delta(j))];
    r.decreasing = r.decreasing && c.omega.sign() < 0;
    r.components.push_back(c);
  }
  r.sum_consistent = QuadNum(2) * r.y_sum == r.omega_tot;
  return r;
}

struct ModelTorusReport {
  Mat4 m_limit, l_limit, m_expected, l_expected;
  bool m_ok = false, l_ok = false;
  std::string error;
  bool ok() const { return error.empty() && m_ok && l_ok; }
};

// Rotation family rho_t(m), rho_t(l) conjugated by diag(1,1,1,1/t), limit t -> 0.
inline ModelTorusReport model_torus_limit(const QuadNum& omega, const QuadNum& mu, const QuadNum& ed, int sign = 1) {
  const int lo = -2, hi = 2;
  auto c = [&](const QuadNum& x) { return Series::constant(x, lo, hi); };
  auto cos_t = [&](const QuadNum& th) {
    return Series::constant(1, lo, hi) + Series::monomial(QuadNum::rational(-1, 2) * th * th, 2, lo, hi);
  };
  auto sin_t = [&](const QuadNum& th) { return Series::monomial(th, 1, lo, hi); };
  QuadNum half = QuadNum::rational(1, 2);
  QuadNum C = half * (ed + ed.inverse()), S = half * (ed - ed.inverse());
  QuadNum sg = sign;

  SMatrix m = to_series(Mat4::identity(4)), l = to_series(Mat4::identity(4));
  m(2, 2) = cos_t(omega);
  m(2, 3) = -sin_t(omega);
  m(3, 2) = sin_t(omega);
  m(3, 3) = cos_t(omega);
  l(0, 0) = l(1, 1) = c(C);
  l(0, 1) = l(1, 0) = c(S);
  l(2, 2) = sg * cos_t(mu);
  l(2, 3) = -sin_t(mu);
  l(3, 2) = sin_t(mu);
  l(3, 3) = sg * cos_t(mu);

  SMatrix r = to_series(Mat4::identity(4)), rinv = to_series(Mat4::identity(4));
  r(3, 3) = Series::monomial(1, -1, lo, hi);
  rinv(3, 3) = Series::monomial(1, 1, lo, hi);

  ModelTorusReport rep;
  rep.m_expected = Mat4::identity(4);
  rep.m_expected(3, 2) = omega;
  rep.l_expected = Mat4::identity(4);
  rep.l_expected(0, 0) = rep.l_expected(1, 1) = C;
  rep.l_expected(0, 1) = rep.l_expected(1, 0) = S;
  rep.l_expected(2, 2) = rep.l_expected(3, 3) = sg;
  rep.l_expected(3, 2) = mu;
  try {
    rep.m_limit = limit0(r * m * rinv);
    rep.l_limit = limit0(r * l * rinv);
  } catch (const Error& e) {
    rep.error = e.what();
    return rep;
  }
  rep.m_ok = rep.m_limit == rep.m_expected;
  rep.l_ok = rep.l_limit == rep.l_expected;
  return rep;
}

}  // namespace solhp
