#pragma once

// Twisted cocycles at the metabelian representation rho0.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bnum.hpp"
#include "cohomology.hpp"

namespace solhp {

// Affine expression sum_k c_k u_k + constant.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(QuadNum constant) : c_(std::move(constant)) {}  // NOLINT
  static LinExpr var(int id, const QuadNum& coef = QuadNum(1)) {
    LinExpr e;
    e.add_term(id, coef);
    return e;
  }

  const std::map<int, QuadNum>& terms() const { return t_; }
  const QuadNum& constant() const { return c_; }
  QuadNum coeff(int id) const {
    auto it = t_.find(id);
    return it == t_.end() ? QuadNum() : it->second;
  }
  bool is_constant() const { return t_.empty(); }
  bool is_zero() const { return t_.empty() && c_.is_zero(); }

  void add_term(int id, const QuadNum& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(id, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend LinExpr operator+(LinExpr a, const LinExpr& b) {
    for (const auto& [id, c] : b.t_) a.add_term(id, c);
    a.c_ += b.c_;
    return a;
  }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) {
    for (const auto& [id, c] : b.t_) a.add_term(id, -c);
    a.c_ -= b.c_;
    return a;
  }
  LinExpr operator-() const { return LinExpr() - *this; }
  friend LinExpr operator*(const QuadNum& k, const LinExpr& a) {
    LinExpr r;
    if (k.is_zero()) return r;
    for (const auto& [id, c] : a.t_) r.t_.emplace(id, k * c);
    r.c_ = k * a.c_;
    return r;
  }
  LinExpr& operator+=(const LinExpr& b) { return *this = *this + b; }
  friend bool operator==(const LinExpr& a, const LinExpr& b) { return (a - b).is_zero(); }

  // Replace variables by expressions; unmapped variables stay.
  LinExpr substitute(const std::function<std::optional<LinExpr>(int)>& f) const {
    LinExpr r(c_);
    for (const auto& [id, c] : t_) {
      auto v = f(id);
      r += v ? c * *v : LinExpr::var(id, c);
    }
    return r;
  }

  QuadNum evaluate(const std::function<QuadNum(int)>& value) const {
    QuadNum s = c_;
    for (const auto& [id, c] : t_) s += c * value(id);
    return s;
  }

  std::string str(const std::function<std::string(int)>& name) const {
    std::string s;
    if (!c_.is_zero() || t_.empty()) s = c_.str();
    for (const auto& [id, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")*" + name(id);
    }
    return s;
  }

 private:
  std::map<int, QuadNum> t_;
  QuadNum c_;
};

// sl2 element in the basis e1 = [[0,1],[0,0]], e2 = diag(1,-1), e3 = [[0,0],[1,0]].
template <class T>
using Sl2 = std::array<T, 3>;

inline QMatrix sl2_matrix(const Sl2<QuadNum>& v) { return QMatrix{{v[1], v[0]}, {v[2], -v[1]}}; }

inline Sl2<QuadNum> sl2_coords(const QMatrix& m) { return {m(0, 1), m(0, 0), m(1, 0)}; }

template <class T>
Sl2<T> apply3(const QMatrix& ad, const Sl2<T>& v) {
  Sl2<T> r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i] = r[i] + ad(i, j) * v[j];
  return r;
}

// rho0 in GL2: gamma_i -> [1, a_i; 0, 1], tau -> diag(lambda, 1).
inline QMatrix rho0(const MappingTorusInput& in, const Gen& x) {
  if (x.cls == GenClass::Tau) return QMatrix{{in.lambda, in.num(0)}, {in.num(0), in.num(1)}};
  return QMatrix{{in.num(1), in.a(in.slot(x))}, {in.num(0), in.num(1)}};
}

inline QMatrix rho0_word(const MappingTorusInput& in, const Word& w) {
  QMatrix m = QMatrix::identity(2);
  for (const Letter& l : w.letters()) m = m * (l.exp > 0 ? rho0(in, l.gen) : inverse2(rho0(in, l.gen)));
  return m;
}

// Adjoint of a single letter on (x, y, z) coordinates.
inline QMatrix ad_letter(const MappingTorusInput& in, const Letter& l) {
  if (l.gen.cls == GenClass::Tau) {
    QuadNum s = l.exp > 0 ? in.lambda : in.lambda.inverse();
    return QMatrix{{s, 0, 0}, {0, 1, 0}, {0, 0, s.inverse()}};
  }
  QuadNum A = in.a(in.slot(l.gen));
  if (l.exp < 0) A = -A;
  return QMatrix{{1, QuadNum(-2) * A, -(A * A)}, {0, 1, A}, {0, 0, 1}};
}

inline QMatrix ad_rho0(const Word& w, const MappingTorusInput& in) {
  QMatrix m = QMatrix::identity(3);
  for (const Letter& l : w.letters()) m = m * ad_letter(in, l);
  return m;
}

// Unknown ids: x_s = s, y0 = N, y_s = N+1+s, z_s = 2N+1+s, x0 = 3N+1, z0 = 3N+2.
struct UnknownLayout {
  int N = 0;
  int total() const { return 3 * N + 3; }
  int x(std::size_t s) const { return static_cast<int>(s); }
  int y(std::size_t s) const { return N + 1 + static_cast<int>(s); }
  int z(std::size_t s) const { return 2 * N + 1 + static_cast<int>(s); }
  int x0() const { return 3 * N + 1; }
  int y0() const { return N; }
  int z0() const { return 3 * N + 2; }
  std::string name(int id) const {
    if (id < N) return "x" + std::to_string(id + 1);
    if (id == N) return "y0";
    if (id <= 2 * N) return "y" + std::to_string(id - N);
    if (id <= 3 * N) return "z" + std::to_string(id - 2 * N);
    return id == 3 * N + 1 ? "x0" : "z0";
  }
};

struct Equation {
  std::string relator;
  char coord;  // 'x', 'y' or 'z'
  LinExpr expr;
};

struct CocycleSystem {
  UnknownLayout layout;
  std::vector<Equation> equations;

  QMatrix matrix() const {
    QMatrix m(equations.size(), static_cast<std::size_t>(layout.total()));
    for (std::size_t r = 0; r < equations.size(); ++r)
      for (const auto& [id, c] : equations[r].expr.terms()) m(r, static_cast<std::size_t>(id)) = c;
    return m;
  }
};

// z(w) by z(uv) = z(u) + Ad_{rho0(u)} z(v) and z(g^-1) = -Ad_{rho0(g^-1)} z(g).
template <class T>
Sl2<T> extend_cocycle(const MappingTorusInput& in, const Word& w, const std::function<Sl2<T>(const Gen&)>& zg) {
  QMatrix prefix = QMatrix::identity(3);
  Sl2<T> total{};
  for (const Letter& l : w.letters()) {
    if (l.exp > 0) {
      Sl2<T> t = apply3(prefix, zg(l.gen));
      for (std::size_t i = 0; i < 3; ++i) total[i] = total[i] + t[i];
      prefix = prefix * ad_letter(in, l);
    } else {
      prefix = prefix * ad_letter(in, l);
      Sl2<T> t = apply3(prefix, zg(l.gen));
      for (std::size_t i = 0; i < 3; ++i) total[i] = total[i] - t[i];
    }
  }
  return total;
}

inline CocycleSystem build_system(const MappingTorusInput& in) {
  CocycleSystem sys;
  sys.layout.N = static_cast<int>(in.size());
  const UnknownLayout& L = sys.layout;
  std::function<Sl2<LinExpr>(const Gen&)> zg = [&](const Gen& x) -> Sl2<LinExpr> {
    if (x.cls == GenClass::Tau) return {LinExpr::var(L.x0()), LinExpr::var(L.y0()), LinExpr::var(L.z0())};
    std::size_t s = in.slot(x);
    return {LinExpr::var(L.x(s)), LinExpr::var(L.y(s)), LinExpr::var(L.z(s))};
  };
  for (const Relator& r : relators(in)) {
    Sl2<LinExpr> v = extend_cocycle<LinExpr>(in, r.word, zg);
    sys.equations.push_back({r.name, 'x', v[0]});
    sys.equations.push_back({r.name, 'y', v[1]});
    sys.equations.push_back({r.name, 'z', v[2]});
  }
  return sys;
}

inline int dim_z1(const CocycleSystem& sys) {
  return sys.layout.total() - static_cast<int>(rank(sys.matrix()));
}

inline int dim_h1(const CocycleSystem& sys) { return dim_z1(sys) - 3; }

struct Blocks {
  QMatrix K, C, D;
};

// Coefficients in the conjugation relators: K = y-part of x-equations, C = z-part
// of x-equations, D = z-part of y-equations. Row i is the relator of gamma_i.
inline Blocks extract_blocks(const CocycleSystem& sys, const MappingTorusInput& in) {
  std::size_t N = in.size();
  const UnknownLayout& L = sys.layout;
  Blocks b{QMatrix(N, N), QMatrix(N, N), QMatrix(N, N)};
  for (std::size_t i = 0; i < N; ++i) {
    const LinExpr& ex = sys.equations[3 * i].expr;
    const LinExpr& ey = sys.equations[3 * i + 1].expr;
    for (std::size_t j = 0; j < N; ++j) {
      b.K(i, j) = ex.coeff(L.y(j));
      b.C(i, j) = ex.coeff(L.z(j));
      b.D(i, j) = ey.coeff(L.z(j));
    }
  }
  return b;
}

struct DeformationCocycle {
  QVector x, y, z;
  QuadNum x0, y0, z0;

  static DeformationCocycle zero(std::size_t N) {
    return {QVector(N), QVector(N), QVector(N), QuadNum(), QuadNum(), QuadNum()};
  }
  bool operator==(const DeformationCocycle&) const = default;

  Sl2<QuadNum> at(const MappingTorusInput& in, const Gen& g) const {
    if (g.cls == GenClass::Tau) return {x0, y0, z0};
    std::size_t s = in.slot(g);
    return {x[s], y[s], z[s]};
  }
  QuadNum value(const UnknownLayout& L, int id) const {
    auto N = static_cast<std::size_t>(L.N);
    auto u = static_cast<std::size_t>(id);
    if (id < L.N) return x[u];
    if (id == L.y0()) return y0;
    if (id <= 2 * L.N) return y[u - N - 1];
    if (id <= 3 * L.N) return z[u - 2 * N - 1];
    return id == L.x0() ? x0 : z0;
  }
};

// Coboundary u - Ad_{rho0(gamma)} u.
inline DeformationCocycle coboundary(const MappingTorusInput& in, const Sl2<QuadNum>& u) {
  DeformationCocycle c = DeformationCocycle::zero(in.size());
  for (std::size_t s = 0; s <= in.size(); ++s) {
    Gen g = s < in.size() ? in.gen(s) : Gen::tau();
    Sl2<QuadNum> au = apply3(ad_letter(in, {g, 1}), u);
    Sl2<QuadNum> v{u[0] - au[0], u[1] - au[1], u[2] - au[2]};
    if (s < in.size()) {
      c.x[s] = v[0];
      c.y[s] = v[1];
      c.z[s] = v[2];
    } else {
      c.x0 = v[0];
      c.y0 = v[1];
      c.z0 = v[2];
    }
  }
  return c;
}

// Residuals of every system equation at a numeric cocycle.
inline QVector residuals(const CocycleSystem& sys, const DeformationCocycle& c) {
  QVector r;
  for (const auto& e : sys.equations)
    r.push_back(e.expr.evaluate([&](int id) { return c.value(sys.layout, id); }));
  return r;
}

// Solution family with z = z_scale * b, x0 = z0 = 0, and one y parameter per orbit.
struct AffineDeformation {
  UnknownLayout layout;
  std::vector<std::string> params;        // e.g. "y5"
  std::vector<std::size_t> param_slot;    // slot of the orbit representative
  std::vector<LinExpr> x, y;              // in parameter ids 0..k-1
  LinExpr y0;
  QVector z;
  std::vector<LinExpr> constraints;       // must vanish
  std::vector<std::string> gauge_zeroed;  // unknowns fixed to 0 to pin the coboundary freedom

  std::string param_name(int id) const { return params.at(static_cast<std::size_t>(id)); }
  std::string show(const LinExpr& e) const {
    return e.str([this](int id) { return param_name(id); });
  }

  DeformationCocycle evaluate(const QVector& p) const {
    auto val = [&](int id) { return p.at(static_cast<std::size_t>(id)); };
    DeformationCocycle c = DeformationCocycle::zero(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) {
      c.x[s] = x[s].evaluate(val);
      c.y[s] = y[s].evaluate(val);
      c.z[s] = z[s];
    }
    c.y0 = y0.evaluate(val);
    return c;
  }
};

inline AffineDeformation solve_affine(const MappingTorusInput& in, const QuadNum& z_scale) {
  if (z_scale.is_zero()) throw Error(ErrorKind::Validation, "deformation", "z_scale", "z_scale must be nonzero");
  if (!eigenvalue_one_check(in))
    throw Error(ErrorKind::Validation, "deformation", "eigenvalue one", "phi* has eigenvalue 1 on the closed surface");
  CocycleSystem sys = build_system(in);
  const UnknownLayout& L = sys.layout;
  BoundaryData bd = boundary_data(in);
  std::size_t N = in.size();

  AffineDeformation out;
  out.layout = L;
  std::map<int, int> param_of;  // unknown id -> parameter id
  for (const auto& orbit : bd.orbits) {
    std::size_t slot = in.slot(Gen::delta(orbit.front()));
    param_of[L.y(slot)] = static_cast<int>(out.params.size());
    out.params.push_back("y" + std::to_string(slot + 1));
    out.param_slot.push_back(slot);
  }
  std::size_t k = out.params.size();

  std::vector<int> unknowns;
  for (std::size_t s = 0; s < N; ++s) unknowns.push_back(L.x(s));
  unknowns.push_back(L.y0());
  for (std::size_t s = 0; s < N; ++s)
    if (!param_of.count(L.y(s))) unknowns.push_back(L.y(s));
  std::map<int, std::size_t> col_of;
  for (std::size_t c = 0; c < unknowns.size(); ++c) col_of[unknowns[c]] = c;

  out.z.resize(N);
  for (std::size_t s = 0; s < N; ++s) out.z[s] = z_scale * in.b(s);

  std::size_t U = unknowns.size();
  QMatrix aug(sys.equations.size(), U + 1 + k);
  for (std::size_t r = 0; r < sys.equations.size(); ++r) {
    const LinExpr& e = sys.equations[r].expr;
    QuadNum rhs = -e.constant();
    for (const auto& [id, c] : e.terms()) {
      if (auto it = col_of.find(id); it != col_of.end()) {
        aug(r, it->second) = c;
      } else if (auto p = param_of.find(id); p != param_of.end()) {
        aug(r, U + 1 + static_cast<std::size_t>(p->second)) -= c;
      } else if (id >= L.z(0) && id < L.z(0) + L.N) {
        rhs -= c * out.z[static_cast<std::size_t>(id - L.z(0))];
      }
      // x0 and z0 are gauged to zero.
    }
    aug(r, U) = rhs;
  }
  Echelon ech = rref(aug, U);

  auto rhs_expr = [&](std::size_t r) {
    LinExpr e(ech.m(r, U));
    for (std::size_t p = 0; p < k; ++p) e.add_term(static_cast<int>(p), ech.m(r, U + 1 + p));
    return e;
  };
  std::map<int, LinExpr> value;
  std::vector<bool> is_pivot(U, false);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    is_pivot[ech.pivots[r]] = true;
    value[unknowns[ech.pivots[r]]] = rhs_expr(r);
  }
  for (std::size_t c = 0; c < U; ++c) {
    if (is_pivot[c]) continue;
    value[unknowns[c]] = LinExpr();
    out.gauge_zeroed.push_back(L.name(unknowns[c]));
  }

  // Leftover rows constrain the parameters; reduce them to echelon form.
  QMatrix cons(aug.rows() - ech.pivots.size(), k + 1);
  for (std::size_t r = ech.pivots.size(); r < aug.rows(); ++r) {
    for (std::size_t p = 0; p < k; ++p) cons(r - ech.pivots.size(), p) = ech.m(r, U + 1 + p);
    cons(r - ech.pivots.size(), k) = -ech.m(r, U);
  }
  Echelon ce = rref(cons, k + 1);
  for (std::size_t r = 0; r < ce.pivots.size(); ++r) {
    if (ce.pivots[r] == k)
      throw Error(ErrorKind::Verification, "deformation", "solve",
                  "cocycle equations are inconsistent with z = z_scale * b");
    LinExpr e(-ce.m(r, k));
    for (std::size_t p = 0; p < k; ++p) e.add_term(static_cast<int>(p), ce.m(r, p));
    out.constraints.push_back(e);
  }

  for (std::size_t s = 0; s < N; ++s) {
    out.x.push_back(value.at(L.x(s)));
    auto pit = param_of.find(L.y(s));
    out.y.push_back(pit != param_of.end() ? LinExpr::var(pit->second) : value.at(L.y(s)));
  }
  out.y0 = value.at(L.y0());
  return out;
}

struct ResolvedParams {
  QVector values;
  std::vector<std::string> pinned;     // fixed by constraints
  std::vector<std::string> defaulted;  // left free, set to 0
};

// Fill unassigned parameters from the constraints; unconstrained ones default to 0.
inline ResolvedParams resolve_params(const AffineDeformation& aff, const std::map<std::size_t, QuadNum>& given) {
  std::size_t k = aff.params.size();
  for (const auto& [o, v] : given)
    if (o >= k) throw Error(ErrorKind::Validation, "deformation", "free_y", "orbit index out of range");
  std::vector<std::size_t> open;
  for (std::size_t p = 0; p < k; ++p)
    if (!given.count(p)) open.push_back(p);

  QMatrix m(aff.constraints.size(), open.size() + 1);
  for (std::size_t r = 0; r < aff.constraints.size(); ++r) {
    const LinExpr& c = aff.constraints[r];
    QuadNum rhs = -c.constant();
    for (std::size_t p = 0; p < k; ++p) {
      QuadNum co = c.coeff(static_cast<int>(p));
      if (auto it = given.find(p); it != given.end())
        rhs -= co * it->second;
    }
    for (std::size_t q = 0; q < open.size(); ++q) m(r, q) = c.coeff(static_cast<int>(open[q]));
    m(r, open.size()) = rhs;
  }
  Echelon e = rref(m, open.size() + 1);
  ResolvedParams res;
  res.values.assign(k, QuadNum());
  for (const auto& [o, v] : given) res.values[o] = v;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == open.size()) {
      // Report the first violated original constraint with its defect.
      for (const auto& c : aff.constraints) {
        QuadNum defect = c.evaluate([&](int id) {
          auto it = given.find(static_cast<std::size_t>(id));
          return it == given.end() ? QuadNum() : it->second;
        });
        if (!defect.is_zero() || open.empty())
          throw Error(ErrorKind::Verification, "deformation", "free_y constraint",
                      "inconsistent free values: " + aff.show(c) + " = 0 violated (defect " + defect.str() + ")");
      }
      throw Error(ErrorKind::Verification, "deformation", "free_y constraint", "inconsistent free values");
    }
  }
  std::vector<bool> is_pivot(open.size(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (std::size_t q = 0; q < open.size(); ++q)
    if (!is_pivot[q]) res.defaulted.push_back(aff.params[open[q]]);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    std::size_t q = e.pivots[r];
    res.values[open[q]] = e.m(r, open.size());  // free columns are 0
    res.pinned.push_back(aff.params[open[q]]);
  }
  return res;
}

inline DeformationCocycle solve_deformation(const MappingTorusInput& in, const QuadNum& z_scale,
                                            const std::map<std::size_t, QuadNum>& free_y) {
  AffineDeformation aff = solve_affine(in, z_scale);
  return aff.evaluate(resolve_params(aff, free_y).values);
}

struct RelatorCheck {
  std::string name;
  bool passed = false;
};

// Oracle: gamma -> (I + eps z(gamma)) rho0(gamma) over the dual numbers, relator by relator.
inline std::vector<RelatorCheck> verify_cocycle_detail(const DeformationCocycle& z, const MappingTorusInput& in) {
  std::map<Gen, Mat2B> gen;
  for (std::size_t s = 0; s <= in.size(); ++s) {
    Gen g = s < in.size() ? in.gen(s) : Gen::tau();
    QMatrix r0 = rho0(in, g);
    gen[g] = mat2b(r0, sl2_matrix(z.at(in, g)) * r0);
  }
  std::vector<RelatorCheck> out;
  Mat2B id = Mat2B::identity(2);
  for (const Relator& r : relators(in)) {
    Mat2B m = id;
    for (const Letter& l : r.word.letters()) {
      const Mat2B& g = gen.at(l.gen);
      m = m * (l.exp > 0 ? g : inverse2(g));
    }
    out.push_back({r.name, m == id});
  }
  return out;
}

inline bool verify_cocycle(const DeformationCocycle& z, const MappingTorusInput& in) {
  for (const auto& c : verify_cocycle_detail(z, in))
    if (!c.passed) return false;
  return true;
}

}  // namespace solhp
