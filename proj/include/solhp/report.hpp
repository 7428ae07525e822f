#pragma once

// Pipeline driver behind the command-line tool: assembles a deterministic report.

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cone.hpp"
#include "fixtures.hpp"

namespace solhp {

enum class Command { Validate, Analyze, Deform, Holonomy, Cone, Report };

inline std::optional<Command> parse_command(const std::string& s) {
  static const std::map<std::string, Command> names = {
      {"validate", Command::Validate}, {"analyze", Command::Analyze}, {"deform", Command::Deform},
      {"holonomy", Command::Holonomy}, {"cone", Command::Cone},       {"report", Command::Report}};
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Analyze: return "analyze";
    case Command::Deform: return "deform";
    case Command::Holonomy: return "holonomy";
    case Command::Cone: return "cone";
    case Command::Report: return "report";
  }
  return "?";
}

struct RunOptions {
  Command command = Command::Report;
  std::string input_text;                          // document to parse
  std::string source = "<input>";                  // shown in the report
  std::vector<std::pair<std::string, std::string>> sets;  // NAME=literal
  std::string z_scale = "1";
  bool decreasing = false;
};

enum ExitCode { kOk = 0, kValidation = 1, kVerification = 2, kUsage = 3 };

using OJson = nlohmann::ordered_json;

inline OJson mat_json(const QMatrix& m) {
  OJson rows = OJson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    OJson r = OJson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(r);
  }
  return rows;
}

inline OJson vec_json(const QVector& v) {
  OJson a = OJson::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline OJson rep_json(const Rep& rep) {
  OJson o = OJson::object();
  for (const auto& [g, m] : rep) o[g.token()] = mat_json(m);
  return o;
}

inline OJson relations_json(const std::vector<RelationResult>& rs) {
  OJson a = OJson::array();
  for (const auto& r : rs) {
    OJson e;
    e["relator"] = r.name;
    e["passed"] = r.passed;
    e["up_to_sign"] = r.up_to_sign;
    e["max_residual"] = r.max_residual.str();
    e["at"] = {r.row + 1, r.col + 1};
    a.push_back(e);
  }
  return a;
}

inline OJson affine_json(const AffineDeformation& aff, const LinExpr& e) {
  OJson o;
  o["constant"] = e.constant().str();
  OJson t = OJson::object();
  for (const auto& [id, c] : e.terms()) t[aff.param_name(id)] = c.str();
  o["terms"] = t;
  o["text"] = aff.show(e);
  return o;
}

inline OJson cocycle_json(const DeformationCocycle& z) {
  OJson o;
  o["x"] = vec_json(z.x);
  o["y"] = vec_json(z.y);
  o["z"] = vec_json(z.z);
  o["x0"] = z.x0.str();
  o["y0"] = z.y0.str();
  o["z0"] = z.z0.str();
  return o;
}

class ReportBuilder {
 public:
  explicit ReportBuilder(const RunOptions& opt) : opt_(opt) {
    doc_["command"] = command_name(opt.command);
    doc_["source"] = opt.source;
  }

  std::pair<OJson, int> run() {
    try {
      stages();
    } catch (const Error& e) {
      OJson err;
      err["module"] = e.module();
      err["check"] = e.check();
      err["message"] = e.what();
      doc_["error"] = err;
      raise(e.kind() == ErrorKind::Parse        ? kUsage
            : e.kind() == ErrorKind::Validation ? kValidation
                                                : kVerification);
    } catch (const std::exception& e) {
      OJson err;
      err["module"] = "cli";
      err["check"] = "internal";
      err["message"] = e.what();
      doc_["error"] = err;
      raise(kVerification);
    }
    doc_["checks"] = checks_;
    doc_["exit_status"] = exit_;
    return {doc_, exit_};
  }

 private:
  void raise(int code) {
    // Usage/parse errors dominate, then validation, then verification.
    auto rank = [](int c) { return c == kUsage ? 3 : c == kValidation ? 2 : c == kVerification ? 1 : 0; };
    if (rank(code) > rank(exit_)) exit_ = code;
  }

  void check(const std::string& module, const std::string& name, bool passed, const std::string& detail,
             int failure_code) {
    OJson c;
    c["module"] = module;
    c["check"] = name;
    c["passed"] = passed;
    c["detail"] = detail;
    checks_.push_back(c);
    if (!passed) raise(failure_code);
  }

  bool wants(Command c) const {
    if (opt_.command == Command::Report) return true;
    return opt_.command == c;
  }

  void stages() {
    in_ = parse_input(opt_.input_text);
    doc_["input"] = input_to_json(in_);
    doc_["warnings"] = in_.warnings;
    z_scale_ = parse_quadnum(opt_.z_scale, in_.d).in_field(in_.d);
    validation();
    if (exit_ != kOk) return;
    if (wants(Command::Analyze)) analyze();
    if (opt_.command == Command::Validate || opt_.command == Command::Analyze) return;
    deformation();
    if (!cocycle_) return;
    if (wants(Command::Holonomy)) holonomy();
    if (wants(Command::Cone)) cone();
  }

  void validation() {
    HomologyReport hr = validate_homology(in_);
    OJson v = OJson::array();
    for (const auto& c : hr.checks) {
      OJson e;
      e["name"] = c.name;
      e["passed"] = c.passed;
      e["residual"] = vec_json(c.residual);
      e["detail"] = c.detail;
      v.push_back(e);
      check("presentation", c.name, c.passed, c.passed ? "" : "residual " + vector_str(c.residual), kValidation);
    }
    BoundaryData bd = boundary_data(in_);
    OJson b;
    b["permutation"] = bd.perm;
    OJson conj = OJson::array();
    for (const auto& w : bd.conjugators) conj.push_back(w.str());
    b["conjugators"] = conj;
    b["orbits"] = bd.orbits;
    b["k"] = bd.k;
    doc_["validation"] = {{"checks", v}, {"passed", hr.ok()}};
    doc_["boundary"] = b;
  }

  void analyze() {
    QMatrix m = action_matrix(in_);
    Poly cp = char_poly(m);
    OJson c;
    c["action_matrix"] = mat_json(m);
    c["char_poly"] = cp.str();
    // Factor out the minimal polynomial of lambda and every (x - 1) for the punctures.
    Poly minpoly{{in_.lambda * in_.lambda.conj(), -(in_.lambda + in_.lambda.conj()), QuadNum(1)}};
    Poly rest = cp;
    OJson factors = OJson::array();
    bool lam = poly_divides(minpoly, rest);
    if (lam) rest = poly_divmod(rest, minpoly).first;
    factors.push_back({{"factor", minpoly.str()}, {"divides", lam}});
    Poly xm1{{QuadNum(-1), QuadNum(1)}};
    int ones = 0;
    while (rest.degree() > 0 && poly_divides(xm1, rest)) {
      rest = poly_divmod(rest, xm1).first;
      ++ones;
    }
    factors.push_back({{"factor", xm1.str()}, {"multiplicity", ones}});
    c["char_poly_factors"] = factors;
    c["char_poly_cofactor"] = rest.str();
    check("cohomology", "lambda is a root of the characteristic polynomial", lam, minpoly.str(), kVerification);

    auto ker = kernel(shift_identity(m, in_.lambda));
    OJson kj = OJson::array();
    for (const auto& v : ker) kj.push_back(vec_json(v));
    c["lambda_kernel"] = kj;
    c["eigenvalue_one_free"] = eigenvalue_one_check(in_);
    c["pairing_a_b"] = intersection_pairing(in_.mu_u, in_.mu_s, in_.g).str();
    doc_["cohomology"] = c;

    CocycleSystem sys = build_system(in_);
    int z1 = dim_z1(sys), h1 = dim_h1(sys), k = boundary_data(in_).k;
    doc_["dimensions"] = {{"equations", sys.equations.size()}, {"unknowns", sys.layout.total()},
                          {"dim_Z1", z1},                      {"dim_H1", h1},
                          {"k", k},                            {"h1_equals_k", h1 == k}};
    check("deformation", "dim H^1 = k", h1 == k,
          "dim H^1 = " + std::to_string(h1) + ", k = " + std::to_string(k), kVerification);
    Blocks bl = extract_blocks(sys, in_);
    bool k2d = bl.K + QuadNum(2) * bl.D == QMatrix(in_.size(), in_.size());
    doc_["blocks"] = {{"K", mat_json(bl.K)}, {"C", mat_json(bl.C)}, {"D", mat_json(bl.D)}, {"K_equals_minus_2D", k2d}};
  }

  void deformation() {
    AffineDeformation aff = solve_affine(in_, z_scale_);
    OJson d;
    d["z_scale"] = z_scale_.str();
    d["params"] = aff.params;
    OJson cons = OJson::array();
    for (const auto& c : aff.constraints) cons.push_back(aff.show(c) + " = 0");
    d["constraints"] = cons;
    d["gauge_zeroed"] = aff.gauge_zeroed;
    OJson af = OJson::object();
    for (std::size_t s = 0; s < in_.size(); ++s) af["x" + std::to_string(s + 1)] = affine_json(aff, aff.x[s]);
    af["y0"] = affine_json(aff, aff.y0);
    for (std::size_t s = 0; s < in_.size(); ++s) af["y" + std::to_string(s + 1)] = affine_json(aff, aff.y[s]);
    for (std::size_t s = 0; s < in_.size(); ++s) af["z" + std::to_string(s + 1)] = aff.z[s].str();
    d["affine"] = af;

    std::map<std::size_t, QuadNum> given;
    std::map<std::string, std::string> origin;
    for (const auto& [name, lit] : opt_.sets) {
      auto it = std::find(aff.params.begin(), aff.params.end(), name);
      if (it == aff.params.end())
        throw Error(ErrorKind::Parse, "cli", "--set", "\"" + name + "\" is not a free parameter (free: " +
                                                          nlohmann::json(aff.params).dump() + ")");
      given[static_cast<std::size_t>(it - aff.params.begin())] = parse_quadnum(lit, in_.d).in_field(in_.d);
      origin[name] = "set";
    }
    if (opt_.decreasing) {
      try {
        auto choice = decreasing_choice(in_, z_scale_);
        for (const auto& [o, v] : choice) {
          if (!given.count(o)) {
            given[o] = v;
            origin[aff.params[o]] = "decreasing";
          }
        }
        check("cone", "decreasing choice", true, "", kVerification);
      } catch (const Error& e) {
        check(e.module(), e.check(), false, e.what(), e.kind() == ErrorKind::Validation ? kValidation : kVerification);
      }
    }
    ResolvedParams rp;
    try {
      rp = resolve_params(aff, given);
    } catch (const Error& e) {
      check(e.module(), e.check(), false, e.what(), kVerification);
      doc_["deformation"] = d;
      return;
    }
    for (const auto& n : rp.pinned) origin[n] = "constraint";
    for (const auto& n : rp.defaulted) origin[n] = "default";
    OJson asg = OJson::object();
    for (std::size_t o = 0; o < aff.params.size(); ++o)
      asg[aff.params[o]] = {{"value", rp.values[o].str()}, {"source", origin[aff.params[o]]}};
    d["assignment"] = asg;

    DeformationCocycle z = aff.evaluate(rp.values);
    d["cocycle"] = cocycle_json(z);
    auto oracle = verify_cocycle_detail(z, in_);
    OJson ora = OJson::array();
    bool ok = true;
    for (const auto& r : oracle) {
      ora.push_back({{"relator", r.name}, {"passed", r.passed}});
      ok = ok && r.passed;
    }
    d["oracle"] = ora;
    d["oracle_passed"] = ok;
    check("deformation", "dual-number oracle", ok, "", kVerification);
    doc_["deformation"] = d;
    cocycle_ = z;
  }

  void holonomy() {
    const DeformationCocycle& z = *cocycle_;
    Rep r0;
    for (std::size_t s = 0; s <= in_.size(); ++s) {
      Gen g = s < in_.size() ? in_.gen(s) : Gen::tau();
      r0[g] = rho0(in_, g);
    }
    Rep hp = hp_rep(in_, z);
    Rep sol = sol_rep(in_, z_scale_);
    OJson h;
    h["rho0"] = rep_json(r0);
    h["rho_hp"] = rep_json(hp);
    h["rho_sol"] = rep_json(sol);
    bool form = true;
    for (const auto& [g, m] : hp) form = form && is_hp_form(m);
    h["hp_form"] = form;
    check("holonomy", "HP block form", form, "", kVerification);
    auto rh = verify_relations(hp, in_);
    auto rs = verify_relations(sol, in_);
    h["relations_hp"] = relations_json(rh);
    h["relations_sol"] = relations_json(rs);
    check("holonomy", "relations hold for rho_HP", all_passed(rh), "", kVerification);
    check("holonomy", "relations hold for rho_Sol", all_passed(rs), "", kVerification);
    OJson lim;
    try {
      Rep l = sol_limit(hp);
      bool eq = l == sol;
      lim["passed"] = eq;
      lim["limit"] = rep_json(l);
      check("holonomy", "s -> 0 limit equals rho_Sol", eq, "", kVerification);
    } catch (const Error& e) {
      lim["passed"] = false;
      lim["error"] = e.what();
      check("holonomy", "s -> 0 limit equals rho_Sol", false, e.what(), kVerification);
    }
    h["sol_limit"] = lim;
    doc_["holonomy"] = h;
  }

  void cone() {
    const DeformationCocycle& z = *cocycle_;
    ConeReport cr = cone_report(in_, z, z_scale_);
    OJson c;
    c["omega_tot"] = cr.omega_tot.str();
    c["pairing"] = cr.pairing.str();
    c["pairing_normalization"] = "omega_tot = (" + cr.pairing_factor.str() + ") * i(a, b)";
    c["y_sum"] = cr.y_sum.str();
    c["sum_consistent"] = cr.sum_consistent;
    c["decreasing"] = cr.decreasing;
    check("cone", "sum of omega/2 equals the surface-relator total", cr.sum_consistent, "", kVerification);
    OJson comps = OJson::array();
    for (const auto& k : cr.components) {
      OJson e;
      e["orbit"] = k.orbit;
      e["m"] = k.m;
      e["omega"] = k.omega.str();
      e["x"] = k.x.str();
      e["conjugator"] = k.compat.v.str();
      e["A"] = k.compat.A.str();
      e["compatible"] = k.compat.holds;
      check("cone", "boundary compatibility orbit " + std::to_string(k.orbit.front()), k.compat.holds,
            k.compat.lhs.str() + " vs " + k.compat.rhs.str(), kVerification);

      QuadNum ed = in_.num(1);
      for (int i = 0; i < k.m; ++i) ed *= in_.lambda;
      ModelTorusReport mt = model_torus_limit(k.omega, QuadNum(2 * k.m) * z.y0, ed);
      e["model_torus"] = {{"omega", k.omega.str()},
                          {"mu", (QuadNum(2 * k.m) * z.y0).str()},
                          {"e_d", ed.str()},
                          {"passed", mt.ok()},
                          {"error", mt.error}};
      check("cone", "model torus limit orbit " + std::to_string(k.orbit.front()), mt.ok(), mt.error, kVerification);
      comps.push_back(e);
    }
    c["components"] = comps;
    if (opt_.decreasing) check("cone", "all cone angles decrease", cr.decreasing, "", kVerification);
    doc_["cone"] = c;
  }

  RunOptions opt_;
  OJson doc_;
  OJson checks_ = OJson::array();
  int exit_ = kOk;
  MappingTorusInput in_;
  QuadNum z_scale_;
  std::optional<DeformationCocycle> cocycle_;
};

inline std::pair<OJson, int> run_pipeline(const RunOptions& opt) { return ReportBuilder(opt).run(); }

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

inline void text_matrix(std::ostringstream& os, const std::string& title, const OJson& m) {
  os << title << ":\n";
  std::vector<std::size_t> width;
  for (const auto& row : m)
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (width.size() <= j) width.push_back(0);
      width[j] = std::max(width[j], row[j].get<std::string>().size());
    }
  for (const auto& row : m) {
    os << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "  " : "") << pad(row[j].get<std::string>(), width[j]);
    os << "]\n";
  }
}

}  // namespace detail

inline std::string render_text(const OJson& r) {
  std::ostringstream os;
  os << "command: " << r["command"].get<std::string>() << "\n";
  os << "source: " << r["source"].get<std::string>() << "\n";
  if (r.contains("input")) {
    const auto& in = r["input"];
    os << "genus " << in["genus"] << ", singular points " << in["num_sing"] << ", field Q(sqrt " << in["disc"]
       << "), lambda = " << in["lambda"].get<std::string>() << "\n";
  }
  if (r.contains("warnings"))
    for (const auto& w : r["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
  if (r.contains("validation")) {
    os << "\n== validation\n";
    for (const auto& c : r["validation"]["checks"])
      os << "  " << detail::pad(c["passed"].get<bool>() ? "pass" : "FAIL", 6) << c["name"].get<std::string>() << "\n";
    const auto& b = r["boundary"];
    os << "  k = " << b["k"] << ", orbits " << b["orbits"].dump() << "\n";
  }
  if (r.contains("cohomology")) {
    const auto& c = r["cohomology"];
    os << "\n== cohomology\n";
    detail::text_matrix(os, "action matrix", c["action_matrix"]);
    os << "char poly: " << c["char_poly"].get<std::string>() << "\n";
    os << "cofactor after lambda and (x-1) factors: " << c["char_poly_cofactor"].get<std::string>() << "\n";
    os << "i(a, b) = " << c["pairing_a_b"].get<std::string>() << "\n";
  }
  if (r.contains("dimensions")) {
    const auto& d = r["dimensions"];
    int h1 = d["dim_H1"], k = d["k"];
    os << "\n== dimensions\n";
    os << "dim Z^1 = " << d["dim_Z1"] << "\n";
    if (h1 == k)
      os << "dim H^1 = " << h1 << " = k\n";
    else
      os << "dim H^1 = " << h1 << ", k = " << k << " (mismatch)\n";
  }
  if (r.contains("blocks")) {
    os << "\n== blocks\n";
    detail::text_matrix(os, "D", r["blocks"]["D"]);
    detail::text_matrix(os, "C", r["blocks"]["C"]);
    os << "K = -2D: " << (r["blocks"]["K_equals_minus_2D"].get<bool>() ? "yes" : "no") << "\n";
  }
  if (r.contains("deformation")) {
    const auto& d = r["deformation"];
    os << "\n== deformation (z = " << d["z_scale"].get<std::string>() << " * mu_s)\n";
    std::size_t w = 0;
    for (auto it = d["affine"].begin(); it != d["affine"].end(); ++it) w = std::max(w, it.key().size());
    for (auto it = d["affine"].begin(); it != d["affine"].end(); ++it) {
      const auto& v = it.value();
      os << "  " << detail::pad(it.key(), w) << " = "
         << (v.is_string() ? v.get<std::string>() : v["text"].get<std::string>()) << "\n";
    }
    for (const auto& c : d["constraints"]) os << "  constraint: " << c.get<std::string>() << "\n";
    for (const auto& g : d["gauge_zeroed"]) os << "  gauge: " << g.get<std::string>() << " = 0\n";
    if (d.contains("assignment"))
      for (auto it = d["assignment"].begin(); it != d["assignment"].end(); ++it)
        os << "  " << it.key() << " := " << it.value()["value"].get<std::string>() << " ("
           << it.value()["source"].get<std::string>() << ")\n";
    if (d.contains("oracle_passed"))
      os << "  dual-number oracle: " << (d["oracle_passed"].get<bool>() ? "pass" : "FAIL") << "\n";
  }
  if (r.contains("holonomy")) {
    const auto& h = r["holonomy"];
    os << "\n== holonomy\n";
    for (auto it = h["rho_hp"].begin(); it != h["rho_hp"].end(); ++it)
      detail::text_matrix(os, "rho_HP(" + it.key() + ")", it.value());
    os << "relator                 HP      Sol\n";
    for (std::size_t i = 0; i < h["relations_hp"].size(); ++i) {
      const auto& a = h["relations_hp"][i];
      const auto& b = h["relations_sol"][i];
      os << "  " << detail::pad(a["relator"].get<std::string>(), 22) << detail::pad(a["passed"].get<bool>() ? "pass" : "FAIL", 8)
         << (b["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
    }
    os << "s -> 0 limit equals rho_Sol: " << (h["sol_limit"]["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
  }
  if (r.contains("cone")) {
    const auto& c = r["cone"];
    os << "\n== cone angles\n";
    os << "omega_tot = " << c["omega_tot"].get<std::string>() << "\n";
    os << c["pairing_normalization"].get<std::string>() << "\n";
    os << "  orbit   m   omega                x                    compatible  model torus\n";
    for (const auto& k : c["components"])
      os << "  " << detail::pad(k["orbit"].dump(), 8) << detail::pad(std::to_string(k["m"].get<int>()), 4)
         << detail::pad(k["omega"].get<std::string>(), 21) << detail::pad(k["x"].get<std::string>(), 21)
         << detail::pad(k["compatible"].get<bool>() ? "yes" : "no", 12)
         << (k["model_torus"]["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
  }
  if (r.contains("error")) os << "\nerror: " << r["error"]["message"].get<std::string>() << "\n";
  if (r.contains("checks")) {
    bool header = false;
    for (const auto& c : r["checks"])
      if (!c["passed"].get<bool>()) {
        if (!header) os << "\n== failed checks\n";
        header = true;
        os << "  " << c["module"].get<std::string>() << ": " << c["check"].get<std::string>();
        if (!c["detail"].get<std::string>().empty()) os << " (" << c["detail"].get<std::string>() << ")";
        os << "\n";
      }
  }
  os << "\nexit status: " << r["exit_status"] << "\n";
  return os.str();
}

inline std::string serialize_report(const OJson& r, bool json) { return json ? r.dump(2) + "\n" : render_text(r); }

}  // namespace solhp
