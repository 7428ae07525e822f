#pragma once

// Mapping-torus presentation data: parsing, validation, relators, boundary permutation.

#include <json.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"
#include "qfield.hpp"
#include "words.hpp"

namespace solhp {

enum class WordOrder { LeftToRight, RightToLeft };

struct MappingTorusInput {
  int g = 1;
  int n = 1;
  std::int64_t d = 2;
  QuadNum lambda;
  std::map<Gen, Word> phi;  // images of alpha_i, beta_i, delta_j, stored in left-to-right order
  QVector mu_u;             // a_1..a_{2g+n}
  QVector mu_s;             // b_1..b_{2g+n}
  WordOrder source_order = WordOrder::LeftToRight;
  std::vector<std::string> warnings;

  std::size_t size() const { return static_cast<std::size_t>(2 * g + n); }
  Gen gen(std::size_t slot) const { return gen_at_slot(slot, g, n); }
  std::size_t slot(const Gen& x) const { return gen_slot(x, g, n); }
  const Word& image(const Gen& x) const { return phi.at(x); }
  const QuadNum& a(std::size_t slot) const { return mu_u.at(slot); }
  const QuadNum& b(std::size_t slot) const { return mu_s.at(slot); }
  QuadNum num(long long v) const { return QuadNum::rational(v, 1, d); }

  // phi applied to an arbitrary word (tau is fixed).
  Word apply_phi(const Word& w) const {
    return substitute(w, [this](const Gen& x) { return x.cls == GenClass::Tau ? Word::letter(x) : image(x); });
  }
};

struct Relator {
  std::string name;
  Word word;
};

// Alpha/beta commutator product times the inverse of the delta product.
inline Word surface_relator(int g, int n) {
  Word r;
  for (int i = 1; i <= g; ++i) r *= commutator(Word::letter(Gen::alpha(i)), Word::letter(Gen::beta(i)));
  Word deltas;
  for (int j = 1; j <= n; ++j) deltas *= Word::letter(Gen::delta(j));
  return r * deltas.inverse();
}

// phi(gamma_i) t gamma_i^-1 t^-1 for every surface generator, then the surface relator.
inline std::vector<Relator> relators(const MappingTorusInput& in) {
  std::vector<Relator> out;
  Word t = Word::letter(Gen::tau());
  for (std::size_t s = 0; s < in.size(); ++s) {
    Gen x = in.gen(s);
    Word r = in.image(x) * t * Word::letter(x, -1) * t.inverse();
    out.push_back({"conj " + x.token(), r});
  }
  out.push_back({"surface", surface_relator(in.g, in.n)});
  return out;
}

struct BoundaryData {
  std::vector<int> perm;              // perm[j-1] = k_j
  std::vector<Word> conjugators;      // w_j
  std::vector<std::vector<int>> orbits;  // cycles j -> k_j, each starting at its smallest member
  int k = 0;

  // Orbit index containing singular point j (1-based j).
  std::size_t orbit_of(int j) const {
    for (std::size_t o = 0; o < orbits.size(); ++o)
      for (int m : orbits[o])
        if (m == j) return o;
    throw Error(ErrorKind::Internal, "presentation", "orbit", "point not in any orbit");
  }
};

inline BoundaryData boundary_data(const MappingTorusInput& in) {
  BoundaryData bd;
  std::vector<bool> hit(static_cast<std::size_t>(in.n), false);
  for (int j = 1; j <= in.n; ++j) {
    ConjugacyForm cf = extract_conjugacy(in.image(Gen::delta(j)));
    if (cf.core.gen.cls != GenClass::Delta)
      throw Error(ErrorKind::Validation, "presentation", "boundary",
                  "phi(d" + std::to_string(j) + ") is conjugate to " + cf.core.gen.token() + ", not a puncture loop");
    if (cf.core.exp != 1)
      throw Error(ErrorKind::Validation, "presentation", "boundary",
                  "phi(d" + std::to_string(j) + ") reverses the orientation of a puncture loop");
    int kj = cf.core.gen.index;
    if (kj < 1 || kj > in.n || hit[static_cast<std::size_t>(kj - 1)])
      throw Error(ErrorKind::Validation, "presentation", "boundary", "puncture permutation is not a bijection");
    hit[static_cast<std::size_t>(kj - 1)] = true;
    bd.perm.push_back(kj);
    bd.conjugators.push_back(cf.conjugator);
  }
  std::vector<bool> seen(static_cast<std::size_t>(in.n), false);
  for (int j = 1; j <= in.n; ++j) {
    if (seen[static_cast<std::size_t>(j - 1)]) continue;
    std::vector<int> cyc;
    for (int m = j; !seen[static_cast<std::size_t>(m - 1)]; m = bd.perm[static_cast<std::size_t>(m - 1)]) {
      seen[static_cast<std::size_t>(m - 1)] = true;
      cyc.push_back(m);
    }
    bd.orbits.push_back(cyc);
  }
  bd.k = static_cast<int>(bd.orbits.size());
  return bd;
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::Parse, "presentation", "schema", "field '" + field + "': " + why);
}

inline const nlohmann::json& require(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) schema_error(key, "missing");
  return doc.at(key);
}

inline int require_int(const nlohmann::json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_number_integer()) schema_error(key, "expected an integer");
  return v.get<int>();
}

inline QuadNum literal(const nlohmann::json& v, const std::string& field, std::int64_t d) {
  if (v.is_number_integer()) return QuadNum::rational(v.get<long long>(), 1, d);
  if (!v.is_string()) schema_error(field, "expected a number literal string");
  try {
    return parse_quadnum(v.get<std::string>(), d);
  } catch (const Error& e) {
    schema_error(field, e.what());
  }
}

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

// Structural invariants: dilatation, puncture measures, generator ranges, conjugacy form.
inline void validate_input(MappingTorusInput& in) {
  auto fail = [](const std::string& check, const std::string& msg) {
    throw Error(ErrorKind::Validation, "presentation", check, msg);
  };
  if (in.g < 1) fail("genus", "genus must be at least 1");
  if (in.n < 1) fail("num_sing", "at least one singular point is required");
  if (!is_squarefree(in.d)) fail("disc", "disc must be a squarefree integer >= 2");
  if ((in.lambda - in.num(1)).sign() <= 0) fail("lambda", "dilatation must exceed 1");
  if (in.mu_u.size() != in.size() || in.mu_s.size() != in.size())
    fail("measures", "mu_u and mu_s need " + std::to_string(in.size()) + " entries");
  for (int j = 1; j <= in.n; ++j) {
    std::size_t s = in.slot(Gen::delta(j));
    if (!in.mu_u[s].is_zero() || !in.mu_s[s].is_zero())
      fail("measures", "measure of puncture loop must vanish (d" + std::to_string(j) + ")");
  }
  for (std::size_t s = 0; s < in.size(); ++s) {
    Gen x = in.gen(s);
    auto it = in.phi.find(x);
    if (it == in.phi.end()) fail("phi", "missing image of " + x.token());
    for (const Letter& l : it->second.letters()) {
      bool ok = (l.gen.cls == GenClass::Alpha || l.gen.cls == GenClass::Beta) ? l.gen.index <= in.g
                : l.gen.cls == GenClass::Delta                             ? l.gen.index <= in.n
                                                                           : false;
      if (!ok) fail("phi", "image of " + x.token() + " uses generator " + l.gen.token() + " outside the surface group");
    }
  }
  if (in.phi.size() != in.size()) fail("phi", "unexpected extra images");
  boundary_data(in);

  // Free-group form of the surface relation: phi(R) should be a conjugate of R.
  Word r = surface_relator(in.g, in.n);
  Word pr = in.apply_phi(r);
  auto cyclic = [](Word w) {
    while (w.size() >= 2 && w[0] == w[w.size() - 1].inverse()) {
      std::vector<Letter> mid(w.letters().begin() + 1, w.letters().end() - 1);
      w = Word(mid);
    }
    return w;
  };
  Word cr = cyclic(r), cp = cyclic(pr);
  bool conj = false;
  if (cr.size() == cp.size()) {
    for (std::size_t shift = 0; shift < cr.size() && !conj; ++shift) {
      bool eq = true;
      for (std::size_t i = 0; i < cr.size() && eq; ++i) eq = cp[i] == cr[(i + shift) % cr.size()];
      conj = eq;
    }
  }
  if (!conj)
    in.warnings.push_back("phi(surface relator) is not a conjugate of the surface relator in the free group "
                          "(cyclically reduced length " + std::to_string(cp.size()) + " vs " +
                          std::to_string(cr.size()) + ")");
}

inline MappingTorusInput parse_input(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, "presentation", "json",
                "invalid JSON at " + detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) detail::schema_error("<root>", "expected an object");
  static const char* known[] = {"disc", "genus", "num_sing", "lambda", "phi", "mu_u", "mu_s", "phi_word_order"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) detail::schema_error(it.key(), "unknown field");
  }

  MappingTorusInput in;
  in.d = detail::require_int(doc, "disc");
  in.g = detail::require_int(doc, "genus");
  in.n = detail::require_int(doc, "num_sing");
  if (!is_squarefree(in.d)) detail::schema_error("disc", "must be a squarefree integer >= 2");
  if (in.g < 1 || in.n < 1 || in.g > 1000 || in.n > 1000) detail::schema_error("genus/num_sing", "out of range");
  in.lambda = detail::literal(detail::require(doc, "lambda"), "lambda", in.d).in_field(in.d);

  if (doc.contains("phi_word_order")) {
    const auto& o = doc.at("phi_word_order");
    if (o == "left-to-right")
      in.source_order = WordOrder::LeftToRight;
    else if (o == "right-to-left")
      in.source_order = WordOrder::RightToLeft;
    else
      detail::schema_error("phi_word_order", "expected \"left-to-right\" or \"right-to-left\"");
  }

  const auto& phi = detail::require(doc, "phi");
  if (!phi.is_object()) detail::schema_error("phi", "expected an object of word strings");
  for (auto it = phi.begin(); it != phi.end(); ++it) {
    std::string field = "phi." + it.key();
    if (!it.value().is_string()) detail::schema_error(field, "expected a word string");
    Word key;
    Word w;
    try {
      key = parse_word(it.key());
      w = parse_word(it.value().get<std::string>());
    } catch (const Error& e) {
      detail::schema_error(field, e.what());
    }
    if (key.size() != 1 || key[0].exp != 1 || key[0].gen.cls == GenClass::Tau)
      detail::schema_error(field, "key must name a surface generator");
    if (in.source_order == WordOrder::RightToLeft) w = w.reversed();
    in.phi[key[0].gen] = w;
  }

  for (const char* name : {"mu_u", "mu_s"}) {
    const auto& arr = detail::require(doc, name);
    if (!arr.is_array()) detail::schema_error(name, "expected an array");
    QVector v;
    for (std::size_t i = 0; i < arr.size(); ++i)
      v.push_back(detail::literal(arr[i], std::string(name) + "[" + std::to_string(i) + "]", in.d).in_field(in.d));
    (std::string(name) == "mu_u" ? in.mu_u : in.mu_s) = v;
  }
  validate_input(in);
  return in;
}

inline nlohmann::ordered_json input_to_json(const MappingTorusInput& in) {
  nlohmann::ordered_json doc;
  doc["disc"] = in.d;
  doc["genus"] = in.g;
  doc["num_sing"] = in.n;
  doc["lambda"] = in.lambda.str();
  if (in.source_order == WordOrder::RightToLeft) doc["phi_word_order"] = "right-to-left";
  nlohmann::ordered_json phi = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < in.size(); ++s) {
    Gen x = in.gen(s);
    const Word& w = in.image(x);
    phi[x.token()] = (in.source_order == WordOrder::RightToLeft ? w.reversed() : w).str();
  }
  doc["phi"] = phi;
  for (const auto* v : {&in.mu_u, &in.mu_s}) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& x : *v) arr.push_back(x.str());
    doc[v == &in.mu_u ? "mu_u" : "mu_s"] = arr;
  }
  return doc;
}

inline std::string serialize_input(const MappingTorusInput& in) { return input_to_json(in).dump(2) + "\n"; }

inline bool same_input(const MappingTorusInput& a, const MappingTorusInput& b) {
  return a.g == b.g && a.n == b.n && a.d == b.d && a.lambda == b.lambda && a.phi == b.phi && a.mu_u == b.mu_u &&
         a.mu_s == b.mu_s && a.source_order == b.source_order;
}

}  // namespace solhp
