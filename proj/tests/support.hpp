#pragma once

#include <random>
#include <string>

#include "solhp/fixtures.hpp"

namespace solhp::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed2021u);
  return g;
}

inline long long rand_int(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline QuadNum rand_qn(std::int64_t d, long long span = 40) {
  long long den = rand_int(1, 12);
  return QuadNum::make(rand_int(-span, span), rand_int(-span, span), den, d);
}

inline QuadNum rand_nonzero_qn(std::int64_t d, long long span = 40) {
  for (;;) {
    QuadNum x = rand_qn(d, span);
    if (!x.is_zero()) return x;
  }
}

inline QuadNum rand_rational(long long span = 20) {
  return QuadNum::rational(rand_int(-span, span), rand_int(1, 9));
}

inline QuadNum lit(const std::string& s, std::int64_t d = 21) { return parse_quadnum(s, d); }

// Genus-1 inputs: alpha -> alpha beta, beta -> beta alpha beta (fixes [alpha, beta]),
// composed with a braid of the puncture loops. Field Q(sqrt 5).
enum class Braid { Identity, Swap, ThreeCycle };

inline std::string torus_input(int n, Braid braid) {
  std::string d1 = "d1", d2 = "d2", d3 = "d3";
  if (braid == Braid::Swap) {
    d1 = "d1 d2 d1'";
    d2 = "d1";
  } else if (braid == Braid::ThreeCycle) {
    d1 = "d1 d2 d1'";
    d2 = "d1 d3 d1'";
    d3 = "d1";
  }
  std::string phi = R"("a1": "a1 b1", "b1": "b1 a1 b1", "d1": ")" + d1 + "\"";
  std::string mu_u = R"(["1", "(1+1*r)/2")";
  std::string mu_s = R"(["1", "(1-1*r)/2")";
  if (n >= 2) phi += R"(, "d2": ")" + d2 + "\"";
  if (n >= 3) phi += R"(, "d3": ")" + d3 + "\"";
  for (int j = 0; j < n; ++j) {
    mu_u += ", \"0\"";
    mu_s += ", \"0\"";
  }
  return R"({"disc": 5, "genus": 1, "num_sing": )" + std::to_string(n) + R"(, "lambda": "(3+1*r)/2", "phi": {)" + phi +
         R"(}, "mu_u": )" + mu_u + R"(], "mu_s": )" + mu_s + "]}";
}

struct Synthetic {
  std::string name;
  std::string json;
  int k;
};

inline std::vector<Synthetic> synthetic_inputs() {
  return {{"torus n=1", torus_input(1, Braid::Identity), 1},
          {"torus n=2 identity", torus_input(2, Braid::Identity), 2},
          {"torus n=2 swap", torus_input(2, Braid::Swap), 1},
          {"torus n=3 identity", torus_input(3, Braid::Identity), 3},
          {"torus n=3 three-cycle", torus_input(3, Braid::ThreeCycle), 1}};
}

// Genus-2 document with one field replaced by raw JSON text.
inline std::string genus2_with(const std::string& key, const std::string& value) {
  auto doc = nlohmann::ordered_json::parse(kGenus2Json);
  doc[key] = nlohmann::ordered_json::parse(value);
  return doc.dump();
}

}  // namespace solhp::testing
