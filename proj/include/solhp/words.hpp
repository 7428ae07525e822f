#pragma once

// Free-group words over alpha_i, beta_i, delta_j, tau.

#include <compare>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace solhp {

enum class GenClass { Alpha = 0, Beta = 1, Delta = 2, Tau = 3 };

struct Gen {
  GenClass cls = GenClass::Alpha;
  int index = 1;

  auto operator<=>(const Gen&) const = default;

  static Gen alpha(int i) { return {GenClass::Alpha, i}; }
  static Gen beta(int i) { return {GenClass::Beta, i}; }
  static Gen delta(int j) { return {GenClass::Delta, j}; }
  static Gen tau() { return {GenClass::Tau, 1}; }

  std::string token() const {
    switch (cls) {
      case GenClass::Alpha: return "a" + std::to_string(index);
      case GenClass::Beta: return "b" + std::to_string(index);
      case GenClass::Delta: return "d" + std::to_string(index);
      case GenClass::Tau: return "t";
    }
    return "?";
  }
};

// Position of gamma_i in the ordering (alpha_1..alpha_g, beta_1..beta_g, delta_1..delta_n, tau).
inline std::size_t gen_slot(const Gen& x, int g, int n) {
  switch (x.cls) {
    case GenClass::Alpha: return static_cast<std::size_t>(x.index - 1);
    case GenClass::Beta: return static_cast<std::size_t>(g + x.index - 1);
    case GenClass::Delta: return static_cast<std::size_t>(2 * g + x.index - 1);
    case GenClass::Tau: return static_cast<std::size_t>(2 * g + n);
  }
  return 0;
}

inline Gen gen_at_slot(std::size_t slot, int g, int n) {
  int s = static_cast<int>(slot);
  if (s < g) return Gen::alpha(s + 1);
  if (s < 2 * g) return Gen::beta(s - g + 1);
  if (s < 2 * g + n) return Gen::delta(s - 2 * g + 1);
  return Gen::tau();
}

struct Letter {
  Gen gen;
  int exp = 1;  // +1 or -1

  bool operator==(const Letter&) const = default;
  Letter inverse() const { return {gen, -exp}; }
  std::string token() const { return gen.token() + (exp < 0 ? "'" : ""); }
};

class Word {
 public:
  Word() = default;
  // Freely reduces the given letters.
  explicit Word(const std::vector<Letter>& raw) {
    for (const Letter& l : raw) push(l);
  }
  static Word letter(Gen g, int exp = 1) { return Word({Letter{g, exp}}); }

  const std::vector<Letter>& letters() const { return w_; }
  std::size_t size() const { return w_.size(); }
  bool empty() const { return w_.empty(); }
  const Letter& operator[](std::size_t i) const { return w_[i]; }

  Word inverse() const {
    Word r;
    for (auto it = w_.rbegin(); it != w_.rend(); ++it) r.w_.push_back(it->inverse());
    return r;
  }
  Word reversed() const {
    Word r;
    for (auto it = w_.rbegin(); it != w_.rend(); ++it) r.push(*it);
    return r;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    for (const Letter& l : b.w_) r.push(l);
    return r;
  }
  Word& operator*=(const Word& b) {
    for (const Letter& l : b.w_) push(l);
    return *this;
  }
  bool operator==(const Word&) const = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < w_.size(); ++i) s += (i ? " " : "") + w_[i].token();
    return s;
  }

 private:
  void push(const Letter& l) {
    if (!w_.empty() && w_.back().gen == l.gen && w_.back().exp == -l.exp)
      w_.pop_back();
    else
      w_.push_back(l);
  }

  std::vector<Letter> w_;
};

inline Word reduce(const std::vector<Letter>& raw) { return Word(raw); }

inline Word concat_inv(const Word& a, const Word& b, bool invert_b) {
  return invert_b ? a * b.inverse() : a * b;
}

inline Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

// Token grammar: a<i>, b<i>, d<j>, t with optional trailing ' for inverse.
inline Word parse_word(std::string_view text) {
  std::vector<Letter> raw;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    Letter l;
    std::string body = tok;
    if (!body.empty() && body.back() == '\'') {
      l.exp = -1;
      body.pop_back();
    }
    auto bad = [&] { return Error(ErrorKind::Parse, "words", "token", "unknown generator token \"" + tok + "\""); };
    if (body.empty()) throw bad();
    char c = body[0];
    if (c == 't') {
      if (body.size() != 1) throw bad();
      l.gen = Gen::tau();
    } else {
      if (c != 'a' && c != 'b' && c != 'd') throw bad();
      if (body.size() < 2 || body[1] == '0') throw bad();
      int idx = 0;
      for (std::size_t k = 1; k < body.size(); ++k) {
        if (body[k] < '0' || body[k] > '9' || idx > 100000) throw bad();
        idx = idx * 10 + (body[k] - '0');
      }
      l.gen = c == 'a' ? Gen::alpha(idx) : c == 'b' ? Gen::beta(idx) : Gen::delta(idx);
    }
    raw.push_back(l);
  }
  return Word(raw);
}

// Exponent sums in slot order (alpha.., beta.., delta.., tau).
inline std::vector<long> abelianize(const Word& w, int g, int n) {
  std::vector<long> v(static_cast<std::size_t>(2 * g + n + 1), 0);
  for (const Letter& l : w.letters()) {
    std::size_t s = gen_slot(l.gen, g, n);
    int bound = l.gen.cls == GenClass::Delta ? n : l.gen.cls == GenClass::Tau ? 1 : g;
    if (l.gen.index < 1 || l.gen.index > bound || s >= v.size()) throw Error(ErrorKind::Validation, "words", "abelianize", "generator " + l.gen.token() + " out of range");
    v[s] += l.exp;
  }
  return v;
}

struct ConjugacyForm {
  Word conjugator;
  Letter core;
};

// w = u * core * u^-1 with core a single letter.
inline ConjugacyForm extract_conjugacy(const Word& w) {
  const auto& ls = w.letters();
  if (ls.empty()) throw Error(ErrorKind::Validation, "words", "conjugacy", "empty word");
  std::size_t i = 0;
  std::size_t j = ls.size() - 1;
  while (i < j && ls[i] == ls[j].inverse()) {
    ++i;
    --j;
  }
  if (i != j)
    throw Error(ErrorKind::Validation, "words", "conjugacy", "not a conjugate of a generator: " + w.str());
  std::vector<Letter> u(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(i));
  return {Word(u), ls[i]};
}

// Image of w under the endomorphism generator -> image(generator).
inline Word substitute(const Word& w, const std::function<Word(const Gen&)>& image) {
  Word r;
  for (const Letter& l : w.letters()) {
    Word x = image(l.gen);
    r *= l.exp > 0 ? x : x.inverse();
  }
  return r;
}

}  // namespace solhp
