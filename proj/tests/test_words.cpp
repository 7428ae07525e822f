#include <gtest/gtest.h>

#include "solhp/words.hpp"
#include "support.hpp"

using namespace solhp;
using solhp::testing::rand_int;

namespace {

Word W(const char* s) { return parse_word(s); }

Word rand_word(int g, int n, int len) {
  std::vector<Letter> raw;
  for (int i = 0; i < len; ++i) {
    int c = static_cast<int>(rand_int(0, 2));
    Gen x = c == 0 ? Gen::alpha(static_cast<int>(rand_int(1, g)))
            : c == 1 ? Gen::beta(static_cast<int>(rand_int(1, g)))
                     : Gen::delta(static_cast<int>(rand_int(1, n)));
    raw.push_back({x, rand_int(0, 1) ? 1 : -1});
  }
  return Word(raw);
}

TEST(Words, FreeReduction) {
  EXPECT_EQ(W("a1 a1' b2"), W("b2"));
  EXPECT_TRUE(W("a1 b1 b1' a1'").empty());
  EXPECT_EQ(W("a1 b1 b1' a1' d2").str(), "d2");
  EXPECT_EQ(W("t a2 t'").size(), 3u);
}

TEST(Words, Inverse) {
  EXPECT_EQ(W("a1 b2' d1").inverse().str(), "d1' b2 a1'");
  EXPECT_TRUE((W("a1 b2' d1") * W("a1 b2' d1").inverse()).empty());
}

TEST(Words, Reversed) { EXPECT_EQ(W("a1 b2' d1").reversed().str(), "d1 b2' a1"); }

TEST(Words, ParseRejectsUnknownTokens) {
  for (const char* bad : {"c1", "a0", "a", "t2", "a1''", "'", "b1x"}) EXPECT_THROW(W(bad), Error) << bad;
}

TEST(Words, Abelianize) {
  EXPECT_EQ(abelianize(W("a1 b1 a1' b1' d1'"), 1, 1), (std::vector<long>{0, 0, -1, 0}));
  EXPECT_EQ(abelianize(W("a2 a2 b1' t"), 2, 1), (std::vector<long>{0, 2, -1, 0, 0, 1}));
  EXPECT_THROW(abelianize(W("a3"), 2, 1), Error);
}

TEST(Words, ConjugacyOfPunctureImage) {
  // Image of d2 as written in the bundled document.
  Word w = W("a2 b2 a2' a2' a1 b1' d1' d2 d1 b1 a1' a2 a2 b2' a2'");
  ConjugacyForm cf = extract_conjugacy(w);
  EXPECT_EQ(cf.conjugator.str(), "a2 b2 a2' a2' a1 b1' d1'");
  EXPECT_EQ(cf.core, (Letter{Gen::delta(2), 1}));
  ConjugacyForm rev = extract_conjugacy(w.reversed());
  EXPECT_EQ(rev.conjugator.str(), "a2' b2' a2 a2 a1' b1 d1");
}

TEST(Words, ConjugacyRejectsNonConjugate) {
  EXPECT_THROW(extract_conjugacy(W("a1 b1")), Error);
  EXPECT_THROW(extract_conjugacy(Word()), Error);
}

TEST(Words, Commutator) { EXPECT_EQ(commutator(W("a1"), W("b1")).str(), "a1 b1 a1' b1'"); }

TEST(WordsProperty, SubstitutionIsHomomorphism) {
  for (int t = 0; t < 1000; ++t) {
    std::map<Gen, Word> img;
    for (int i = 1; i <= 2; ++i) {
      img[Gen::alpha(i)] = rand_word(2, 2, 4);
      img[Gen::beta(i)] = rand_word(2, 2, 4);
      img[Gen::delta(i)] = rand_word(2, 2, 4);
    }
    auto f = [&](const Gen& x) { return img.at(x); };
    Word u = rand_word(2, 2, 8), v = rand_word(2, 2, 8);
    ASSERT_EQ(substitute(u * v, f), substitute(u, f) * substitute(v, f));
    ASSERT_EQ(substitute(u.inverse(), f), substitute(u, f).inverse());
    auto au = abelianize(u, 2, 2), av = abelianize(v, 2, 2), auv = abelianize(u * v, 2, 2);
    auto ai = abelianize(u.inverse(), 2, 2);
    for (std::size_t k = 0; k < au.size(); ++k) {
      ASSERT_EQ(auv[k], au[k] + av[k]);
      ASSERT_EQ(ai[k], -au[k]);
    }
  }
}

TEST(WordsProperty, ConjugacyRoundTrip) {
  for (int t = 0; t < 1000; ++t) {
    Word u = rand_word(3, 3, static_cast<int>(rand_int(0, 10)));
    Gen x = Gen::delta(static_cast<int>(rand_int(1, 3)));
    int e = rand_int(0, 1) ? 1 : -1;
    Word w = u * Word::letter(x, e) * u.inverse();
    ConjugacyForm cf = extract_conjugacy(w);
    ASSERT_EQ(cf.core, (Letter{x, e}));
    ASSERT_EQ(cf.conjugator * Word::letter(cf.core.gen, cf.core.exp) * cf.conjugator.inverse(), w);
    ASSERT_EQ(parse_word(w.str()), w);
  }
}

}  // namespace
