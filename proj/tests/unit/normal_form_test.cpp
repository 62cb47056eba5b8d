#include <gtest/gtest.h>

#include "harness.hpp"
#include "teamlogic/error.hpp"
#include "teamlogic/normal_form.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/printer.hpp"

using namespace tltest;

namespace {

const std::map<std::string, std::size_t> kPR = {{"P", 1}, {"R", 2}};

Formula team(const std::string& text) {
  Vocabulary v;
  v.add_predicate("P", 1);
  v.add_predicate("Q", 1);
  v.add_predicate("R", 2);
  return parse(text, Language::Team, v);
}

}  // namespace

TEST(Sugar, MakeAndMatch) {
  Formula b = team("P(x)");
  EXPECT_EQ(make_e(b), team("NE P(x)"));
  EXPECT_EQ(match_e(make_e(b)), b);
  EXPECT_FALSE(match_e(team("~P(x)")).has_value());
  Formula a = team("Q(x)");
  EXPECT_EQ(bool_or(a, b), team("Q(x) \\/ P(x)"));
  auto parts = match_bool_or(bool_or(a, b));
  ASSERT_TRUE(parts.has_value());
  EXPECT_EQ(parts->first, a);
  EXPECT_EQ(parts->second, b);
  EXPECT_EQ(bool_or_all({a, b, a}), bool_or(bool_or(a, b), a));
}

TEST(Laws, SevenExample) {
  Formula lhs = team("E x. (P(x) & NE R(x,y))");
  Formula rhs = team("(E x. P(x)) & NE (E x. (P(x) & R(x,y)))");
  EXPECT_EQ(apply_law(7, lhs, LawDirection::LeftToRight), rhs);
  EXPECT_EQ(apply_law(7, rhs, LawDirection::RightToLeft), lhs);
}

TEST(Laws, SevenNeedsTheRightShape) {
  EXPECT_FALSE(apply_law(7, team("E x. (P(x) | R(x,y))"), LawDirection::LeftToRight).has_value());
  EXPECT_FALSE(apply_law(7, team("E x. (P(x) & ~R(x,y))"), LawDirection::LeftToRight).has_value());
}

TEST(Laws, NineExample) {
  EXPECT_EQ(apply_law(9, team("A x. ~P(x)"), LawDirection::LeftToRight), team("~A x. P(x)"));
  EXPECT_EQ(apply_law(9, team("~A x. P(x)"), LawDirection::RightToLeft), team("A x. ~P(x)"));
  EXPECT_FALSE(apply_law(9, team("A x. P(x)"), LawDirection::LeftToRight).has_value());
}

TEST(Laws, OutOfRange) {
  EXPECT_THROW(apply_law(0, team("P(x)"), LawDirection::LeftToRight), Error);
  EXPECT_THROW(apply_law(10, team("P(x)"), LawDirection::LeftToRight), Error);
}

// A smaller run of the law check: both sides agree on all structures of
// size 1 and teams of up to two rows, in both directions.
TEST(Laws, RewritesPreserveMeaning) {
  Rng rng(51);
  for (int law = 1; law <= 9; ++law) {
    for (auto dir : {LawDirection::LeftToRight, LawDirection::RightToLeft}) {
      for (int i = 0; i < 15; ++i) {
        Formula lhs = law_instance(rng, law, dir);
        std::optional<Formula> rhs = apply_law(law, lhs, dir);
        ASSERT_TRUE(rhs.has_value()) << "law " << law << ": " << print(lhs);
        EXPECT_EQ(first_difference(lhs, *rhs, kPR, {"x", "y"}, 1, 2), "") << law << ": " << print(lhs);
        EXPECT_EQ(random_difference(rng, lhs, *rhs, kPR, {"x", "y"}, 2, 3, 4), "") << law;
      }
    }
  }
}

TEST(Dnf, ClassicalFormula) {
  Formula a = team("E y. R(x,y)");
  DNF d = dnf_expand(a);
  ASSERT_EQ(d.disjuncts.size(), 1u);
  EXPECT_EQ(d.disjuncts[0].alpha, a);
  EXPECT_TRUE(d.disjuncts[0].betas.empty());
}

TEST(Dnf, NegatedClassicalFormula) {
  Formula a = team("P(x)");
  DNF d = dnf_expand(Formula::tilde(a));
  ASSERT_EQ(d.disjuncts.size(), 1u);
  EXPECT_EQ(d.disjuncts[0].alpha, Formula::top());
  EXPECT_EQ(d.disjuncts[0].betas, std::vector<Formula>{Formula::neg(a)});
}

TEST(Dnf, ExistentialOverDisjunct) {
  DNF d = dnf_expand(team("E x. (P(x) & NE R(x,y) & NE Q(x))"));
  ASSERT_EQ(d.disjuncts.size(), 1u);
  EXPECT_EQ(d.disjuncts[0].alpha, team("E x. P(x)"));
  EXPECT_EQ(d.disjuncts[0].betas,
            (std::vector<Formula>{team("E x. (P(x) & R(x,y))"), team("E x. (P(x) & Q(x))")}));
}

TEST(Dnf, Errors) {
  EXPECT_THROW(dnf_expand(team("dep(x,y)")), FragmentError);
  Formula big = team("(P(x) \\/ Q(x)) & (P(y) \\/ Q(y)) & (R(x,y) \\/ R(y,x)) & (P(x) \\/ R(x,x))");
  EXPECT_THROW(dnf_expand(big, 10), ResourceExhausted);
  EXPECT_EQ(dnf_expand(big).disjuncts.size(), 16u);
}

TEST(Dnf, ReconstructIsEquivalent) {
  Rng rng(52);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_fo_tilde(rng, 1 + rng() % 6);
    DNF d = dnf_expand(f);
    EXPECT_GE(d.disjuncts.size(), 1u);
    EXPECT_LE(dnf_size(d), reconstruct(d).size());
    for (const Disjunct& dj : d.disjuncts) {
      EXPECT_TRUE(dj.alpha.is_classical());
      for (const Formula& b : dj.betas) EXPECT_TRUE(b.is_classical());
    }
    EXPECT_EQ(first_difference(f, reconstruct(d), kPR, {"x", "y"}, 2, 2), "") << print(f);
  }
}

TEST(Gamma, Examples) {
  Disjunct d{team("P(x)"), {team("R(x,y)")}};
  EXPECT_EQ(build_gamma(d), team("E x. E y. (P(x) & R(x,y))"));
  Disjunct two{team("P(x)"), {team("R(x,y)"), team("P(y)")}};
  EXPECT_EQ(build_gamma(two), team("(E x. E y. (P(x) & R(x,y))) & E x. E y. (P(x) & P(y))"));
  EXPECT_EQ(build_gamma(Disjunct{team("P(x)"), {}}), Formula::top());
  EXPECT_TRUE(build_gamma(two).free_vars().empty());
  EXPECT_THROW(build_gamma(Disjunct{team("P(z)"), {team("P(x)")}}), FragmentError);
}

TEST(Dnf, PrintsEveryDisjunct) {
  DNF d = dnf_expand(team("P(x) \\/ ~Q(x)"));
  std::string text = print_dnf(d);
  EXPECT_EQ(d.disjuncts.size(), 2u);
  EXPECT_NE(text.find("P"), std::string::npos);
  EXPECT_NE(text.find("Q"), std::string::npos);
}

// Size of the normal form against |phi| 2^|phi|.
TEST(Dnf, SizeBound) {
  Rng rng(53);
  std::size_t worst = 0;
  for (int i = 0; i < 2000; ++i) {
    Formula f = random_fo_tilde(rng, 1 + rng() % 12);
    std::size_t n = f.size();
    std::size_t size = dnf_size(dnf_expand(f));
    EXPECT_LE(size, n << n) << print(f);
    worst = std::max(worst, size);
  }
  EXPECT_GT(worst, 0u);
}
