#include <gtest/gtest.h>

#include "harness.hpp"
#include "teamlogic/error.hpp"
#include "teamlogic/mtl_bridge.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/printer.hpp"

using namespace tltest;

namespace {

Formula mtl(const std::string& text) { return parse(text, Language::MTL, Vocabulary()); }

Term v(const char* name) { return Term::variable(name); }

Formula edge(const char* a, const char* b) { return Formula::atom(kEdgeRelation, {v(a), v(b)}); }

const std::vector<std::string> kPQ = {"p", "q"};

}  // namespace

TEST(StandardTranslation, Examples) {
  EXPECT_EQ(standard_translation(mtl("p")), Formula::atom("P", {v("x")}));
  EXPECT_EQ(standard_translation(mtl("p"), "y"), Formula::atom("P", {v("y")}));
  EXPECT_EQ(standard_translation(mtl("<>p")),
            Formula::exists("y", Formula::conj(edge("x", "y"), Formula::atom("P", {v("y")}))));
  EXPECT_EQ(standard_translation(mtl("[]p")),
            Formula::forall("y", Formula::disj(Formula::neg(edge("x", "y")),
                                               Formula::conj(edge("x", "y"), Formula::atom("P", {v("y")})))));
  EXPECT_EQ(standard_translation(mtl("~p & NE q")),
            Formula::conj(Formula::tilde(Formula::atom("P", {v("x")})),
                          Formula::tilde(Formula::neg(Formula::atom("Q", {v("x")})))));
}

TEST(StandardTranslation, NestingAlternatesVariables) {
  Formula f = standard_translation(mtl("<><>p"));
  EXPECT_EQ(all_vars(f), VarList({"x", "y"}));
  EXPECT_EQ(f.free_vars(), VarList({"x"}));
  EXPECT_THROW(standard_translation(mtl("r")), FragmentError);
}

TEST(Interpretation, KripkeToStructure) {
  KripkeStructure k(3);
  k.add_edge(0, 1);
  k.add_edge(1, 1);
  k.set_valuation("p", world_set({1, 2}));
  Structure a = interpret_kripke(k);
  EXPECT_EQ(a.domain_size(), 3u);
  EXPECT_TRUE(a.relation("R").contains({0, 1}));
  EXPECT_FALSE(a.relation("R").contains({1, 0}));
  EXPECT_EQ(a.relation("P").tuples(), (std::vector<Tuple>{{1}, {2}}));
  EXPECT_EQ(lift_team(world_set({0, 2})), Team({"x"}, {{0}, {2}}));
  EXPECT_EQ(lift_team(0, "y"), Team::empty({"y"}));
}

TEST(Interpretation, ReverseRoundTrip) {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    KripkeStructure k = random_kripke(rng, 1 + rng() % 4, kPQ);
    WorldSet t = random_world_set(rng, k.world_count());
    KripkeWithTeam back = reverse_interpret(interpret_kripke(k), lift_team(t));
    EXPECT_EQ(back.team, t);
    EXPECT_EQ(interpret_kripke(back.kripke), interpret_kripke(k));
  }
}

TEST(Interpretation, BoxOverNoSuccessors) {
  KripkeStructure k(2);
  EXPECT_TRUE(mtl_holds(k, world_set({0, 1}), mtl("[]bot")));
  Structure a = interpret_kripke(k);
  EXPECT_TRUE(team_holds(a, lift_team(world_set({0, 1})), standard_translation(mtl("[]bot"))));
  EXPECT_FALSE(mtl_holds(k, world_set({0}), mtl("<>top")));
}

// Modal team truth is preserved by the translation.
TEST(StandardTranslation, PreservesTruth) {
  Rng rng(42);
  for (int i = 0; i < 1500; ++i) {
    KripkeStructure k = random_kripke(rng, 1 + rng() % 3, kPQ);
    WorldSet t = random_world_set(rng, k.world_count());
    Formula f = random_mtl(rng, kPQ, 1 + rng() % 7, 2);
    std::string var = i % 2 ? "x" : "y";
    EXPECT_EQ(mtl_holds(k, t, f),
              team_holds(interpret_kripke(k), lift_team(t, var), standard_translation(f, var)))
        << print(f);
  }
}

TEST(SatReduction, Examples) {
  auto accepts = [](const std::string& text, bool equality) {
    ReducedInstance r = reduce_ptl_sat_to_mc(mtl(text), equality);
    return team_holds(r.structure, r.team, r.formula);
  };
  for (bool eq : {true, false}) {
    EXPECT_TRUE(accepts("p1", eq));
    EXPECT_FALSE(accepts("p1 & ~p1", eq));
    EXPECT_TRUE(accepts("NE p1", eq));
    EXPECT_TRUE(accepts("p1 & NE !p2", eq));
    EXPECT_FALSE(accepts("NE p1 & !p1", eq));
  }
  ReducedInstance r = reduce_ptl_sat_to_mc(mtl("p | q"));
  EXPECT_EQ(r.structure.domain_size(), 2u);
  EXPECT_EQ(r.team, Team::unit());
  EXPECT_TRUE(r.formula.free_vars().empty());
  EXPECT_THROW(reduce_ptl_sat_to_mc(mtl("<>p")), FragmentError);
}

// Accepted exactly when the formula has a satisfying Kripke team.
TEST(SatReduction, MatchesSatisfiability) {
  Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_mtl(rng, kPQ, 1 + rng() % 7, 0);
    bool sat = ptl_satisfiable(f);
    for (bool eq : {true, false}) {
      ReducedInstance r = reduce_ptl_sat_to_mc(f, eq);
      EXPECT_EQ(team_holds(r.structure, r.team, r.formula), sat) << print(f);
    }
  }
}

TEST(McReduction, Shape) {
  KripkeStructure k(2);
  k.add_edge(0, 1);
  k.set_valuation("p", world_set({0}));
  ReducedInstance r = reduce_ptl_mc_to_fo_mc(k, world_set({0, 1}), mtl("p | ~p"));
  EXPECT_EQ(r.structure, interpret_kripke(k));
  EXPECT_EQ(r.team, lift_team(world_set({0, 1})));
  EXPECT_EQ(r.formula, standard_translation(mtl("p | ~p")));
  EXPECT_THROW(reduce_ptl_mc_to_fo_mc(k, 1, mtl("<>p")), FragmentError);
}

TEST(McReduction, PreservesAnswers) {
  Rng rng(44);
  for (int i = 0; i < 500; ++i) {
    KripkeStructure k = random_kripke(rng, 1 + rng() % 4, kPQ);
    WorldSet t = random_world_set(rng, k.world_count());
    Formula f = random_mtl(rng, kPQ, 1 + rng() % 8, 0);
    ReducedInstance r = reduce_ptl_mc_to_fo_mc(k, t, f);
    PtlOracle oracle(k.world_count(), k.valuations());
    EXPECT_EQ(team_holds(r.structure, r.team, r.formula), oracle.holds(t, f)) << print(f);
  }
}

// One quantifier per modality, so qr(st(phi)) stays within 2 md(phi).
TEST(StandardTranslation, QuantifierRankFollowsModalDepth) {
  Rng rng(45);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_mtl(rng, kPQ, 1 + rng() % 10, 4);
    std::size_t qr = quantifier_rank(standard_translation(f));
    EXPECT_EQ(qr, modal_depth(f)) << print(f);
    EXPECT_LE(qr, 2 * modal_depth(f));
  }
}
