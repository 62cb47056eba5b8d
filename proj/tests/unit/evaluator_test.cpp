#include <gtest/gtest.h>

#include <set>

#include "harness.hpp"
#include "teamlogic/error.hpp"
#include "teamlogic/parser.hpp"

using namespace tltest;

namespace {

Vocabulary vocab() {
  Vocabulary v;
  v.add_predicate("P", 1);
  v.add_predicate("R", 2);
  return v;
}

Formula team(const std::string& text) { return parse(text, Language::Team, vocab()); }
Formula mtl(const std::string& text) { return parse(text, Language::MTL, Vocabulary()); }

const std::map<std::string, std::size_t> kPR = {{"P", 1}, {"R", 2}};

}  // namespace

TEST(EvalFo, Examples) {
  Structure a(2);
  Relation r(2, 2);
  r.insert({0, 1});
  a.set_relation("R", r);
  a.set_relation("P", Relation(1, 2));
  EXPECT_TRUE(eval_fo(a, Assignment::of({{"x", 0}}), team("E y. R(x,y)")));
  EXPECT_FALSE(eval_fo(a, Assignment::of({{"x", 1}}), team("E y. R(x,y)")));
  EXPECT_TRUE(eval_fo(a, Assignment::of({{"x", 1}}), team("x = x")));
  EXPECT_THROW(eval_fo(a, Assignment(), team("x = x")), UnboundVariableError);
}

TEST(EvalTeam, Examples) {
  Structure a(2);
  a.set_relation("P", Relation(1, 2));
  a.set_relation("R", Relation(2, 2));
  EXPECT_FALSE(team_holds(a, Team({"x", "y"}, {{0, 0}, {0, 1}}), team("dep(x,y)")));
  EXPECT_TRUE(team_holds(a, Team::empty({"x", "y"}), team("dep(x,y)")));
  EXPECT_FALSE(team_holds(a, Team::empty({"x"}), team("~(x = x)")));
  EXPECT_THROW(team_holds(a, Team({"x"}, {{0}}), team("dep(x,y)")), Error);
}

TEST(EvalTeam, BudgetIsReportedSeparately) {
  Structure a(3);
  a.set_relation("P", Relation(1, 3));
  a.set_relation("R", Relation::full(2, 3));
  Team t({"x", "y"}, {{0, 0}, {0, 1}, {1, 2}, {2, 2}});
  EvalOptions tight;
  tight.budget.max_nodes = 3;
  EvalResult r = eval_team(a, t, team("E x. (dep(x,y) | ~dep(y,x)) & A y. ~P(y)"), tight);
  EXPECT_EQ(r.verdict, Verdict::ResourceExhausted);
  EvalOptions few;
  few.budget.max_candidates = 2;
  EXPECT_EQ(eval_team(a, t, team("~R(x,y) | ~P(x)"), few).verdict, Verdict::ResourceExhausted);
}

TEST(EvalTeam, SplitjunctionTriesEveryCover) {
  Structure a(3);
  for (std::size_t rows = 0; rows <= 5; ++rows) {
    std::vector<Row> rs;
    for (std::size_t i = 0; i < rows; ++i) rs.push_back({static_cast<Element>(i % 3), static_cast<Element>(i / 3)});
    Team t({"x", "y"}, rs);
    EvalOptions opts;
    opts.memoize = false;
    EvalResult r = eval_team(a, t, team("~(x = x) | ~(y = y)"), opts);
    EXPECT_EQ(r.verdict, Verdict::False);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < rows; ++i) expected *= 3;
    EXPECT_EQ(r.stats.splits, expected) << rows << " rows";
  }
}

// Dependency atoms against their textbook readings.
TEST(EvalTeam, DependencyAtomsMatchDefinitions) {
  Rng rng(21);
  Formula dep = team("dep(x,y)");
  Formula inc = team("inc(x,y)");
  Formula exc = team("exc(x,y)");
  Formula ind = team("ind(x,y)");
  for (int i = 0; i < 500; ++i) {
    std::size_t n = 1 + rng() % 3;
    Structure a = random_structure(rng, kPR, n);
    Team t = random_team(rng, {"x", "y"}, n, 6);
    std::set<Element> xs, ys;
    std::set<std::pair<Element, Element>> pairs;
    std::map<Element, std::set<Element>> ys_of;
    for (const Row& r : t.rows()) {
      xs.insert(r[0]);
      ys.insert(r[1]);
      pairs.insert({r[0], r[1]});
      ys_of[r[0]].insert(r[1]);
    }
    bool functional = true;
    for (const auto& [x, s] : ys_of) functional = functional && s.size() == 1;
    bool included = std::includes(ys.begin(), ys.end(), xs.begin(), xs.end());
    bool disjoint = true;
    for (Element x : xs) disjoint = disjoint && !ys.count(x);
    bool independent = pairs.size() == xs.size() * ys.size();
    EXPECT_EQ(team_holds(a, t, dep), functional);
    EXPECT_EQ(team_holds(a, t, inc), included);
    EXPECT_EQ(team_holds(a, t, exc), disjoint);
    EXPECT_EQ(team_holds(a, t, ind), independent);
  }
}

TEST(EvalTeam, Flatness) {
  Rng rng(22);
  FormulaSpec spec;
  spec.predicates = kPR;
  spec.constants = true;
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 1 + rng() % 3;
    Formula f = random_fo(rng, spec, 1 + rng() % 8);
    Structure a = random_structure(rng, kPR, n);
    Team t = random_team(rng, {"x", "y"}, n, 5);
    bool rows = true;
    for (const Assignment& s : t.assignments()) rows = rows && eval_fo(a, s, f);
    EXPECT_EQ(team_holds(a, t, f), rows);
  }
}

TEST(EvalTeam, Locality) {
  Rng rng(23);
  FormulaSpec spec;
  spec.variables = {"x", "y"};
  spec.predicates = kPR;
  spec.dependencies = {{"dep", 2}, {"inc", 2}};
  EvalOptions full;
  full.restrict_to_free_vars = false;
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 1 + rng() % 3;
    Formula f = random_team_formula(rng, spec, 1 + rng() % 7);
    Structure a = random_structure(rng, kPR, n);
    Team t = random_team(rng, {"x", "y", "z"}, n, 5);
    bool wide = eval_team(a, t, f, full).verdict == Verdict::True;
    EXPECT_EQ(wide, team_holds(a, restrict(t, f.free_vars()), f));
  }
}

TEST(EvalTeam, EmptyTeam) {
  Rng rng(24);
  FormulaSpec spec;
  spec.predicates = kPR;
  spec.dependencies = {{"dep", 2}, {"inc", 2}, {"exc", 2}};
  spec.tilde = false;
  Structure a = random_structure(rng, kPR, 2);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_team_formula(rng, spec, 1 + rng() % 8);
    EXPECT_TRUE(team_holds(a, Team::empty({"x", "y"}), f));
    EXPECT_FALSE(team_holds(a, Team::empty({"x", "y"}), Formula::tilde(f)));
  }
}

// Switching off memoization, restriction or the hook fast path never changes
// a verdict.
TEST(EvalTeam, OptionsDoNotChangeVerdicts) {
  Rng rng(25);
  FormulaSpec spec;
  spec.predicates = kPR;
  spec.dependencies = {{"dep", 2}, {"inc", 2}};
  EvalOptions plain;
  plain.memoize = false;
  plain.restrict_to_free_vars = false;
  plain.hook_fast_path = false;
  FormulaSpec fo = spec;
  fo.dependencies.clear();
  for (int i = 0; i < 600; ++i) {
    std::size_t n = 1 + rng() % 3;
    Formula f = random_team_formula(rng, spec, 1 + rng() % 7);
    if (i % 2) f = hook(random_fo(rng, fo, 2), f);
    Structure a = random_structure(rng, kPR, n);
    Team t = random_team(rng, {"x", "y"}, n, 4);
    EXPECT_EQ(team_holds(a, t, f), eval_team(a, t, f, plain).verdict == Verdict::True);
  }
}

TEST(EvalHook, Examples) {
  Rng rng(26);
  FormulaSpec spec;
  spec.predicates = kPR;
  spec.dependencies = {{"dep", 2}};
  FormulaSpec fo = spec;
  fo.dependencies.clear();
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + rng() % 3;
    Structure a = random_structure(rng, kPR, n);
    Team t = random_team(rng, {"x", "y"}, n, 4);
    Formula phi = random_team_formula(rng, spec, 1 + rng() % 6);
    Formula alpha = random_fo(rng, fo, 1 + rng() % 3);
    auto holds = [&](const Formula& al) { return eval_hook(a, t, al, phi).verdict == Verdict::True; };
    EXPECT_EQ(holds(Formula::bottom()), team_holds(a, Team::empty(t.domain()), phi));
    EXPECT_EQ(holds(Formula::top()), team_holds(a, t, phi));
    EvalOptions slow;
    slow.hook_fast_path = false;
    EXPECT_EQ(holds(alpha), eval_team(a, t, hook(alpha, phi), slow).verdict == Verdict::True);
  }
}

TEST(EvalMtl, Examples) {
  KripkeStructure k(2);
  k.add_edge(0, 1);
  k.set_valuation("p", world_set({1}));
  EXPECT_TRUE(mtl_holds(k, world_set({0}), mtl("<>p")));
  EXPECT_TRUE(mtl_holds(k, world_set({0}), mtl("[]p")));
  EXPECT_FALSE(mtl_holds(k, 0, mtl("~p")));
  EXPECT_FALSE(mtl_holds(k, world_set({1}), mtl("<>p")));
  EXPECT_TRUE(mtl_holds(k, world_set({1}), mtl("[]!p")));
  EXPECT_TRUE(mtl_holds(k, world_set({0, 1}), mtl("p | !p & ~p")));
  EXPECT_FALSE(mtl_holds(k, world_set({0, 1}), mtl("p & ~p")));
}

TEST(EvalMtl, ModalityFreeIgnoresEdges) {
  Rng rng(27);
  std::vector<std::string> props = {"p", "q"};
  for (int i = 0; i < 500; ++i) {
    Formula f = random_mtl(rng, props, 1 + rng() % 8, 0);
    KripkeStructure k = random_kripke(rng, 3, props);
    KripkeStructure bare(3);
    for (const auto& [p, w] : k.valuations()) bare.set_valuation(p, w);
    WorldSet t = random_world_set(rng, 3);
    EXPECT_EQ(mtl_holds(k, t, f), mtl_holds(bare, t, f));
    // and both agree with the direct propositional oracle
    PtlOracle oracle(3, k.valuations());
    EXPECT_EQ(mtl_holds(k, t, f), oracle.holds(t, f));
  }
}

TEST(SatisfyingWorlds, MatchesSingletonTeams) {
  Rng rng(28);
  std::vector<std::string> props = {"p"};
  for (int i = 0; i < 200; ++i) {
    KripkeStructure k = random_kripke(rng, 3, props);
    Formula f = random_mtl(rng, props, 1 + rng() % 6, 2);
    if (!f.is_classical()) continue;
    WorldSet expected = 0;
    for (std::size_t w = 0; w < 3; ++w) {
      if (mtl_holds(k, world_set({w}), f)) expected |= world_set({w});
    }
    EXPECT_EQ(satisfying_worlds(k, f), expected);
  }
}
