#include <benchmark/benchmark.h>

#include <cmath>

#include "teamlogic/evaluator.hpp"
#include "teamlogic/generate.hpp"
#include "teamlogic/normal_form.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/so.hpp"
#include "teamlogic/solver.hpp"
#include "teamlogic/translate.hpp"

using namespace teamlogic;

namespace {

const std::map<std::string, std::size_t> kPR = {{"P", 1}, {"R", 2}};

Vocabulary vocab() {
  Vocabulary v;
  v.add_predicate("P", 1);
  v.add_predicate("R", 2);
  return v;
}

Formula team(const std::string& text) { return parse(text, Language::Team, vocab()); }

Team rows(std::size_t count, std::size_t n) {
  std::vector<Row> rs;
  for (std::size_t i = 0; i < count; ++i) rs.push_back({static_cast<Element>(i % n), static_cast<Element>(i / n % n)});
  return Team({"x", "y"}, rs);
}

}  // namespace

// Failing split: every one of the 3^|T| covers is tried.
static void BM_SplitWorstCase(benchmark::State& state) {
  Structure a(4);
  Team t = rows(state.range(0), 4);
  Formula f = team("~(x = x) | ~(y = y)");
  EvalOptions opts;
  opts.memoize = false;
  for (auto _ : state) benchmark::DoNotOptimize(eval_team(a, t, f, opts).verdict);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SplitWorstCase)->DenseRange(1, 8)->Complexity([](benchmark::IterationCount n) {
  return std::pow(3.0, static_cast<double>(n));
});

static void BM_EvalTeamRandom(benchmark::State& state) {
  Rng rng(1);
  FormulaSpec spec;
  spec.predicates = kPR;
  spec.dependencies = {{"dep", 2}, {"inc", 2}};
  std::vector<Formula> fs;
  for (int i = 0; i < 64; ++i) fs.push_back(random_team_formula(rng, spec, state.range(0)));
  Structure a = random_structure(rng, kPR, 3);
  Team t = random_team(rng, {"x", "y"}, 3, 4);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(team_holds(a, t, fs[i++ % fs.size()]));
}
BENCHMARK(BM_EvalTeamRandom)->Arg(4)->Arg(8)->Arg(12);

static void BM_EvalSo(benchmark::State& state) {
  Rng rng(2);
  FormulaSpec spec;
  spec.predicates = kPR;
  spec.dependencies = {{"dep", 2}};
  std::vector<std::pair<Formula, SOAssignment>> cases;
  Structure a = random_structure(rng, kPR, 2);
  while (cases.size() < 32) {
    Formula f = random_team_formula(rng, spec, 5);
    SOAssignment j;
    j.relations["T"] = image(f.free_vars(), random_team(rng, f.free_vars(), 2, 3), 2);
    cases.push_back({translate_eta(f, f.free_vars(), "T"), j});
  }
  SoOptions opts;
  opts.mode = state.range(0) ? SoMode::Pruned : SoMode::Exhaustive;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [f, j] = cases[i++ % cases.size()];
    benchmark::DoNotOptimize(eval_so(a, j, f, opts).verdict);
  }
  state.SetLabel(state.range(0) ? "pruned" : "exhaustive");
}
BENCHMARK(BM_EvalSo)->Arg(0)->Arg(1);

static void BM_Dnf(benchmark::State& state) {
  Rng rng(3);
  FormulaSpec spec;
  spec.predicates = kPR;
  std::vector<Formula> fs;
  for (int i = 0; i < 64; ++i) fs.push_back(random_team_formula(rng, spec, state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dnf_expand(fs[i++ % fs.size()]).disjuncts.size());
}
BENCHMARK(BM_Dnf)->Arg(4)->Arg(8)->Arg(12);

static void BM_Sat(benchmark::State& state) {
  Formula f = team("NE (P(x) & R(x,y)) & NE (!P(x) & R(y,x)) & dep(x,y)");
  SolverOptions opts;
  opts.max_domain = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sat_bounded(f, vocab(), opts).status);
}
BENCHMARK(BM_Sat)->Arg(2)->Arg(3);

static void BM_SatFo2(benchmark::State& state) {
  Formula f = team("NE (P(x) & R(x,y)) & NE (!P(x) & R(y,x)) & A y. (R(x,y) | ~P(y))");
  SolverOptions opts;
  opts.max_domain = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sat_fo2(f, vocab(), opts).status);
}
BENCHMARK(BM_SatFo2)->Arg(2)->Arg(3);

static void BM_Mtl(benchmark::State& state) {
  Rng rng(4);
  std::vector<std::string> props = {"p", "q"};
  KripkeStructure k = random_kripke(rng, state.range(0), props);
  std::vector<Formula> fs;
  for (int i = 0; i < 64; ++i) fs.push_back(random_mtl(rng, props, 8, 2));
  WorldSet all = (WorldSet{1} << state.range(0)) - 1;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mtl_holds(k, all, fs[i++ % fs.size()]));
}
BENCHMARK(BM_Mtl)->Arg(3)->Arg(5)->Arg(8);

BENCHMARK_MAIN();
