#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teamlogic/error.hpp"
#include "teamlogic/evaluator.hpp"
#include "teamlogic/generate.hpp"
#include "teamlogic/mtl_bridge.hpp"
#include "teamlogic/normal_form.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/printer.hpp"
#include "teamlogic/so.hpp"
#include "teamlogic/solver.hpp"
#include "teamlogic/text_format.hpp"
#include "teamlogic/translate.hpp"
#include "teamlogic/vocabulary.hpp"

namespace tl = teamlogic;
using json = nlohmann::json;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitResource = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitFile = 66;

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

int verdict_exit(tl::Verdict v) {
  switch (v) {
    case tl::Verdict::True: return kExitTrue;
    case tl::Verdict::False: return kExitFalse;
    default: return kExitResource;
  }
}

void emit(const Globals& g, const json& record, const std::string& text) {
  if (g.json) {
    std::cout << record.dump() << "\n";
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
}

json stats_json(const tl::EvalStats& s, std::uint64_t alternations = 0) {
  return {{"nodes", s.nodes},
          {"splits", s.splits},
          {"supplements", s.supplements},
          {"successors", s.successors},
          {"memo_hits", s.memo_hits},
          {"alternations", alternations}};
}

json team_json(const tl::Team& t) {
  json rows = json::array();
  for (const auto& r : t.rows()) rows.push_back(r);
  return {{"vars", t.domain()}, {"rows", rows}};
}

json structure_json(const tl::Structure& a) {
  json rels = json::object();
  for (const auto& [name, r] : a.relations()) rels[name] = r.tuples();
  return {{"domain", a.domain_size()}, {"relations", rels}};
}

// Vocabulary from --vocab, else from the structure, else inferred from the
// formula text.
tl::ParseContext make_context(const std::string& vocab_path, const tl::Structure* structure,
                              const std::string& text, tl::Language lang) {
  tl::ParseContext ctx;
  if (!vocab_path.empty()) {
    tl::VocabularyFile vf = tl::load_vocabulary(vocab_path);
    ctx.vocabulary = vf.vocabulary;
    ctx.registry = vf.registry;
  } else if (structure) {
    ctx.vocabulary = structure->vocabulary();
  } else if (lang != tl::Language::MTL) {
    ctx.vocabulary = tl::infer_vocabulary(text, lang, ctx);
  }
  return ctx;
}

tl::Language language_option(const std::string& name) {
  auto lang = tl::language_from_string(name);
  if (!lang) throw CLI::ValidationError("--lang", "unknown language '" + name + "'");
  return *lang;
}

struct Runner {
  Globals g;

  // parse
  std::string formula, lang = "team", vocab;
  bool unicode = false;

  int parse() {
    tl::Language l = language_option(lang);
    tl::ParseContext ctx = make_context(vocab, nullptr, formula, l);
    tl::Formula f = tl::parse(formula, l, ctx);
    json rec = {{"formula", tl::print(f)},
                {"free_vars", f.free_vars()},
                {"size", f.size()},
                {"width", tl::width(f)},
                {"quantifier_rank", tl::quantifier_rank(f)},
                {"modal_depth", tl::modal_depth(f)}};
    emit(g, rec, tl::print(f, unicode ? tl::PrintStyle::Unicode : tl::PrintStyle::Ascii));
    return 0;
  }

  // mc
  std::string structure_path, team_name = "T";
  std::uint64_t budget = 0;

  int mc() {
    tl::Document doc = tl::load_document(structure_path);
    tl::Language l = language_option(lang);
    tl::EvalOptions opts;
    opts.budget.max_nodes = budget;
    tl::EvalResult r;
    if (l == tl::Language::MTL) {
      if (!doc.kripke) throw tl::InvariantError("the file has no Kripke structure");
      tl::ParseContext ctx;
      tl::Formula f = tl::parse(formula, l, ctx);
      r = tl::eval_mtl(*doc.kripke, doc.world_team(team_name), f, opts);
    } else if (l == tl::Language::Team || l == tl::Language::FO) {
      if (!doc.structure) throw tl::InvariantError("the file has no structure");
      tl::ParseContext ctx = make_context(vocab, &*doc.structure, formula, l);
      tl::Formula f = tl::parse(formula, l, ctx);
      opts.registry = &ctx.registry;
      r = tl::eval_team(*doc.structure, doc.team(team_name), f, opts);
    } else {
      throw CLI::ValidationError("--lang", "mc takes team, fo or mtl; use mc-so for so");
    }
    json rec = {{"verdict", tl::to_string(r.verdict)}, {"stats", stats_json(r.stats)}};
    emit(g, rec, std::string(tl::to_string(r.verdict)));
    return verdict_exit(r.verdict);
  }

  // mc-so
  std::string assignment_path;
  bool exhaustive = false;

  int mc_so() {
    tl::Document doc = tl::load_document(structure_path);
    if (!doc.structure) throw tl::InvariantError("the file has no structure");
    tl::SOAssignment j;
    if (!assignment_path.empty()) j = tl::load_so_assignment(assignment_path, doc.structure->domain_size());
    tl::ParseContext ctx;
    ctx.vocabulary = doc.structure->vocabulary();
    for (const auto& [name, r] : j.relations) ctx.relation_variables[name] = r.arity();
    for (const auto& [name, f] : j.functions) ctx.function_variables[name] = f.arity();
    tl::Formula f = tl::parse(formula, tl::Language::SO, ctx);
    tl::SoOptions opts;
    opts.max_nodes = budget;
    opts.mode = exhaustive ? tl::SoMode::Exhaustive : tl::SoMode::Pruned;
    tl::SoResult r = tl::eval_so(*doc.structure, j, f, opts);
    json rec = {{"verdict", tl::to_string(r.verdict)},
                {"stats",
                 {{"nodes", r.stats.nodes},
                  {"candidates", r.stats.candidates},
                  {"alternations", r.stats.alternations},
                  {"memo_hits", r.stats.memo_hits}}}};
    emit(g, rec, std::string(tl::to_string(r.verdict)));
    return verdict_exit(r.verdict);
  }

  // translate so / st
  std::vector<std::string> vars;
  std::string relation = "R", sparse, st_var = "x";

  int translate_so() {
    tl::ParseContext ctx = make_context(vocab, nullptr, formula, tl::Language::Team);
    tl::Formula f = tl::parse(formula, tl::Language::Team, ctx);
    std::vector<tl::Variable> xs = vars;
    if (xs.empty()) xs = f.free_vars();
    tl::Formula out = sparse.empty()
                          ? tl::translate_eta(f, xs, relation, ctx.registry)
                          : tl::translate_zeta(f, xs, relation, tl::SparseBound::parse(sparse), ctx.registry);
    json rec = {{"formula", tl::print(out)}, {"relation", relation}, {"vars", xs}, {"size", out.size()}};
    emit(g, rec, tl::print(out, unicode ? tl::PrintStyle::Unicode : tl::PrintStyle::Ascii));
    return 0;
  }

  int translate_st() {
    tl::ParseContext ctx;
    tl::Formula f = tl::parse(formula, tl::Language::MTL, ctx);
    tl::Formula out = tl::standard_translation(f, st_var);
    json rec = {{"formula", tl::print(out)}, {"width", tl::width(out)},
                {"quantifier_rank", tl::quantifier_rank(out)}};
    emit(g, rec, tl::print(out, unicode ? tl::PrintStyle::Unicode : tl::PrintStyle::Ascii));
    return 0;
  }

  // dnf
  std::size_t dnf_budget = 200000;

  int dnf() {
    tl::ParseContext ctx = make_context(vocab, nullptr, formula, tl::Language::Team);
    tl::Formula f = tl::parse(formula, tl::Language::Team, ctx);
    tl::DNF d = tl::dnf_expand(f, dnf_budget);
    json disjuncts = json::array();
    for (const auto& dj : d.disjuncts) {
      json betas = json::array();
      for (const auto& b : dj.betas) betas.push_back(tl::print(b));
      disjuncts.push_back({{"alpha", tl::print(dj.alpha)}, {"betas", betas}});
    }
    emit(g, {{"disjuncts", disjuncts}, {"size", tl::dnf_size(d)}}, tl::print_dnf(d));
    return 0;
  }

  // sat / valid
  std::size_t max_domain = 3;
  std::uint64_t max_candidates = 0;
  bool fo2 = false;

  tl::SolverOptions solver_options(const tl::ParseContext& ctx) const {
    tl::SolverOptions o;
    o.max_domain = max_domain;
    o.budget.max_nodes = budget;
    o.max_candidates = max_candidates;
    o.max_dnf_size = dnf_budget;
    o.jobs = g.jobs;
    o.registry = &ctx.registry;
    return o;
  }

  static std::string witness_text(const std::optional<tl::Structure>& a, const std::optional<tl::Team>& t) {
    return tl::format_structure(*a) + tl::format_team(*t, "T");
  }

  int sat() {
    tl::ParseContext ctx = make_context(vocab, nullptr, formula, tl::Language::Team);
    tl::Formula f = tl::parse(formula, tl::Language::Team, ctx);
    tl::SatResult r = fo2 ? tl::sat_fo2(f, ctx.vocabulary, solver_options(ctx))
                          : tl::sat_bounded(f, ctx.vocabulary, solver_options(ctx));
    json rec = {{"verdict", tl::to_string(r.status)},
                {"bound", r.bound},
                {"stats", {{"candidates", r.candidates}}}};
    std::string text;
    switch (r.status) {
      case tl::SatStatus::Sat:
        rec["witness"] = {{"structure", structure_json(*r.structure)}, {"team", team_json(*r.team)}};
        text = "Sat\n" + witness_text(r.structure, r.team);
        break;
      case tl::SatStatus::UnsatUpTo:
        text = "UnsatUpTo(" + std::to_string(r.bound) + ")";
        break;
      case tl::SatStatus::ResourceExhausted:
        rec["reason"] = r.reason;
        text = "ResourceExhausted: " + r.reason;
        break;
    }
    emit(g, rec, text);
    return r.status == tl::SatStatus::Sat ? kExitTrue
           : r.status == tl::SatStatus::UnsatUpTo ? kExitFalse
                                                   : kExitResource;
  }

  int valid() {
    tl::ParseContext ctx = make_context(vocab, nullptr, formula, tl::Language::Team);
    tl::Formula f = tl::parse(formula, tl::Language::Team, ctx);
    tl::ValidResult r = tl::valid_bounded(f, ctx.vocabulary, solver_options(ctx), fo2);
    json rec = {{"verdict", tl::to_string(r.status)},
                {"bound", r.bound},
                {"stats", {{"candidates", r.candidates}}}};
    std::string text;
    switch (r.status) {
      case tl::ValidStatus::Counterexample:
        rec["witness"] = {{"structure", structure_json(*r.structure)}, {"team", team_json(*r.team)}};
        text = "Counterexample\n" + witness_text(r.structure, r.team);
        break;
      case tl::ValidStatus::ValidUpTo:
        text = "ValidUpTo(" + std::to_string(r.bound) + ")";
        break;
      case tl::ValidStatus::Unknown:
        rec["reason"] = r.reason;
        text = "Unknown: " + r.reason;
        break;
    }
    emit(g, rec, text);
    return r.status == tl::ValidStatus::ValidUpTo ? kExitTrue
           : r.status == tl::ValidStatus::Counterexample ? kExitFalse
                                                          : kExitResource;
  }

  // reduce
  bool no_equality = false;

  int reduce_ptl_sat() {
    tl::ParseContext ctx;
    tl::Formula f = tl::parse(formula, tl::Language::MTL, ctx);
    tl::ReducedInstance r = tl::reduce_ptl_sat_to_mc(f, !no_equality);
    return print_instance(r);
  }

  int reduce_ptl_mc() {
    tl::Document doc = tl::load_document(structure_path);
    if (!doc.kripke) throw tl::InvariantError("the file has no Kripke structure");
    tl::ParseContext ctx;
    tl::Formula f = tl::parse(formula, tl::Language::MTL, ctx);
    tl::ReducedInstance r = tl::reduce_ptl_mc_to_fo_mc(*doc.kripke, doc.world_team(team_name), f);
    return print_instance(r);
  }

  int print_instance(const tl::ReducedInstance& r) {
    json rec = {{"structure", structure_json(r.structure)},
                {"team", team_json(r.team)},
                {"formula", tl::print(r.formula)}};
    emit(g, rec,
         tl::format_structure(r.structure) + tl::format_team(r.team, "T") + "# formula\n# " +
             tl::print(r.formula));
    return 0;
  }

  // fuzz: random cross-checks of the direct evaluator against the
  // second-order translation.
  std::size_t fuzz_count = 200;

  int fuzz() {
    tl::Rng rng(g.seed);
    tl::FormulaSpec spec;
    spec.predicates = {{"P", 1}, {"R", 2}};
    spec.dependencies = {{"dep", 2}, {"inc", 2}};
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < fuzz_count; ++i) {
      std::size_t n = 1 + rng() % 3;
      tl::Formula f = tl::random_team_formula(rng, spec, 1 + rng() % 8);
      tl::Structure a = tl::random_structure(rng, spec.predicates, n);
      tl::Team t = tl::random_team(rng, f.free_vars(), n, 4);
      bool direct = tl::team_holds(a, t, f);
      tl::SOAssignment j;
      j.relations["T"] = tl::image(f.free_vars(), t, n);
      bool via_so = tl::so_holds(a, j, tl::translate_eta(f, f.free_vars(), "T"));
      if (direct != via_so) {
        ++mismatches;
        std::cerr << "mismatch: " << tl::print(f) << "\n" << tl::format_structure(a) << tl::format_team(t);
      }
    }
    emit(g, {{"instances", fuzz_count}, {"mismatches", mismatches}, {"seed", g.seed}},
         std::to_string(fuzz_count) + " instances, " + std::to_string(mismatches) + " mismatches");
    return mismatches == 0 ? kExitTrue : kExitFalse;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team logic toolkit: model checking, translations and bounded satisfiability"};
  app.require_subcommand(1);
  Runner run;
  // Global flags are accepted before or after the subcommand.
  auto globals = [&](CLI::App* sub) {
    sub->add_flag("--json", run.g.json, "Emit one JSON record instead of text");
    sub->add_option("--seed", run.g.seed, "Seed for randomized commands");
    sub->add_option("--jobs", run.g.jobs, "Worker threads for the solver")->check(CLI::Range(1u, 256u));
  };
  globals(&app);

  auto formula_opt = [&](CLI::App* sub) {
    sub->add_option("-f,--formula", run.formula, "Formula text")->required();
    globals(sub);
  };

  auto* parse = app.add_subcommand("parse", "Parse and pretty-print a formula");
  formula_opt(parse);
  parse->add_option("--lang", run.lang, "fo, team, mtl or so");
  parse->add_option("--vocab", run.vocab, "Vocabulary file");
  parse->add_flag("--unicode", run.unicode, "Print with logical symbols");

  auto* mc = app.add_subcommand("mc", "Model-check a team or modal team formula");
  formula_opt(mc);
  mc->add_option("--structure", run.structure_path, "Structure file")->required();
  mc->add_option("--team", run.team_name, "Team name in the structure file");
  mc->add_option("--lang", run.lang, "team, fo or mtl");
  mc->add_option("--vocab", run.vocab, "Vocabulary file (for custom dependencies)");
  mc->add_option("--budget", run.budget, "Evaluation step limit");

  auto* mc_so = app.add_subcommand("mc-so", "Model-check a second-order formula");
  formula_opt(mc_so);
  mc_so->add_option("--structure", run.structure_path, "Structure file")->required();
  mc_so->add_option("--so-assignment", run.assignment_path, "Second-order assignment file");
  mc_so->add_option("--budget", run.budget, "Evaluation step limit");
  mc_so->add_flag("--exhaustive", run.exhaustive, "Enumerate every candidate without pruning");

  auto* translate = app.add_subcommand("translate", "Translate formulas");
  translate->require_subcommand(1);
  auto* tr_so = translate->add_subcommand("so", "Team logic to second-order logic");
  formula_opt(tr_so);
  tr_so->add_option("--vars", run.vars, "Variable tuple, default Fr(formula)")->delimiter(',');
  tr_so->add_option("--relation", run.relation, "Name of the team relation");
  tr_so->add_option("--sparse", run.sparse, "Sparse bound, poly:c0,c1,.. or team:k,m");
  tr_so->add_option("--vocab", run.vocab, "Vocabulary file");
  tr_so->add_flag("--unicode", run.unicode, "Print with logical symbols");
  auto* tr_st = translate->add_subcommand("st", "Modal team logic to two-variable team logic");
  formula_opt(tr_st);
  tr_st->add_option("--var", run.st_var, "x or y")->check(CLI::IsMember({"x", "y"}));
  tr_st->add_flag("--unicode", run.unicode, "Print with logical symbols");

  auto* dnf = app.add_subcommand("dnf", "Normal form of a formula without dependency atoms");
  formula_opt(dnf);
  dnf->add_option("--budget", run.dnf_budget, "Size limit of the normal form");
  dnf->add_option("--vocab", run.vocab, "Vocabulary file");

  for (auto* sub : {app.add_subcommand("sat", "Bounded satisfiability search"),
                    app.add_subcommand("valid", "Bounded validity search")}) {
    formula_opt(sub);
    sub->add_option("--vocab", run.vocab, "Vocabulary file");
    sub->add_option("--max-domain", run.max_domain, "Largest domain searched")->check(CLI::Range(1, 64));
    sub->add_flag("--fo2", run.fo2, "Use the two-variable normal-form pipeline");
    sub->add_option("--budget", run.budget, "Step limit per evaluation");
    sub->add_option("--max-candidates", run.max_candidates, "Limit on candidate models");
    sub->add_option("--dnf-budget", run.dnf_budget, "Size limit of the normal form");
  }

  auto* reduce = app.add_subcommand("reduce", "Propositional reductions to first-order model checking");
  reduce->require_subcommand(1);
  auto* ptl_sat = reduce->add_subcommand("ptl-sat", "Satisfiability to model checking on {0,1}");
  formula_opt(ptl_sat);
  ptl_sat->add_flag("--no-equality", run.no_equality, "Use a unary predicate instead of equality");
  auto* ptl_mc = reduce->add_subcommand("ptl-mc", "Model checking on a Kripke structure");
  formula_opt(ptl_mc);
  ptl_mc->add_option("--structure", run.structure_path, "File with a Kripke structure")->required();
  ptl_mc->add_option("--team", run.team_name, "World team name");

  auto* fuzz = app.add_subcommand("fuzz", "Cross-check the evaluator against the second-order translation");
  fuzz->add_option("--count", run.fuzz_count, "Number of random instances");
  globals(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*parse) return run.parse();
    if (*mc) return run.mc();
    if (*mc_so) return run.mc_so();
    if (*tr_so) return run.translate_so();
    if (*tr_st) return run.translate_st();
    if (*dnf) return run.dnf();
    if (app.got_subcommand("sat")) return run.sat();
    if (app.got_subcommand("valid")) return run.valid();
    if (*ptl_sat) return run.reduce_ptl_sat();
    if (*ptl_mc) return run.reduce_ptl_mc();
    if (*fuzz) return run.fuzz();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "tlk: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tl::FileError& e) {
    std::cerr << "tlk: " << e.what() << "\n";
    return kExitFile;
  } catch (const tl::ResourceExhausted& e) {
    std::cerr << "tlk: resource exhausted: " << e.what() << "\n";
    emit(run.g, {{"verdict", "resource-exhausted"}, {"reason", e.what()}}, "resource-exhausted");
    return kExitResource;
  } catch (const tl::Error& e) {
    std::cerr << "tlk: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
