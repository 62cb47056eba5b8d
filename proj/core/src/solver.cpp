#include "teamlogic/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "teamlogic/error.hpp"
#include "teamlogic/generate.hpp"
#include "teamlogic/normal_form.hpp"

namespace teamlogic {

std::string_view to_string(SatStatus status) {
  switch (status) {
    case SatStatus::Sat: return "sat";
    case SatStatus::UnsatUpTo: return "unsat-up-to";
    case SatStatus::ResourceExhausted: return "resource-exhausted";
  }
  return "?";
}

std::string_view to_string(ValidStatus status) {
  switch (status) {
    case ValidStatus::ValidUpTo: return "valid-up-to";
    case ValidStatus::Counterexample: return "counterexample";
    case ValidStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

void symbols(const Formula& f, std::map<std::string, std::size_t>& preds) {
  if (f.kind() == Kind::Atom) preds[f.name()] = f.terms().size();
  for (std::size_t i = 0; i < f.child_count(); ++i) symbols(f.child(i), preds);
}

// Predicates of `phi`, checked against the vocabulary.
std::map<std::string, std::size_t> used_predicates(const Formula& phi, const Vocabulary& vocab) {
  if (!vocab.relational()) {
    throw FragmentError("satisfiability search needs a relational vocabulary");
  }
  if (contains_kind(phi, Kind::SoExists) || contains_kind(phi, Kind::SoForall) ||
      contains_kind(phi, Kind::Prop) || contains_kind(phi, Kind::Box) ||
      contains_kind(phi, Kind::Diamond)) {
    throw FragmentError("not a first-order team formula");
  }
  std::map<std::string, std::size_t> used;
  symbols(phi, used);
  for (const auto& [name, arity] : used) {
    auto declared = vocab.predicate_arity(name);
    if (!declared) throw UnknownSymbolError("unknown predicate '" + name + "'");
    if (*declared != arity) throw ArityError("predicate '" + name + "' used with the wrong arity");
  }
  return used;
}

// Adds empty relations for the vocabulary predicates the search left out.
Structure complete(Structure a, const Vocabulary& vocab) {
  for (const auto& [name, arity] : vocab.predicates()) {
    if (!a.find_relation(name)) a.set_relation(name, Relation(arity, a.domain_size()));
  }
  return a;
}

struct Found {
  Structure structure;
  Team team;
};

// Runs `probe` on structure indices 0..count-1 over `jobs` threads and keeps
// the hit with the lowest index. `probe` returns a witness or nothing; it may
// report exhaustion through the flag.
struct SearchOutcome {
  std::optional<std::pair<std::uint64_t, Found>> best;
  bool exhausted = false;
  std::string reason;
};

SearchOutcome parallel_search(
    std::uint64_t count, unsigned jobs,
    const std::function<std::optional<Found>(std::uint64_t, std::atomic<bool>&)>& probe) {
  std::atomic<std::uint64_t> best_index{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<bool> exhausted{false};
  std::mutex mutex;
  SearchOutcome outcome;
  std::exception_ptr error;

  auto worker = [&](unsigned id) {
    try {
      for (std::uint64_t s = id; s < count; s += jobs) {
        if (s > best_index.load()) break;
        std::optional<Found> hit = probe(s, exhausted);
        if (hit) {
          std::lock_guard<std::mutex> lock(mutex);
          if (!outcome.best || s < outcome.best->first) {
            outcome.best.emplace(s, std::move(*hit));
            best_index = s;
          }
          break;
        }
      }
    } catch (const ResourceExhausted& e) {
      std::lock_guard<std::mutex> lock(mutex);
      exhausted = true;
      if (outcome.reason.empty()) outcome.reason = e.what();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex);
      if (!error) error = std::current_exception();
    }
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker, i);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  outcome.exhausted = exhausted.load();
  if (outcome.exhausted && outcome.reason.empty()) outcome.reason = "evaluation budget exhausted";
  return outcome;
}

class CandidateMeter {
 public:
  explicit CandidateMeter(std::uint64_t limit) : limit_(limit) {}
  void tick() {
    std::uint64_t n = ++count_;
    if (limit_ && n > limit_) throw ResourceExhausted("candidate limit reached");
  }
  std::uint64_t count() const { return std::min<std::uint64_t>(count_.load(), limit_ ? limit_ : count_.load()); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> count_{0};
};

EvalOptions eval_options(const SolverOptions& options) {
  EvalOptions e;
  e.budget = options.budget;
  e.registry = options.registry;
  return e;
}

// Hard check of a witness; a failure is a bug, never a verdict.
void verify(const Structure& a, const Team& t, const Formula& phi, bool expected,
            const SolverOptions& options) {
  EvalOptions e = eval_options(options);
  e.budget = {};
  if (team_holds(a, t, phi, e) != expected) {
    throw InvariantError("solver witness failed re-verification");
  }
}

Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& m);

Term rename_term(const Term& t, const std::map<std::string, std::string>& m) {
  if (t.is_variable()) return Term::variable(m.at(t.name()));
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(rename_term(a, m));
  return Term::apply(t.name(), std::move(args));
}

std::vector<Term> rename_terms(const std::vector<Term>& ts, const std::map<std::string, std::string>& m) {
  std::vector<Term> out;
  for (const Term& t : ts) out.push_back(rename_term(t, m));
  return out;
}

// Renames every variable occurrence, bound or free, by a bijection.
Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& m) {
  auto c = [&](std::size_t i) { return rename_vars(f.child(i), m); };
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Bottom:
      return f;
    case Kind::Atom: return Formula::atom(f.name(), rename_terms(f.terms(), m));
    case Kind::Equal: {
      auto ts = rename_terms(f.terms(), m);
      return Formula::equal(ts[0], ts[1]);
    }
    case Kind::Dependency: return Formula::dependency(f.name(), rename_terms(f.terms(), m));
    case Kind::Not: return Formula::neg(c(0));
    case Kind::Tilde: return Formula::tilde(c(0));
    case Kind::And: return Formula::conj(c(0), c(1));
    case Kind::Or: return Formula::disj(c(0), c(1));
    case Kind::Exists: return Formula::exists(m.at(f.name()), c(0));
    case Kind::Forall: return Formula::forall(m.at(f.name()), c(0));
    default: throw FragmentError("not a first-order team formula");
  }
}

}  // namespace

SatResult sat_bounded(const Formula& phi, const Vocabulary& vocab, const SolverOptions& options) {
  std::map<std::string, std::size_t> used = used_predicates(phi, vocab);
  const VarList& fr = phi.free_vars();
  EvalOptions eval = eval_options(options);
  CandidateMeter meter(options.max_candidates);
  SatResult result;
  try {
    for (std::size_t n = 1; n <= options.max_domain; ++n) {
      std::uint64_t structures = structure_count(used, n);
      std::uint64_t teams = team_count(fr, n);
      SearchOutcome out = parallel_search(
          structures, options.jobs,
          [&](std::uint64_t s, std::atomic<bool>& exhausted) -> std::optional<Found> {
            Structure a = complete(structure_at(used, n, s), vocab);
            for (std::uint64_t i = 1; i <= teams; ++i) {
              std::uint64_t mask = i % teams;  // the empty team comes last
              meter.tick();
              Team t = team_from_mask(fr, n, mask);
              EvalResult r = eval_team(a, t, phi, eval);
              if (r.verdict == Verdict::True) return Found{a, t};
              if (r.verdict == Verdict::ResourceExhausted) exhausted = true;
            }
            return std::nullopt;
          });
      if (out.best) {
        Found& f = out.best->second;
        verify(f.structure, f.team, phi, true, options);
        result.status = SatStatus::Sat;
        result.structure = std::move(f.structure);
        result.team = std::move(f.team);
        result.bound = n - 1;
        result.candidates = meter.count();
        return result;
      }
      if (out.exhausted) {
        result.status = SatStatus::ResourceExhausted;
        result.reason = out.reason;
        result.bound = n - 1;
        result.candidates = meter.count();
        return result;
      }
      result.bound = n;
    }
  } catch (const ResourceExhausted& e) {
    result.status = SatStatus::ResourceExhausted;
    result.reason = e.what();
    result.candidates = meter.count();
    return result;
  }
  result.status = SatStatus::UnsatUpTo;
  result.candidates = meter.count();
  return result;
}

SatResult sat_fo2(const Formula& phi, const Vocabulary& vocab, const SolverOptions& options) {
  std::map<std::string, std::size_t> used = used_predicates(phi, vocab);
  if (contains_kind(phi, Kind::Dependency)) {
    throw FragmentError("the two-variable pipeline does not handle dependency atoms");
  }
  VarList vars = all_vars(phi);
  if (vars.size() > 2) throw FragmentError("the formula uses more than two variables");

  // Work over the variables x and y.
  std::map<std::string, std::string> to_xy, from_xy;
  bool plain = std::all_of(vars.begin(), vars.end(), [](const auto& v) { return v == "x" || v == "y"; });
  const std::vector<std::string> targets = {"x", "y"};
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string target = plain ? vars[i] : targets[i];
    to_xy[vars[i]] = target;
    from_xy[target] = vars[i];
  }
  Formula psi = plain ? phi : rename_vars(phi, to_xy);
  VarList fr_xy = psi.free_vars();

  SatResult result;
  DNF dnf;
  try {
    dnf = dnf_expand(psi, options.max_dnf_size);
  } catch (const ResourceExhausted& e) {
    result.status = SatStatus::ResourceExhausted;
    result.reason = e.what();
    return result;
  }
  std::vector<Formula> gammas;
  for (const Disjunct& d : dnf.disjuncts) gammas.push_back(build_gamma(d));

  CandidateMeter meter(options.max_candidates);
  try {
    for (std::size_t n = 1; n <= options.max_domain; ++n) {
      std::uint64_t structures = structure_count(used, n);
      SearchOutcome out = parallel_search(
          structures, options.jobs,
          [&](std::uint64_t s, std::atomic<bool>&) -> std::optional<Found> {
            Structure a = complete(structure_at(used, n, s), vocab);
            for (std::size_t k = 0; k < gammas.size(); ++k) {
              meter.tick();
              if (!eval_fo(a, Assignment(), gammas[k])) continue;
              // One row per beta: a pair satisfying alpha & beta.
              const Disjunct& d = dnf.disjuncts[k];
              std::vector<Row> rows;
              for (const Formula& b : d.betas) {
                Formula ab = Formula::conj(d.alpha, b);
                bool found = false;
                for (Element u = 0; u < n && !found; ++u) {
                  for (Element v = 0; v < n && !found; ++v) {
                    if (eval_fo(a, Assignment({"x", "y"}, {u, v}), ab)) {
                      rows.push_back({u, v});
                      found = true;
                    }
                  }
                }
                if (!found) throw InvariantError("satisfiability sentence has no witness pair");
              }
              Team pairs = restrict(Team({"x", "y"}, std::move(rows)), fr_xy);
              VarList domain;
              for (const auto& v : pairs.domain()) domain.push_back(from_xy.at(v));
              return Found{a, Team(domain, pairs.rows())};
            }
            return std::nullopt;
          });
      if (out.best) {
        Found& f = out.best->second;
        verify(f.structure, f.team, phi, true, options);
        result.status = SatStatus::Sat;
        result.structure = std::move(f.structure);
        result.team = std::move(f.team);
        result.bound = n - 1;
        result.candidates = meter.count();
        return result;
      }
      if (out.exhausted) {
        result.status = SatStatus::ResourceExhausted;
        result.reason = out.reason;
        result.bound = n - 1;
        result.candidates = meter.count();
        return result;
      }
      result.bound = n;
    }
  } catch (const ResourceExhausted& e) {
    result.status = SatStatus::ResourceExhausted;
    result.reason = e.what();
    result.candidates = meter.count();
    return result;
  }
  result.status = SatStatus::UnsatUpTo;
  result.candidates = meter.count();
  return result;
}

ValidResult valid_bounded(const Formula& phi, const Vocabulary& vocab, const SolverOptions& options,
                          bool fo2) {
  Formula negated = Formula::tilde(phi);
  SatResult sat = fo2 ? sat_fo2(negated, vocab, options) : sat_bounded(negated, vocab, options);
  ValidResult out;
  out.bound = sat.bound;
  out.candidates = sat.candidates;
  out.reason = sat.reason;
  switch (sat.status) {
    case SatStatus::Sat:
      verify(*sat.structure, *sat.team, phi, false, options);
      out.status = ValidStatus::Counterexample;
      out.structure = std::move(sat.structure);
      out.team = std::move(sat.team);
      break;
    case SatStatus::UnsatUpTo: out.status = ValidStatus::ValidUpTo; break;
    case SatStatus::ResourceExhausted: out.status = ValidStatus::Unknown; break;
  }
  return out;
}

}  // namespace teamlogic
