#include "teamlogic/evaluator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "teamlogic/error.hpp"

namespace teamlogic {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::ResourceExhausted: return "resource-exhausted";
  }
  return "?";
}

namespace {

// Variable bindings as a stack; later entries shadow earlier ones.
struct Env {
  std::vector<std::pair<const std::string*, Element>> entries;

  Element lookup(const std::string& var) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      if (*it->first == var) return it->second;
    }
    throw UnboundVariableError("variable '" + var + "' is not assigned");
  }
};

class FoEval {
 public:
  explicit FoEval(const Structure& structure) : a_(structure), n_(structure.domain_size()) {}

  Element term(const Term& t, const Env& env) const {
    if (t.is_variable()) return env.lookup(t.name());
    const FunctionTable& f = a_.function(t.name());
    if (f.arity() != t.args().size()) throw ArityError("function '" + t.name() + "' arity mismatch");
    std::size_t code = 0;
    for (const Term& arg : t.args()) code = code * n_ + term(arg, env);
    return f.at(code);
  }

  bool eval(const Formula& f, Env& env) const {
    switch (f.kind()) {
      case Kind::Top: return true;
      case Kind::Bottom: return false;
      case Kind::Atom: {
        const Relation& r = a_.relation(f.name());
        if (r.arity() != f.terms().size()) {
          throw ArityError("predicate '" + f.name() + "' arity mismatch");
        }
        std::size_t code = 0;
        for (const Term& t : f.terms()) code = code * n_ + term(t, env);
        return r.test(code);
      }
      case Kind::Equal: return term(f.terms()[0], env) == term(f.terms()[1], env);
      case Kind::Not: return !eval(f.body(), env);
      case Kind::And: return eval(f.lhs(), env) && eval(f.rhs(), env);
      case Kind::Or: return eval(f.lhs(), env) || eval(f.rhs(), env);
      case Kind::Implies: return !eval(f.lhs(), env) || eval(f.rhs(), env);
      case Kind::Iff: return eval(f.lhs(), env) == eval(f.rhs(), env);
      case Kind::Exists:
      case Kind::Forall: {
        bool want = f.kind() == Kind::Exists;
        env.entries.push_back({&f.name(), 0});
        bool result = !want;
        for (std::size_t a = 0; a < n_; ++a) {
          env.entries.back().second = static_cast<Element>(a);
          if (eval(f.body(), env) == want) {
            result = want;
            break;
          }
        }
        env.entries.pop_back();
        return result;
      }
      default:
        throw FragmentError("not a first-order formula");
    }
  }

  // Every row of the team satisfies f.
  bool flat(const Formula& f, const Team& team) const {
    Env env;
    for (const auto& v : team.domain()) env.entries.push_back({&v, 0});
    for (const Row& row : team.rows()) {
      for (std::size_t i = 0; i < row.size(); ++i) env.entries[i].second = row[i];
      if (!eval(f, env)) return false;
    }
    return true;
  }

  bool row(const Formula& f, const Team& team, std::size_t index) const {
    Env env;
    const Row& r = team.rows()[index];
    for (std::size_t i = 0; i < r.size(); ++i) env.entries.push_back({&team.domain()[i], r[i]});
    return eval(f, env);
  }

 private:
  const Structure& a_;
  std::size_t n_;
};

void require_bound(const VarList& free, const VarList& domain) {
  for (const auto& v : free) {
    if (!std::binary_search(domain.begin(), domain.end(), v)) {
      throw UnboundVariableError("team domain lacks free variable '" + v + "'");
    }
  }
}

std::uint64_t saturating_power(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

bool is_hook(const Formula& f) {
  if (f.kind() != Kind::Or || f.lhs().kind() != Kind::Not || f.rhs().kind() != Kind::And) {
    return false;
  }
  const Formula& alpha = f.lhs().body();
  return alpha.is_classical() && f.rhs().lhs() == alpha;
}

struct MemoKey {
  const Formula::Node* node;
  Team team;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return std::hash<const void*>{}(k.node) * 31 + k.team.hash();
  }
};

class TeamEvaluator {
 public:
  TeamEvaluator(const Structure& structure, const EvalOptions& options)
      : a_(structure),
        fo_(structure),
        options_(options),
        registry_(options.registry ? *options.registry : builtins_) {}

  bool eval(const Formula& f, const Team& team) {
    if (options_.restrict_to_free_vars && team.domain() != f.free_vars()) {
      return eval_here(f, restrict(team, f.free_vars()));
    }
    return eval_here(f, team);
  }

  EvalStats stats;

 private:
  void tick() {
    ++stats.nodes;
    if (options_.budget.max_nodes && stats.nodes > options_.budget.max_nodes) {
      throw ResourceExhausted("node budget exhausted");
    }
  }

  void check_candidates(std::uint64_t count) const {
    if (options_.budget.max_candidates && count > options_.budget.max_candidates) {
      throw ResourceExhausted("candidate budget exhausted");
    }
  }

  bool eval_here(const Formula& f, const Team& team) {
    tick();
    if (f.is_classical()) return fo_.flat(f, team);
    if (!options_.memoize) return dispatch(f, team);
    MemoKey key{f.id(), team};
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++stats.memo_hits;
      return it->second;
    }
    bool result = dispatch(f, team);
    memo_.emplace(std::move(key), result);
    return result;
  }

  bool dispatch(const Formula& f, const Team& team) {
    switch (f.kind()) {
      case Kind::Dependency: return dependency(f, team);
      case Kind::Tilde: return !eval(f.body(), team);
      case Kind::And: return eval(f.lhs(), team) && eval(f.rhs(), team);
      case Kind::Or:
        if (options_.hook_fast_path && is_hook(f)) {
          return eval(f.rhs().rhs(), filter(f.lhs().body(), team));
        }
        return split(f, team);
      case Kind::Exists: return exists(f, team);
      case Kind::Forall: return eval(f.body(), duplicate(team, f.name(), a_.domain_size()));
      case Kind::Not:
        throw FragmentError("classical negation of a non-classical formula");
      default:
        throw FragmentError("formula is not a team-logic formula");
    }
  }

  Team filter(const Formula& alpha, const Team& team) const {
    std::vector<bool> keep(team.size());
    for (std::size_t i = 0; i < team.size(); ++i) keep[i] = fo_.row(alpha, team, i);
    return team.select(keep);
  }

  bool dependency(const Formula& f, const Team& team) {
    auto key = std::make_pair(f.name(), f.terms().size());
    auto it = definitions_.find(key);
    if (it == definitions_.end()) {
      it = definitions_.emplace(key, registry_.get(f.name(), f.terms().size()).definition).first;
    }
    Structure single(a_.domain_size());
    single.set_relation(kDependencyPredicate, image(f.terms(), team, a_));
    Env env;
    return FoEval(single).eval(it->second, env);
  }

  // Covers T = S ∪ U: every row goes to S only, U only, or both.
  bool split(const Formula& f, const Team& team) {
    std::size_t k = team.size();
    std::uint64_t count = saturating_power(3, k);
    check_candidates(count);
    if (k > 40) throw ResourceExhausted("team too large to split");
    std::vector<std::uint8_t> label(k, 0);
    std::vector<bool> in_s(k), in_u(k);
    for (std::uint64_t c = 0; c < count; ++c) {
      ++stats.splits;
      for (std::size_t i = 0; i < k; ++i) {
        in_s[i] = label[i] != 1;
        in_u[i] = label[i] != 0;
      }
      if (eval(f.lhs(), team.select(in_s)) && eval(f.rhs(), team.select(in_u))) return true;
      // Odometer, row 0 most significant.
      for (std::size_t i = k; i-- > 0;) {
        if (++label[i] < 3) break;
        label[i] = 0;
      }
    }
    return false;
  }

  // Supplementing functions over the distinct rows of T restricted to the
  // other variables; each row gets a nonempty set of values for x.
  bool exists(const Formula& f, const Team& team) {
    const std::string& x = f.name();
    VarList rest;
    for (const auto& v : team.domain()) {
      if (v != x) rest.push_back(v);
    }
    Team base = rest.size() == team.domain().size() ? team : restrict(team, rest);
    std::size_t n = a_.domain_size();
    if (n > 63) throw ResourceExhausted("domain too large for supplementation");
    std::uint64_t choices = (std::uint64_t{1} << n) - 1;
    std::size_t k = base.size();
    check_candidates(saturating_power(choices, k));

    VarList domain = base.domain();
    auto pos_it = std::lower_bound(domain.begin(), domain.end(), x);
    std::size_t pos = static_cast<std::size_t>(pos_it - domain.begin());
    domain.insert(pos_it, x);

    std::vector<std::uint64_t> mask(k, 1);
    while (true) {
      ++stats.supplements;
      std::vector<Row> rows;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t a = 0; a < n; ++a) {
          if (!((mask[i] >> a) & 1U)) continue;
          Row r = base.rows()[i];
          r.insert(r.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<Element>(a));
          rows.push_back(std::move(r));
        }
      }
      if (eval(f.body(), make_sorted_team(domain, std::move(rows)))) return true;
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++mask[i] <= choices) break;
        mask[i] = 1;
        if (i == 0) return false;
      }
      if (k == 0) return false;
    }
  }

  const Structure& a_;
  FoEval fo_;
  EvalOptions options_;
  DependencyRegistry builtins_ = DependencyRegistry::with_builtins();
  const DependencyRegistry& registry_;
  std::map<std::pair<std::string, std::size_t>, Formula> definitions_;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
};

}  // namespace

bool eval_fo(const Structure& structure, const Assignment& s, const Formula& alpha) {
  Env env;
  for (std::size_t i = 0; i < s.domain().size(); ++i) {
    env.entries.push_back({&s.domain()[i], s.values()[i]});
  }
  for (const auto& v : alpha.free_vars()) {
    if (!s.find(v)) throw UnboundVariableError("variable '" + v + "' is not assigned");
  }
  return FoEval(structure).eval(alpha, env);
}

EvalResult eval_team(const Structure& structure, const Team& team, const Formula& phi,
                     const EvalOptions& options) {
  require_bound(phi.free_vars(), team.domain());
  TeamEvaluator evaluator(structure, options);
  EvalResult result;
  try {
    result.verdict = evaluator.eval(phi, team) ? Verdict::True : Verdict::False;
  } catch (const ResourceExhausted&) {
    result.verdict = Verdict::ResourceExhausted;
  }
  result.stats = evaluator.stats;
  return result;
}

bool team_holds(const Structure& structure, const Team& team, const Formula& phi,
                const EvalOptions& options) {
  EvalResult r = eval_team(structure, team, phi, options);
  if (r.verdict == Verdict::ResourceExhausted) throw ResourceExhausted("evaluation budget exhausted");
  return r.verdict == Verdict::True;
}

Team filter_team(const Structure& structure, const Team& team, const Formula& alpha) {
  if (!alpha.is_classical()) throw FragmentError("filter condition must be first-order");
  require_bound(alpha.free_vars(), team.domain());
  FoEval fo(structure);
  std::vector<bool> keep(team.size());
  for (std::size_t i = 0; i < team.size(); ++i) keep[i] = fo.row(alpha, team, i);
  return team.select(keep);
}

Formula hook(const Formula& alpha, const Formula& phi) {
  return Formula::disj(Formula::neg(alpha), Formula::conj(alpha, phi));
}

EvalResult eval_hook(const Structure& structure, const Team& team, const Formula& alpha,
                     const Formula& phi, const EvalOptions& options) {
  require_bound(phi.free_vars(), team.domain());
  return eval_team(structure, filter_team(structure, team, alpha), phi, options);
}

// ---------------------------------------------------------------------------
// Modal team logic

WorldSet satisfying_worlds(const KripkeStructure& k, const Formula& alpha) {
  WorldSet all = k.all_worlds();
  switch (alpha.kind()) {
    case Kind::Top: return all;
    case Kind::Bottom: return 0;
    case Kind::Prop: return k.valuation(alpha.name());
    case Kind::Not: return all & ~satisfying_worlds(k, alpha.body());
    case Kind::And: return satisfying_worlds(k, alpha.lhs()) & satisfying_worlds(k, alpha.rhs());
    case Kind::Or: return satisfying_worlds(k, alpha.lhs()) | satisfying_worlds(k, alpha.rhs());
    case Kind::Diamond: return k.preimage(satisfying_worlds(k, alpha.body()));
    case Kind::Box: {
      WorldSet body = satisfying_worlds(k, alpha.body());
      WorldSet out = 0;
      for (std::size_t w = 0; w < k.world_count(); ++w) {
        if ((k.successors(w) & ~body) == 0) out |= WorldSet{1} << w;
      }
      return out;
    }
    default:
      throw FragmentError("not a classical modal formula");
  }
}

namespace {

class MtlEvaluator {
 public:
  MtlEvaluator(const KripkeStructure& k, const EvalOptions& options) : k_(k), options_(options) {}

  bool eval(const Formula& f, WorldSet team) {
    ++stats.nodes;
    if (options_.budget.max_nodes && stats.nodes > options_.budget.max_nodes) {
      throw ResourceExhausted("node budget exhausted");
    }
    if (f.is_classical()) return (team & ~satisfying_worlds(k_, f)) == 0;
    if (options_.memoize) {
      auto key = std::make_pair(f.id(), team);
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++stats.memo_hits;
        return it->second;
      }
      bool r = dispatch(f, team);
      memo_.emplace(key, r);
      return r;
    }
    return dispatch(f, team);
  }

  EvalStats stats;

 private:
  void check_candidates(std::uint64_t count) const {
    if (options_.budget.max_candidates && count > options_.budget.max_candidates) {
      throw ResourceExhausted("candidate budget exhausted");
    }
  }

  bool dispatch(const Formula& f, WorldSet team) {
    switch (f.kind()) {
      case Kind::Tilde: return !eval(f.body(), team);
      case Kind::And: return eval(f.lhs(), team) && eval(f.rhs(), team);
      case Kind::Or: return split(f, team);
      case Kind::Box: return eval(f.body(), k_.image(team));
      case Kind::Diamond: {
        bool found = false;
        check_candidates(std::uint64_t{1} << std::min<std::size_t>(63, std::popcount(k_.image(team))));
        for_each_successor_team(k_, team, [&](WorldSet s) {
          ++stats.successors;
          found = eval(f.body(), s);
          return !found;
        });
        return found;
      }
      case Kind::Not:
        throw FragmentError("classical negation of a non-classical formula");
      default:
        throw FragmentError("formula is not a modal team-logic formula");
    }
  }

  bool split(const Formula& f, WorldSet team) {
    std::vector<std::size_t> members = worlds_of(team);
    std::size_t k = members.size();
    std::uint64_t count = saturating_power(3, k);
    check_candidates(count);
    std::vector<std::uint8_t> label(k, 0);
    for (std::uint64_t c = 0; c < count; ++c) {
      ++stats.splits;
      WorldSet s = 0, u = 0;
      for (std::size_t i = 0; i < k; ++i) {
        WorldSet bit = WorldSet{1} << members[i];
        if (label[i] != 1) s |= bit;
        if (label[i] != 0) u |= bit;
      }
      if (eval(f.lhs(), s) && eval(f.rhs(), u)) return true;
      for (std::size_t i = k; i-- > 0;) {
        if (++label[i] < 3) break;
        label[i] = 0;
      }
    }
    return false;
  }

  const KripkeStructure& k_;
  EvalOptions options_;
  std::map<std::pair<const Formula::Node*, WorldSet>, bool> memo_;
};

}  // namespace

EvalResult eval_mtl(const KripkeStructure& k, WorldSet team, const Formula& phi,
                    const EvalOptions& options) {
  if (team & ~k.all_worlds()) throw InvariantError("team contains worlds outside the structure");
  for (const auto& p : propositions(phi)) k.valuation(p);
  MtlEvaluator evaluator(k, options);
  EvalResult result;
  try {
    result.verdict = evaluator.eval(phi, team) ? Verdict::True : Verdict::False;
  } catch (const ResourceExhausted&) {
    result.verdict = Verdict::ResourceExhausted;
  }
  result.stats = evaluator.stats;
  return result;
}

bool mtl_holds(const KripkeStructure& k, WorldSet team, const Formula& phi,
               const EvalOptions& options) {
  EvalResult r = eval_mtl(k, team, phi, options);
  if (r.verdict == Verdict::ResourceExhausted) throw ResourceExhausted("evaluation budget exhausted");
  return r.verdict == Verdict::True;
}

}  // namespace teamlogic
