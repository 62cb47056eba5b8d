#include "teamlogic/translate.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "teamlogic/error.hpp"

namespace teamlogic {

std::vector<Variable> fresh_vars(std::size_t count, const std::vector<Variable>& avoid) {
  std::set<Variable> taken(avoid.begin(), avoid.end());
  std::vector<Variable> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    Variable v = "z" + std::to_string(i);
    if (!taken.count(v)) out.push_back(v);
  }
  return out;
}

std::vector<Variable> extend_tuple(const std::vector<Variable>& xs, const Variable& y) {
  std::vector<Variable> out = xs;
  if (std::find(xs.begin(), xs.end(), y) == xs.end()) out.push_back(y);
  return out;
}

namespace {

std::vector<Term> as_terms(const std::vector<Variable>& vars) {
  std::vector<Term> out;
  for (const auto& v : vars) out.push_back(Term::variable(v));
  return out;
}

void collect_symbols(const Formula& f, std::set<std::string>& out) {
  for (const auto& s : f.free_symbols()) out.insert(s);
  if (f.kind() == Kind::SoExists || f.kind() == Kind::SoForall) out.insert(f.binder().name);
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_symbols(f.child(i), out);
}

class Translator {
 public:
  Translator(const Formula& phi, const std::string& relation, std::optional<SparseBound> bound,
             const DependencyRegistry& registry)
      : bound_(std::move(bound)), registry_(registry) {
    collect_symbols(phi, taken_);
    taken_.insert(relation);
    taken_.insert(kDependencyPredicate);
  }

  Formula eta(const Formula& phi, const std::vector<Variable>& xs, const std::string& r) {
    Formula rx = Formula::atom(r, as_terms(xs));
    if (phi.is_classical()) return Formula::forall_all(xs, Formula::implies(rx, phi));
    switch (phi.kind()) {
      case Kind::Dependency: {
        DependencySignature sig = registry_.get(phi.name(), phi.terms().size());
        std::vector<Variable> zs = fresh_vars(sig.arity, xs);
        std::string s = fresh("S");
        std::vector<Formula> equalities;
        for (std::size_t i = 0; i < zs.size(); ++i) {
          equalities.push_back(Formula::equal(phi.terms()[i], Term::variable(zs[i])));
        }
        Formula image = Formula::exists_all(
            xs, Formula::conj(rx, Formula::conj_all(equalities)));
        Formula defined = Formula::forall_all(
            zs, Formula::iff(Formula::atom(s, as_terms(zs)), image));
        Formula delta = rename_predicate(sig.definition, kDependencyPredicate, s);
        return quantify(s, sig.arity, Formula::conj(defined, delta));
      }
      case Kind::Tilde:
        return Formula::neg(eta(phi.body(), xs, r));
      case Kind::And:
        return Formula::conj(eta(phi.lhs(), xs, r), eta(phi.rhs(), xs, r));
      case Kind::Or: {
        std::string s = fresh("S");
        std::string u = fresh("U");
        Formula cover = Formula::forall_all(
            xs, Formula::iff(rx, Formula::disj(Formula::atom(s, as_terms(xs)),
                                               Formula::atom(u, as_terms(xs)))));
        Formula body = Formula::conj(Formula::conj(cover, eta(phi.lhs(), xs, s)),
                                     eta(phi.rhs(), xs, u));
        return quantify(s, xs.size(), quantify(u, xs.size(), body));
      }
      case Kind::Exists:
      case Kind::Forall: {
        const Variable& y = phi.name();
        std::vector<Variable> xy = extend_tuple(xs, y);
        std::string s = fresh("S");
        Formula sxy = Formula::atom(s, as_terms(xy));
        Formula projection = Formula::forall_all(
            xs, Formula::iff(Formula::exists(y, rx), Formula::exists(y, sxy)));
        Formula body = Formula::conj(projection, eta(phi.body(), xy, s));
        if (phi.kind() == Kind::Forall) {
          body = Formula::conj(
              body, Formula::forall_all(xs, Formula::implies(rx, Formula::forall(y, sxy))));
        }
        return quantify(s, xy.size(), body);
      }
      default:
        throw FragmentError("not a team-logic formula");
    }
  }

 private:
  std::string fresh(const std::string& prefix) {
    while (true) {
      std::string name = prefix + "_" + std::to_string(++counter_);
      if (taken_.insert(name).second) return name;
    }
  }

  Formula quantify(const std::string& name, std::size_t arity, Formula body) {
    SoBinder b{name, arity, SoSort::Relation, bound_};
    return Formula::so_exists(std::move(b), std::move(body));
  }

  std::optional<SparseBound> bound_;
  const DependencyRegistry& registry_;
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
};

void check_tuple(const Formula& phi, const std::vector<Variable>& xs) {
  std::set<Variable> seen;
  for (const auto& x : xs) {
    if (!seen.insert(x).second) throw InvariantError("variable '" + x + "' repeats in the tuple");
  }
  for (const auto& v : phi.free_vars()) {
    if (!seen.count(v)) throw InvariantError("free variable '" + v + "' is missing from the tuple");
  }
}

}  // namespace

Formula translate_eta(const Formula& phi, const std::vector<Variable>& xs,
                      const std::string& relation, const DependencyRegistry& registry) {
  check_tuple(phi, xs);
  Translator t(phi, relation, std::nullopt, registry);
  return t.eta(phi, xs, relation);
}

Formula translate_zeta(const Formula& phi, const std::vector<Variable>& xs,
                       const std::string& relation, const SparseBound& bound,
                       const DependencyRegistry& registry) {
  check_tuple(phi, xs);
  Translator t(phi, relation, bound, registry);
  return t.eta(phi, xs, relation);
}

}  // namespace teamlogic
