#pragma once

// Oracles and generators shared by the unit tests and the acceptance binary.
// The oracles here deliberately avoid the library evaluators they check.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamlogic/evaluator.hpp"
#include "teamlogic/generate.hpp"
#include "teamlogic/kripke.hpp"
#include "teamlogic/normal_form.hpp"
#include "teamlogic/structure.hpp"
#include "teamlogic/syntax.hpp"

namespace tltest {

using namespace teamlogic;

// Propositional team semantics over world sets, written out directly from the
// clauses. `val` gives the worlds where each proposition holds.
class PtlOracle {
 public:
  PtlOracle(std::size_t worlds, std::map<std::string, WorldSet> val)
      : all_(worlds >= 64 ? ~WorldSet{0} : (WorldSet{1} << worlds) - 1), val_(std::move(val)) {}

  bool holds(WorldSet team, const Formula& f) const {
    if (f.is_classical()) return (team & ~extension(f)) == 0;
    switch (f.kind()) {
      case Kind::Tilde: return !holds(team, f.body());
      case Kind::And: return holds(team, f.lhs()) && holds(team, f.rhs());
      case Kind::Or:
        // every pair (S, U) of subteams with S | U = T
        for (WorldSet s = team;; s = (s - 1) & team) {
          WorldSet rest = team & ~s;
          for (WorldSet u = team;; u = (u - 1) & team) {
            if ((u & rest) == rest && holds(s, f.lhs()) && holds(u, f.rhs())) return true;
            if (u == 0) break;
          }
          if (s == 0) break;
        }
        return false;
      default: throw std::logic_error("not a propositional team formula");
    }
  }

 private:
  WorldSet extension(const Formula& f) const {
    switch (f.kind()) {
      case Kind::Top: return all_;
      case Kind::Bottom: return 0;
      case Kind::Prop: {
        auto it = val_.find(f.name());
        return it == val_.end() ? 0 : it->second & all_;
      }
      case Kind::Not: return all_ & ~extension(f.body());
      case Kind::And: return extension(f.lhs()) & extension(f.rhs());
      case Kind::Or: return extension(f.lhs()) | extension(f.rhs());
      default: throw std::logic_error("not a classical propositional formula");
    }
  }

  WorldSet all_;
  std::map<std::string, WorldSet> val_;
};

// Satisfiability of a propositional team formula by brute force: the worlds
// are all valuations of its propositions and every set of them is tried.
inline bool ptl_satisfiable(const Formula& phi) {
  std::vector<std::string> props = propositions(phi);
  std::size_t worlds = std::size_t{1} << props.size();
  std::map<std::string, WorldSet> val;
  for (std::size_t i = 0; i < props.size(); ++i) {
    WorldSet w = 0;
    for (std::size_t v = 0; v < worlds; ++v) {
      if ((v >> i) & 1U) w |= WorldSet{1} << v;
    }
    val[props[i]] = w;
  }
  PtlOracle oracle(worlds, val);
  for (WorldSet t = 0; t < (WorldSet{1} << worlds); ++t) {
    if (oracle.holds(t, phi)) return true;
  }
  return false;
}

// Every structure over `predicates` with domain 1..max_domain.
inline void for_each_structure(const std::map<std::string, std::size_t>& predicates,
                               std::size_t max_domain,
                               const std::function<bool(const Structure&)>& visit) {
  for (std::size_t n = 1; n <= max_domain; ++n) {
    std::uint64_t count = structure_count(predicates, n);
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!visit(structure_at(predicates, n, i))) return;
    }
  }
}

// Every team over `vars` in a structure of size n with at most `max_rows`
// rows (all teams when max_rows is zero).
inline void for_each_team(const VarList& vars, std::size_t n, std::size_t max_rows,
                          const std::function<bool(const Team&)>& visit) {
  std::uint64_t count = team_count(vars, n);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (max_rows != 0 && static_cast<std::size_t>(__builtin_popcountll(mask)) > max_rows) continue;
    if (!visit(team_from_mask(vars, n, mask))) return;
  }
}

// Compares two team formulas on every structure up to `max_domain` and every
// team over `vars` with at most `max_rows` rows. Returns a description of the
// first difference, or an empty string.
inline std::string first_difference(const Formula& a, const Formula& b,
                                    const std::map<std::string, std::size_t>& predicates,
                                    const VarList& vars, std::size_t max_domain,
                                    std::size_t max_rows) {
  std::string diff;
  for_each_structure(predicates, max_domain, [&](const Structure& s) {
    for_each_team(vars, s.domain_size(), max_rows, [&](const Team& t) {
      if (team_holds(s, t, a) != team_holds(s, t, b)) {
        diff = "domain " + std::to_string(s.domain_size()) + ", team of " +
               std::to_string(t.size()) + " rows";
      }
      return diff.empty();
    });
    return diff.empty();
  });
  return diff;
}

// The same comparison on random instances.
inline std::string random_difference(Rng& rng, const Formula& a, const Formula& b,
                                     const std::map<std::string, std::size_t>& predicates,
                                     const VarList& vars, std::size_t domain,
                                     std::size_t max_rows, std::size_t samples) {
  for (std::size_t i = 0; i < samples; ++i) {
    Structure s = random_structure(rng, predicates, domain);
    Team t = random_team(rng, vars, domain, max_rows);
    if (team_holds(s, t, a) != team_holds(s, t, b)) {
      return "random instance " + std::to_string(i) + " at domain " + std::to_string(domain);
    }
  }
  return {};
}

// Random instance of law k on the given side, metavariables filled with small
// classical formulas (alpha, beta) and small team formulas (theta).
inline Formula law_instance(Rng& rng, int law, LawDirection dir) {
  FormulaSpec fo;
  fo.predicates = {{"P", 1}, {"R", 2}};
  fo.constants = true;
  FormulaSpec team = fo;
  auto alpha = [&] { return random_fo(rng, fo, 1 + rng() % 3); };
  auto theta = [&] { return random_team_formula(rng, team, 1 + rng() % 4); };
  auto var = [&] { return Variable(rng() % 2 ? "x" : "y"); };
  bool ltr = dir == LawDirection::LeftToRight;
  auto e = [](const Formula& f) { return make_e(f); };
  switch (law) {
    case 1: {
      std::size_t n = 1 + rng() % 3;
      Formula a = alpha();
      if (ltr) {
        Formula out = a;
        for (std::size_t i = 0; i < n; ++i) out = Formula::conj(out, e(alpha()));
        return out;
      }
      std::vector<Formula> parts;
      for (std::size_t i = 0; i < n; ++i) parts.push_back(Formula::conj(a, e(alpha())));
      return Formula::disj_all(parts);
    }
    case 2: {
      std::size_t n = 1 + rng() % 3;
      std::vector<Formula> as, bs;
      for (std::size_t i = 0; i < n; ++i) {
        as.push_back(alpha());
        bs.push_back(alpha());
      }
      if (ltr) {
        std::vector<Formula> parts;
        for (std::size_t i = 0; i < n; ++i) parts.push_back(Formula::conj(as[i], e(bs[i])));
        return Formula::disj_all(parts);
      }
      Formula out = Formula::disj_all(as);
      for (std::size_t i = 0; i < n; ++i) out = Formula::conj(out, e(Formula::conj(as[i], bs[i])));
      return out;
    }
    case 3: {
      Formula t1 = theta(), t2 = theta(), t3 = theta();
      return ltr ? Formula::disj(bool_or(t1, t2), t3)
                 : bool_or(Formula::disj(t1, t3), Formula::disj(t2, t3));
    }
    case 4: {
      Formula t1 = theta(), t2 = theta(), t3 = theta();
      return ltr ? Formula::disj(t1, bool_or(t2, t3))
                 : bool_or(Formula::disj(t1, t2), Formula::disj(t1, t3));
    }
    case 5: {
      Variable x = var();
      Formula t1 = theta(), t2 = theta();
      return ltr ? Formula::exists(x, bool_or(t1, t2))
                 : bool_or(Formula::exists(x, t1), Formula::exists(x, t2));
    }
    case 6: {
      Variable x = var();
      Formula t1 = theta(), t2 = theta();
      return ltr ? Formula::exists(x, Formula::disj(t1, t2))
                 : Formula::disj(Formula::exists(x, t1), Formula::exists(x, t2));
    }
    case 7: {
      Variable x = var();
      Formula a = alpha(), b = alpha();
      return ltr ? Formula::exists(x, Formula::conj(a, e(b)))
                 : Formula::conj(Formula::exists(x, a), e(Formula::exists(x, Formula::conj(a, b))));
    }
    case 8: {
      Variable x = var();
      Formula t1 = theta(), t2 = theta();
      return ltr ? Formula::forall(x, Formula::conj(t1, t2))
                 : Formula::conj(Formula::forall(x, t1), Formula::forall(x, t2));
    }
    case 9: {
      Variable x = var();
      Formula t = theta();
      return ltr ? Formula::forall(x, Formula::tilde(t)) : Formula::tilde(Formula::forall(x, t));
    }
    default: throw std::invalid_argument("law number out of range");
  }
}

// Random FO(~) formula over {x, y} without dependency atoms.
inline Formula random_fo_tilde(Rng& rng, std::size_t size) {
  FormulaSpec spec;
  spec.predicates = {{"P", 1}, {"R", 2}};
  spec.constants = true;
  return random_team_formula(rng, spec, size);
}

}  // namespace tltest
