#include "teamlogic/mtl_bridge.hpp"

#include <cctype>
#include <map>

#include "teamlogic/error.hpp"

namespace teamlogic {

std::string proposition_predicate(const std::string& proposition) {
  if (proposition.empty()) throw FragmentError("empty proposition name");
  std::string out = proposition;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  if (out == kEdgeRelation) {
    throw FragmentError("proposition '" + proposition + "' collides with the edge relation");
  }
  return out;
}

std::string predicate_proposition(const std::string& predicate) {
  std::string out = predicate;
  if (!out.empty()) out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
  return out;
}

namespace {

Formula st(const Formula& phi, const std::string& v, const std::string& w) {
  switch (phi.kind()) {
    case Kind::Top:
    case Kind::Bottom:
      return phi;
    case Kind::Prop:
      return Formula::atom(proposition_predicate(phi.name()), {Term::variable(v)});
    case Kind::Not: return Formula::neg(st(phi.body(), v, w));
    case Kind::Tilde: return Formula::tilde(st(phi.body(), v, w));
    case Kind::And: return Formula::conj(st(phi.lhs(), v, w), st(phi.rhs(), v, w));
    case Kind::Or: return Formula::disj(st(phi.lhs(), v, w), st(phi.rhs(), v, w));
    case Kind::Diamond: {
      Formula edge = Formula::atom(kEdgeRelation, {Term::variable(v), Term::variable(w)});
      return Formula::exists(w, Formula::conj(edge, st(phi.body(), w, v)));
    }
    case Kind::Box: {
      Formula edge = Formula::atom(kEdgeRelation, {Term::variable(v), Term::variable(w)});
      return Formula::forall(
          w, Formula::disj(Formula::neg(edge), Formula::conj(edge, st(phi.body(), w, v))));
    }
    default:
      throw FragmentError("not a modal team formula");
  }
}

void check_propositions(const Formula& phi) {
  std::map<std::string, std::string> seen;
  for (const auto& p : propositions(phi)) {
    std::string pred = proposition_predicate(p);
    auto [it, fresh] = seen.emplace(pred, p);
    if (!fresh) {
      throw FragmentError("propositions '" + it->second + "' and '" + p +
                          "' map to the same predicate");
    }
  }
}

}  // namespace

Formula standard_translation(const Formula& phi, const std::string& var) {
  if (var != "x" && var != "y") throw FragmentError("the translation variable must be x or y");
  check_propositions(phi);
  return st(phi, var, var == "x" ? "y" : "x");
}

Structure interpret_kripke(const KripkeStructure& k) {
  std::size_t n = k.world_count();
  Structure a(n);
  Relation edges(2, n);
  for (const auto& [from, to] : k.edges()) edges.insert({static_cast<Element>(from), static_cast<Element>(to)});
  a.set_relation(kEdgeRelation, std::move(edges));
  for (const auto& [p, worlds] : k.valuations()) {
    Relation r(1, n);
    for (std::size_t w : worlds_of(worlds)) r.insert({static_cast<Element>(w)});
    a.set_relation(proposition_predicate(p), std::move(r));
  }
  return a;
}

Team lift_team(WorldSet team, const std::string& var) {
  std::vector<Row> rows;
  for (std::size_t w : worlds_of(team)) rows.push_back({static_cast<Element>(w)});
  return Team({var}, std::move(rows));
}

KripkeWithTeam reverse_interpret(const Structure& b, const Team& s) {
  const Relation& edges = b.relation(kEdgeRelation);
  if (edges.arity() != 2) throw ArityError("the edge relation must be binary");
  std::size_t n = b.domain_size();
  if (n > kMaxWorlds) throw InvariantError("too many worlds for a Kripke structure");
  if (s.domain().size() != 1) throw InvariantError("the team must have exactly one variable");
  KripkeWithTeam out{KripkeStructure(n), 0};
  for (const Tuple& t : edges.tuples()) out.kripke.add_edge(t[0], t[1]);
  for (const auto& [name, r] : b.relations()) {
    if (name == kEdgeRelation || r.arity() != 1) continue;
    WorldSet worlds = 0;
    for (const Tuple& t : r.tuples()) worlds |= WorldSet{1} << t[0];
    out.kripke.set_valuation(predicate_proposition(name), worlds);
  }
  for (const Row& row : s.rows()) out.team |= WorldSet{1} << row[0];
  return out;
}

ReducedInstance reduce_ptl_sat_to_mc(const Formula& phi, bool equality) {
  if (modal_depth(phi) != 0) throw FragmentError("the formula must be modality-free");
  std::vector<std::string> props = propositions(phi);
  std::map<std::string, std::string> index;
  std::vector<Variable> xs;
  for (std::size_t i = 0; i < props.size(); ++i) {
    xs.push_back("x" + std::to_string(i + 1));
    index[props[i]] = xs.back();
  }
  Structure a(2);
  Formula star = map_propositions(phi, [&](const std::string& p) {
    Term x = Term::variable(index.at(p));
    return equality ? Formula::equal(x, Term::variable("z")) : Formula::atom("P", {x});
  });
  Formula psi = Formula::forall_all(xs, Formula::disj(Formula::top(), star));
  if (equality) {
    psi = Formula::exists("z", psi);
  } else {
    Relation p(1, 2);
    p.insert({1});
    a.set_relation("P", std::move(p));
  }
  return {std::move(a), Team::unit(), std::move(psi)};
}

ReducedInstance reduce_ptl_mc_to_fo_mc(const KripkeStructure& k, WorldSet team,
                                       const Formula& phi) {
  if (modal_depth(phi) != 0) throw FragmentError("the formula must be modality-free");
  return {interpret_kripke(k), lift_team(team, "x"), standard_translation(phi, "x")};
}

}  // namespace teamlogic
