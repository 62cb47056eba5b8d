#pragma once

#include <string>
#include <utility>

#include "teamlogic/kripke.hpp"
#include "teamlogic/structure.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

// Name of the edge relation in first-order images of Kripke structures.
inline constexpr const char* kEdgeRelation = "R";

// Unary predicate standing for a proposition: the name with its first letter
// upper-cased (p -> P, q2 -> Q2). Throws FragmentError when that collides
// with the edge relation.
std::string proposition_predicate(const std::string& proposition);
// Inverse of proposition_predicate: first letter lower-cased.
std::string predicate_proposition(const std::string& predicate);

// st_v(phi) for v in {x, y}; the box case is emitted as
// A w. (!R(v,w) | (R(v,w) & st_w(psi))).
Formula standard_translation(const Formula& phi, const std::string& var = "x");

// A(K): domain W, R = edges, one unary predicate per valuated proposition.
Structure interpret_kripke(const KripkeStructure& k);
// T^v: the team over {v} with one row per world.
Team lift_team(WorldSet team, const std::string& var = "x");

struct KripkeWithTeam {
  KripkeStructure kripke;
  WorldSet team = 0;
};

// Reads a Kripke structure back from a structure interpreting R/2 and unary
// predicates (every unary predicate other than R becomes a proposition) and a
// team over one variable.
KripkeWithTeam reverse_interpret(const Structure& b, const Team& s);

struct ReducedInstance {
  Structure structure;
  Team team;
  Formula formula;
};

// Satisfiability of a propositional team formula as model checking on the
// fixed structure with domain {0,1} and the team {()}. With equality,
// p_i becomes x_i = z under E z. A x_1 ... A x_n; without, p_i becomes
// P(x_i) where P holds only of 1.
ReducedInstance reduce_ptl_sat_to_mc(const Formula& phi, bool equality = true);
// (K, T, phi) -> (A(K), T^x, st_x(phi)) for modality-free phi.
ReducedInstance reduce_ptl_mc_to_fo_mc(const KripkeStructure& k, WorldSet team,
                                       const Formula& phi);

}  // namespace teamlogic
