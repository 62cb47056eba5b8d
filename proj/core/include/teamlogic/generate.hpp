#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "teamlogic/kripke.hpp"
#include "teamlogic/structure.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

using Rng = std::mt19937_64;

// Building blocks for random formulas.
struct FormulaSpec {
  std::vector<Variable> variables = {"x", "y"};
  std::map<std::string, std::size_t> predicates;
  bool equality = true;
  // Dependency atoms (name, arity) that may appear as leaves.
  std::vector<std::pair<std::string, std::size_t>> dependencies;
  bool tilde = true;
  bool splitjunction = true;
  bool quantifiers = true;
  bool constants = false;  // top / bot leaves
};

// Formulas with exactly `size` nodes (size >= 1).
Formula random_fo(Rng& rng, const FormulaSpec& spec, std::size_t size);
Formula random_team_formula(Rng& rng, const FormulaSpec& spec, std::size_t size);
// Modal team formula over `props` with modal depth at most `max_depth`.
Formula random_mtl(Rng& rng, const std::vector<std::string>& props, std::size_t size,
                   std::size_t max_depth);

Structure random_structure(Rng& rng, const std::map<std::string, std::size_t>& predicates,
                           std::size_t domain_size);
// Up to `max_rows` distinct rows, possibly none.
Team random_team(Rng& rng, const VarList& vars, std::size_t domain_size, std::size_t max_rows);
KripkeStructure random_kripke(Rng& rng, std::size_t worlds, const std::vector<std::string>& props);
WorldSet random_world_set(Rng& rng, std::size_t worlds);

// Number of structures over `predicates` with the given domain, or
// ResourceExhausted above 2^62.
std::uint64_t structure_count(const std::map<std::string, std::size_t>& predicates,
                              std::size_t domain_size);
// Structure number `index`: relation contents read off a binary counter,
// predicates in name order, tuples in lexicographic order.
Structure structure_at(const std::map<std::string, std::size_t>& predicates,
                       std::size_t domain_size, std::uint64_t index);
// Team over `vars` whose rows are the tuple codes set in `mask`.
Team team_from_mask(const VarList& vars, std::size_t domain_size, std::uint64_t mask);
// Number of teams over `vars`, or ResourceExhausted above 2^62.
std::uint64_t team_count(const VarList& vars, std::size_t domain_size);

// Every Kripke structure on `worlds` worlds with valuations for `props`.
void for_each_kripke(std::size_t worlds, const std::vector<std::string>& props,
                     const std::function<void(const KripkeStructure&)>& visit);

// Every propositional team formula over `props` with at most `max_size` nodes,
// built from propositions, !, ~, & and |.
std::vector<Formula> all_ptl_formulas(const std::vector<std::string>& props, std::size_t max_size);

}  // namespace teamlogic
