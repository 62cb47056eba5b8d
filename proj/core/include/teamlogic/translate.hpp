#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "teamlogic/syntax.hpp"
#include "teamlogic/vocabulary.hpp"

namespace teamlogic {

// `count` variables z0, z1, ... skipping names in `avoid`.
std::vector<Variable> fresh_vars(std::size_t count, const std::vector<Variable>& avoid);

// x;y: x itself if y occurs in it, otherwise x with y appended.
std::vector<Variable> extend_tuple(const std::vector<Variable>& xs, const Variable& y);

// Second-order formula with one free relation variable `relation` of arity
// |xs| that holds of x<T> exactly when the team T satisfies `phi`. `xs` must be
// repetition-free and cover Fr(phi). Quantified relation variables get fresh
// names S_1, U_2, ... distinct from every symbol of `phi` and `relation`.
Formula translate_eta(const Formula& phi, const std::vector<Variable>& xs,
                      const std::string& relation,
                      const DependencyRegistry& registry = DependencyRegistry::with_builtins());

// The same translation with every second-order quantifier made sparse with
// bound `bound`.
Formula translate_zeta(const Formula& phi, const std::vector<Variable>& xs,
                       const std::string& relation, const SparseBound& bound,
                       const DependencyRegistry& registry = DependencyRegistry::with_builtins());

}  // namespace teamlogic
