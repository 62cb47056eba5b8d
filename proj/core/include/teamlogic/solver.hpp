#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "teamlogic/evaluator.hpp"
#include "teamlogic/structure.hpp"
#include "teamlogic/syntax.hpp"
#include "teamlogic/vocabulary.hpp"

namespace teamlogic {

struct SolverOptions {
  // Largest domain size searched.
  std::size_t max_domain = 3;
  // Limits for every single evaluation.
  Budget budget;
  // Candidate models tried over the whole search; zero means unlimited.
  std::uint64_t max_candidates = 0;
  // Node limit for the normal form used by sat_fo2.
  std::size_t max_dnf_size = 200000;
  // Worker threads. Results do not depend on it.
  unsigned jobs = 1;
  const DependencyRegistry* registry = nullptr;
};

enum class SatStatus { Sat, UnsatUpTo, ResourceExhausted };
std::string_view to_string(SatStatus status);

struct SatResult {
  SatStatus status = SatStatus::UnsatUpTo;
  // Witness when Sat.
  std::optional<Structure> structure;
  std::optional<Team> team;
  // Largest domain size searched completely.
  std::size_t bound = 0;
  std::uint64_t candidates = 0;
  std::string reason;  // why the search gave up
};

// Searches structures of size 1..max_domain (interpreting the predicates of
// `vocabulary`) and every team over Fr(phi), nonempty teams first. Rejects
// vocabularies with function symbols.
SatResult sat_bounded(const Formula& phi, const Vocabulary& vocabulary,
                      const SolverOptions& options = {});

// Two-variable formulas without dependency atoms: normal form, then for each
// disjunct a classical model of its satisfiability sentence, from which the
// witness team is read off and re-checked.
SatResult sat_fo2(const Formula& phi, const Vocabulary& vocabulary,
                  const SolverOptions& options = {});

enum class ValidStatus { ValidUpTo, Counterexample, Unknown };
std::string_view to_string(ValidStatus status);

struct ValidResult {
  ValidStatus status = ValidStatus::Unknown;
  std::optional<Structure> structure;
  std::optional<Team> team;
  std::size_t bound = 0;
  std::uint64_t candidates = 0;
  std::string reason;
};

// Searches for a model of ~phi. A validity claim only covers domains up to
// `bound`.
ValidResult valid_bounded(const Formula& phi, const Vocabulary& vocabulary,
                          const SolverOptions& options = {}, bool fo2 = false);

}  // namespace teamlogic
