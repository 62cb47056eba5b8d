#pragma once

#include <cstdint>
#include <string_view>

#include "teamlogic/kripke.hpp"
#include "teamlogic/structure.hpp"
#include "teamlogic/syntax.hpp"
#include "teamlogic/vocabulary.hpp"

namespace teamlogic {

enum class Verdict { False, True, ResourceExhausted };

std::string_view to_string(Verdict verdict);

// Zero means unlimited.
struct Budget {
  // Recursive evaluation steps over the whole run.
  std::uint64_t max_nodes = 0;
  // Candidates a single splitjunction, quantifier or modality may enumerate
  // (covers, supplementing functions, successor teams).
  std::uint64_t max_candidates = 0;
};

struct EvalOptions {
  Budget budget;
  // Cache results per (subformula, team).
  bool memoize = true;
  // Evaluate every subformula on the team restricted to its free variables.
  // Sound by locality; switching it off evaluates on the full team.
  bool restrict_to_free_vars = true;
  // Evaluate !a | (a & phi) as phi on the rows satisfying a.
  bool hook_fast_path = true;
  // Dependency definitions; the built-in registry when null.
  const DependencyRegistry* registry = nullptr;
};

struct EvalStats {
  std::uint64_t nodes = 0;
  std::uint64_t splits = 0;       // covers tried for splitjunctions
  std::uint64_t supplements = 0;  // supplementing functions tried
  std::uint64_t successors = 0;   // successor teams tried
  std::uint64_t memo_hits = 0;
};

struct EvalResult {
  Verdict verdict = Verdict::False;
  EvalStats stats;
};

// Tarski semantics. Throws UnboundVariableError if s misses a free variable.
bool eval_fo(const Structure& structure, const Assignment& s, const Formula& alpha);

// Team semantics. Throws UnboundVariableError if dom T misses a free variable;
// running out of budget yields Verdict::ResourceExhausted.
EvalResult eval_team(const Structure& structure, const Team& team, const Formula& phi,
                     const EvalOptions& options = {});
// Convenience: true/false, throws ResourceExhausted.
bool team_holds(const Structure& structure, const Team& team, const Formula& phi,
                const EvalOptions& options = {});

// T_alpha = { s in T | s satisfies alpha }.
Team filter_team(const Structure& structure, const Team& team, const Formula& alpha);
// alpha ↪ phi := !alpha | (alpha & phi).
Formula hook(const Formula& alpha, const Formula& phi);
// Evaluates alpha ↪ phi directly as phi on T_alpha.
EvalResult eval_hook(const Structure& structure, const Team& team, const Formula& alpha,
                     const Formula& phi, const EvalOptions& options = {});

// Worlds where a classical modal formula holds.
WorldSet satisfying_worlds(const KripkeStructure& k, const Formula& alpha);
// Team semantics of modal team logic.
EvalResult eval_mtl(const KripkeStructure& k, WorldSet team, const Formula& phi,
                    const EvalOptions& options = {});
bool mtl_holds(const KripkeStructure& k, WorldSet team, const Formula& phi,
               const EvalOptions& options = {});

}  // namespace teamlogic
