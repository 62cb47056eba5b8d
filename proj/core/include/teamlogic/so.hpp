#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "teamlogic/evaluator.hpp"
#include "teamlogic/relation.hpp"
#include "teamlogic/structure.hpp"
#include "teamlogic/syntax.hpp"

namespace teamlogic {

// Second-order assignment J: values for free element, relation and function
// variables.
struct SOAssignment {
  std::map<std::string, Element> elements;
  std::map<std::string, Relation> relations;
  std::map<std::string, FunctionTable> functions;
};

enum class SoMode {
  // Enumerates every candidate: relations by binary counter over the
  // lexicographic tuple order, sparse relations by cardinality then in
  // lexicographic combination order, functions by odometer.
  Exhaustive,
  // Decides relation variables tuple by tuple and cuts a branch as soon as a
  // three-valued evaluation of the body settles it.
  Pruned,
};

struct SoOptions {
  SoMode mode = SoMode::Pruned;
  // Evaluation steps; zero means unlimited.
  std::uint64_t max_nodes = 0;
  // Largest tuple universe n^k a quantified relation or function may have.
  std::size_t max_universe = 60;
  bool memoize = true;
};

struct SoStats {
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;    // complete second-order values tried
  std::uint64_t alternations = 0;  // most branching-mode switches on one path
  std::uint64_t memo_hits = 0;
};

struct SoResult {
  Verdict verdict = Verdict::False;
  SoStats stats;
};

// Model checking for second-order logic. The formula is put into negation
// normal form first. Throws UnboundVariableError / UnknownSymbolError for
// free symbols J and the structure leave uninterpreted.
SoResult eval_so(const Structure& structure, const SOAssignment& j, const Formula& alpha,
                 const SoOptions& options = {});
// Throws ResourceExhausted instead of returning it.
bool so_holds(const Structure& structure, const SOAssignment& j, const Formula& alpha,
              const SoOptions& options = {});

// Removes -> and <->.
Formula desugar(const Formula& alpha);
// Negation normal form: -> and <-> removed, ! only in front of atoms.
Formula to_nnf(const Formula& alpha);
bool is_nnf(const Formula& alpha);

}  // namespace teamlogic
