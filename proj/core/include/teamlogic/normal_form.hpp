#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamlogic/syntax.hpp"

namespace teamlogic {

// E b := ~!b, "some row satisfies b".
Formula make_e(const Formula& beta);
// a \/ b := ~(~a & ~b).
Formula bool_or(const Formula& a, const Formula& b);
// Left-nested Boolean disjunction of a nonempty list.
Formula bool_or_all(const std::vector<Formula>& parts);
std::optional<Formula> match_e(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_bool_or(const Formula& f);

enum class LawDirection { LeftToRight, RightToLeft };

// The nine equivalences used to bring team formulas into normal form
// (alpha, beta classical; t1..t3 arbitrary):
//   1  a & E b1 & ... & E bn          ==  (a & E b1) | ... | (a & E bn)      n >= 1
//   2  (a1 & E b1) | ... | (an & E bn) == (a1 | ... | an) & E(a1 & b1) & ... & E(an & bn)
//   3  (t1 \/ t2) | t3                ==  (t1 | t3) \/ (t2 | t3)
//   4  t1 | (t2 \/ t3)                ==  (t1 | t2) \/ (t1 | t3)
//   5  E x. (t1 \/ t2)                ==  (E x. t1) \/ (E x. t2)
//   6  E x. (t1 | t2)                 ==  (E x. t1) | (E x. t2)
//   7  E x. (a & E b)                 ==  (E x. a) & E(E x. (a & b))
//   8  A x. (t1 & t2)                 ==  (A x. t1) & (A x. t2)
//   9  A x. ~t                        ==  ~A x. t
// Conjunctions and disjunctions are left-nested. Returns nullopt when
// `phi` does not have the shape of the chosen side.
std::optional<Formula> apply_law(int law, const Formula& phi, LawDirection direction);

// One disjunct alpha & E beta_1 & ... & E beta_m.
struct Disjunct {
  Formula alpha = Formula::top();
  std::vector<Formula> betas;

  friend bool operator==(const Disjunct&, const Disjunct&) = default;
};

// Boolean disjunction of at least one disjunct.
struct DNF {
  std::vector<Disjunct> disjuncts;
};

// Normal form of a formula without dependency atoms. Throws FragmentError on
// dependency atoms and ResourceExhausted when the normal form would exceed
// `max_size` formula nodes.
DNF dnf_expand(const Formula& phi, std::size_t max_size = 200000);

Formula reconstruct(const Disjunct& d);
Formula reconstruct(const DNF& dnf);
std::size_t dnf_size(const DNF& dnf);
std::string print_dnf(const DNF& dnf);

// The classical sentence  E x. E y. (alpha & beta_1) & ... & E x. E y. (alpha & beta_m),
// top when m = 0. The disjunct must only use the variables x and y.
Formula build_gamma(const Disjunct& d, const std::string& x = "x", const std::string& y = "y");

}  // namespace teamlogic
