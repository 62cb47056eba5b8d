#pragma once

// Abstract syntax shared by the four formula languages: classical first-order
// logic, first-order team logic with dependency atoms, modal team logic and
// second-order logic. All of them are represented by one immutable node type;
// the language a formula belongs to is a property checked by `validate`.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace teamlogic {

using Variable = std::string;
// Sorted, duplicate-free list of variable names.
using VarList = std::vector<Variable>;

class Term {
 public:
  Term() = default;

  static Term variable(std::string name);
  static Term apply(std::string function, std::vector<Term> args = {});

  bool is_variable() const { return variable_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  // Appends every variable occurring in the term (unsorted, may repeat).
  void collect_variables(std::vector<Variable>& out) const;
  VarList variables() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  bool variable_ = true;
  std::string name_;
  std::vector<Term> args_;
};

VarList term_variables(const std::vector<Term>& terms);

// Size bound p(n) for sparse second-order quantifiers, where n is the domain
// size. Either a polynomial with natural coefficients or k * n^m.
class SparseBound {
 public:
  enum class Form { Polynomial, TeamPower };

  static SparseBound polynomial(std::vector<std::uint64_t> coefficients);
  static SparseBound team_power(std::uint64_t team_size, std::uint64_t exponent);
  // Accepts "poly:c0,c1,..." and "team:k,m".
  static SparseBound parse(std::string_view text);

  Form form() const { return form_; }
  const std::vector<std::uint64_t>& coefficients() const { return coefficients_; }
  std::uint64_t team_size() const { return team_size_; }
  std::uint64_t exponent() const { return exponent_; }

  // Saturates at UINT64_MAX.
  std::uint64_t operator()(std::uint64_t n) const;
  std::string to_string() const;

  friend bool operator==(const SparseBound&, const SparseBound&) = default;

 private:
  Form form_ = Form::Polynomial;
  std::vector<std::uint64_t> coefficients_;
  std::uint64_t team_size_ = 0;
  std::uint64_t exponent_ = 0;
};

enum class Kind : std::uint8_t {
  Top,
  Bottom,
  Atom,        // P(t1,...,tk); P is a predicate or a second-order relation variable
  Equal,       // t1 = t2
  Dependency,  // A_i(t1,...,tk)
  Prop,        // propositional variable (modal language)
  Not,         // classical negation
  Tilde,       // Boolean (contradictory) negation
  And,
  Or,          // classical disjunction / splitjunction
  Exists,
  Forall,
  Box,
  Diamond,
  SoExists,    // second-order quantifier over relations or functions
  SoForall,
  Implies,     // sugar, second-order language only
  Iff,         // sugar, second-order language only
};

enum class SoSort : std::uint8_t { Relation, Function };

struct SoBinder {
  std::string name;
  std::size_t arity = 0;
  SoSort sort = SoSort::Relation;
  std::optional<SparseBound> bound;  // sparse quantifier when set

  friend bool operator==(const SoBinder&, const SoBinder&) = default;
};

class Formula {
 public:
  struct Node;

  Formula() = delete;

  static Formula top();
  static Formula bottom();
  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula equal(Term lhs, Term rhs);
  static Formula dependency(std::string name, std::vector<Term> args);
  static Formula proposition(std::string name);
  static Formula neg(Formula f);
  static Formula tilde(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula exists(Variable v, Formula body);
  static Formula forall(Variable v, Formula body);
  static Formula box(Formula f);
  static Formula diamond(Formula f);
  static Formula so_exists(SoBinder binder, Formula body);
  static Formula so_forall(SoBinder binder, Formula body);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  // Left-nested conjunction/disjunction; empty input yields top/bottom.
  static Formula conj_all(const std::vector<Formula>& parts);
  static Formula disj_all(const std::vector<Formula>& parts);
  // Quantifier prefix over `vars` in order, outermost first.
  static Formula exists_all(const std::vector<Variable>& vars, Formula body);
  static Formula forall_all(const std::vector<Variable>& vars, Formula body);

  Kind kind() const;
  // Predicate, dependency, proposition or quantified variable name.
  const std::string& name() const;
  const std::vector<Term>& terms() const;
  std::size_t child_count() const;
  const Formula& child(std::size_t i) const;
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }
  const Formula& body() const { return child(0); }
  const SoBinder& binder() const;

  // Free first-order variables.
  const VarList& free_vars() const;
  // Predicate/function/relation-variable symbols that occur without being
  // bound by a second-order quantifier inside this formula.
  const std::vector<std::string>& free_symbols() const;
  // No Boolean negation, no dependency atom, no second-order quantifier.
  bool is_classical() const;
  // Number of formula nodes.
  std::size_t size() const;

  // Identity of the underlying node; stable for the lifetime of the formula.
  const Node* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind = Kind::Top;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> children;
  SoBinder binder;

  VarList free_vars;
  std::vector<std::string> free_symbols;
  bool classical = true;
  std::size_t size = 1;
  std::size_t hash = 0;
};

std::size_t hash_value(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return hash_value(f); }
};

// Free first-order variables, Fr(phi).
VarList free_vars(const Formula& f);
// Every first-order variable occurring in the formula, bound or free, Var(phi).
VarList all_vars(const Formula& f);
// |Var(phi)|.
std::size_t width(const Formula& f);
std::size_t quantifier_rank(const Formula& f);
std::size_t modal_depth(const Formula& f);
// Propositions occurring in a modal formula, sorted.
std::vector<std::string> propositions(const Formula& f);
// True if the formula contains a node of the given kind.
bool contains_kind(const Formula& f, Kind k);

// Replaces every atom over `from` by an atom over `to` (same arguments).
Formula rename_predicate(const Formula& f, const std::string& from,
                         const std::string& to);
// Replaces free occurrences of propositions according to `substitute`.
Formula map_propositions(const Formula& f,
                         const std::function<Formula(const std::string&)>& substitute);

}  // namespace teamlogic
