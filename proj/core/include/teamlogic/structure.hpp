#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamlogic/relation.hpp"
#include "teamlogic/syntax.hpp"
#include "teamlogic/vocabulary.hpp"

namespace teamlogic {

// Finite structure with domain {0..n-1}.
class Structure {
 public:
  explicit Structure(std::size_t domain_size = 1);

  std::size_t domain_size() const { return domain_size_; }

  void set_relation(const std::string& name, Relation relation);
  void set_function(const std::string& name, FunctionTable function);

  // Throw UnknownSymbolError when absent.
  const Relation& relation(const std::string& name) const;
  const FunctionTable& function(const std::string& name) const;
  const Relation* find_relation(const std::string& name) const;
  const FunctionTable* find_function(const std::string& name) const;

  const std::map<std::string, Relation>& relations() const { return relations_; }
  const std::map<std::string, FunctionTable>& functions() const { return functions_; }

  // The vocabulary this structure interprets.
  Vocabulary vocabulary(bool equality = true) const;
  // Throws InvariantError unless every symbol of `vocabulary` is interpreted
  // with the declared arity.
  void check_interprets(const Vocabulary& vocabulary) const;

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  std::size_t domain_size_;
  std::map<std::string, Relation> relations_;
  std::map<std::string, FunctionTable> functions_;
};

// A single assignment s: dom -> A. The domain is kept sorted.
class Assignment {
 public:
  Assignment() = default;
  Assignment(VarList domain, std::vector<Element> values);
  static Assignment of(std::initializer_list<std::pair<std::string, Element>> entries);

  const VarList& domain() const { return domain_; }
  const std::vector<Element>& values() const { return values_; }

  std::optional<Element> find(const std::string& var) const;
  // Throws UnboundVariableError.
  Element get(const std::string& var) const;
  // s^x_a.
  Assignment with(const std::string& var, Element value) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  VarList domain_;
  std::vector<Element> values_;
};

using Row = std::vector<Element>;

// A set of assignments over a common domain. Columns follow the sorted
// domain; rows are kept sorted and duplicate-free. The team with no rows
// over the empty domain and the team {()} are different values.
class Team {
 public:
  Team() = default;
  // `domain` may be in any order without repeats; rows are given in the same
  // column order and are normalized.
  Team(const VarList& domain, std::vector<Row> rows);

  // {()}: the team containing the empty assignment.
  static Team unit();
  static Team empty(const VarList& domain);
  static Team from_assignments(const VarList& domain, const std::vector<Assignment>& rows);

  const VarList& domain() const { return domain_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // Column index of a variable, or nullopt.
  std::optional<std::size_t> column(const std::string& var) const;
  bool has_variable(const std::string& var) const { return column(var).has_value(); }
  Assignment assignment(std::size_t row) const;
  std::vector<Assignment> assignments() const;
  bool contains(const Row& row) const;

  // Sub-team selected by a bit mask over rows (bit i = row i).
  Team select(std::uint64_t mask) const;
  Team select(const std::vector<bool>& keep) const;

  std::size_t hash() const;

  friend bool operator==(const Team&, const Team&) = default;
  friend auto operator<=>(const Team&, const Team&) = default;

 private:
  friend Team make_sorted_team(VarList domain, std::vector<Row> rows);

  VarList domain_;
  std::vector<Row> rows_;
};

struct TeamHash {
  std::size_t operator()(const Team& t) const { return t.hash(); }
};

// Builds a team from a sorted domain and rows already in column order.
Team make_sorted_team(VarList domain, std::vector<Row> rows);

// Term evaluation t<s>.
Element eval_term(const Term& term, const Assignment& s, const Structure& structure);

// T restricted to X (X must be a subset of dom T).
Team restrict(const Team& team, const VarList& vars);
// t<T> = { t<s> | s in T } as a relation of arity |t|.
Relation image(const std::vector<Term>& terms, const Team& team, const Structure& structure);
Relation image(const VarList& vars, const Team& team, std::size_t domain_size);
// The unique team over x (no repeats) with x<T> = relation.
Team team_from_relation(const VarList& vars, const Relation& relation);

// T^x_f. `f` must return a nonempty set of elements for every row.
Team supplement(const Team& team, const std::string& var, std::size_t domain_size,
                const std::function<std::vector<Element>(const Assignment&)>& f);
// T^x_A.
Team duplicate(const Team& team, const std::string& var, std::size_t domain_size);

Team team_union(const Team& a, const Team& b);
bool is_subteam(const Team& a, const Team& b);

}  // namespace teamlogic
