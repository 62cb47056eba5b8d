#include "teamlogic/structure.hpp"

#include <algorithm>
#include <numeric>

#include "teamlogic/error.hpp"

namespace teamlogic {

// ---------------------------------------------------------------------------
// Structure

Structure::Structure(std::size_t domain_size) : domain_size_(domain_size) {
  if (domain_size == 0) throw InvariantError("structures need a nonempty domain");
}

void Structure::set_relation(const std::string& name, Relation relation) {
  if (relation.domain_size() != domain_size_) {
    throw InvariantError("relation '" + name + "' is over a domain of the wrong size");
  }
  if (functions_.count(name)) throw InvariantError("symbol '" + name + "' is already a function");
  relations_[name] = std::move(relation);
}

void Structure::set_function(const std::string& name, FunctionTable function) {
  if (function.domain_size() != domain_size_) {
    throw InvariantError("function '" + name + "' is over a domain of the wrong size");
  }
  if (relations_.count(name)) throw InvariantError("symbol '" + name + "' is already a relation");
  functions_[name] = std::move(function);
}

const Relation& Structure::relation(const std::string& name) const {
  if (const Relation* r = find_relation(name)) return *r;
  throw UnknownSymbolError("structure does not interpret predicate '" + name + "'");
}

const FunctionTable& Structure::function(const std::string& name) const {
  if (const FunctionTable* f = find_function(name)) return *f;
  throw UnknownSymbolError("structure does not interpret function '" + name + "'");
}

const Relation* Structure::find_relation(const std::string& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

const FunctionTable* Structure::find_function(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

Vocabulary Structure::vocabulary(bool equality) const {
  Vocabulary v;
  v.set_equality(equality);
  for (const auto& [name, r] : relations_) v.add_predicate(name, r.arity());
  for (const auto& [name, f] : functions_) v.add_function(name, f.arity());
  return v;
}

void Structure::check_interprets(const Vocabulary& vocabulary) const {
  for (const auto& [name, arity] : vocabulary.predicates()) {
    const Relation* r = find_relation(name);
    if (!r) throw InvariantError("structure does not interpret predicate '" + name + "'");
    if (r->arity() != arity) throw ArityError("predicate '" + name + "' has the wrong arity");
  }
  for (const auto& [name, arity] : vocabulary.functions()) {
    const FunctionTable* f = find_function(name);
    if (!f) throw InvariantError("structure does not interpret function '" + name + "'");
    if (f->arity() != arity) throw ArityError("function '" + name + "' has the wrong arity");
  }
}

// ---------------------------------------------------------------------------
// Assignment

namespace {

// Sorts `domain` and permutes every row accordingly.
void canonicalize(VarList& domain, std::vector<Row>& rows) {
  std::vector<std::size_t> order(domain.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (domain[order[i]] == domain[order[i - 1]]) {
      throw InvariantError("variable '" + domain[order[i]] + "' occurs twice in a team domain");
    }
  }
  bool identity = std::is_sorted(order.begin(), order.end());
  if (!identity) {
    VarList sorted;
    for (std::size_t i : order) sorted.push_back(domain[i]);
    for (Row& row : rows) {
      Row permuted;
      for (std::size_t i : order) permuted.push_back(row[i]);
      row = std::move(permuted);
    }
    domain = std::move(sorted);
  }
}

}  // namespace

Assignment::Assignment(VarList domain, std::vector<Element> values) {
  if (domain.size() != values.size()) {
    throw InvariantError("assignment domain and values differ in length");
  }
  std::vector<Row> one{values};
  canonicalize(domain, one);
  domain_ = std::move(domain);
  values_ = std::move(one.front());
}

Assignment Assignment::of(std::initializer_list<std::pair<std::string, Element>> entries) {
  VarList domain;
  std::vector<Element> values;
  for (const auto& [var, value] : entries) {
    domain.push_back(var);
    values.push_back(value);
  }
  return Assignment(std::move(domain), std::move(values));
}

std::optional<Element> Assignment::find(const std::string& var) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), var);
  if (it == domain_.end() || *it != var) return std::nullopt;
  return values_[static_cast<std::size_t>(it - domain_.begin())];
}

Element Assignment::get(const std::string& var) const {
  if (auto v = find(var)) return *v;
  throw UnboundVariableError("variable '" + var + "' is not assigned");
}

Assignment Assignment::with(const std::string& var, Element value) const {
  Assignment out = *this;
  auto it = std::lower_bound(out.domain_.begin(), out.domain_.end(), var);
  std::size_t i = static_cast<std::size_t>(it - out.domain_.begin());
  if (it != out.domain_.end() && *it == var) {
    out.values_[i] = value;
  } else {
    out.domain_.insert(it, var);
    out.values_.insert(out.values_.begin() + static_cast<std::ptrdiff_t>(i), value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Team

Team make_sorted_team(VarList domain, std::vector<Row> rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Team t;
  t.domain_ = std::move(domain);
  t.rows_ = std::move(rows);
  return t;
}

Team::Team(const VarList& domain, std::vector<Row> rows) {
  for (const Row& r : rows) {
    if (r.size() != domain.size()) throw InvariantError("team row has the wrong length");
  }
  VarList d = domain;
  canonicalize(d, rows);
  *this = make_sorted_team(std::move(d), std::move(rows));
}

Team Team::unit() { return make_sorted_team({}, {Row{}}); }

Team Team::empty(const VarList& domain) { return Team(domain, {}); }

Team Team::from_assignments(const VarList& domain, const std::vector<Assignment>& rows) {
  VarList d = domain;
  std::vector<Row> none;
  canonicalize(d, none);
  std::vector<Row> out;
  for (const Assignment& s : rows) {
    if (s.domain() != d) throw InvariantError("assignment domain differs from the team domain");
    out.push_back(s.values());
  }
  return make_sorted_team(std::move(d), std::move(out));
}

std::optional<std::size_t> Team::column(const std::string& var) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), var);
  if (it == domain_.end() || *it != var) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

Assignment Team::assignment(std::size_t row) const { return Assignment(domain_, rows_.at(row)); }

std::vector<Assignment> Team::assignments() const {
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(assignment(i));
  return out;
}

bool Team::contains(const Row& row) const {
  return std::binary_search(rows_.begin(), rows_.end(), row);
}

Team Team::select(std::uint64_t mask) const {
  Team t;
  t.domain_ = domain_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if ((mask >> i) & 1U) t.rows_.push_back(rows_[i]);
  }
  return t;
}

Team Team::select(const std::vector<bool>& keep) const {
  Team t;
  t.domain_ = domain_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (keep[i]) t.rows_.push_back(rows_[i]);
  }
  return t;
}

std::size_t Team::hash() const {
  std::size_t h = std::hash<std::size_t>{}(rows_.size() * 31 + domain_.size());
  for (const auto& v : domain_) h = h * 1099511628211ULL ^ std::hash<std::string>{}(v);
  for (const Row& r : rows_) {
    for (Element e : r) h = h * 1099511628211ULL ^ (e + 0x9e3779b9U);
    h ^= 0x51ed27;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Team operations

Element eval_term(const Term& term, const Assignment& s, const Structure& structure) {
  if (term.is_variable()) return s.get(term.name());
  Tuple args;
  for (const Term& a : term.args()) args.push_back(eval_term(a, s, structure));
  return structure.function(term.name()).apply(args);
}

Team restrict(const Team& team, const VarList& vars) {
  VarList keep = vars;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<std::size_t> cols;
  for (const auto& v : keep) {
    auto c = team.column(v);
    if (!c) throw InvariantError("variable '" + v + "' is outside the team domain");
    cols.push_back(*c);
  }
  std::vector<Row> rows;
  rows.reserve(team.size());
  for (const Row& r : team.rows()) {
    Row out;
    for (std::size_t c : cols) out.push_back(r[c]);
    rows.push_back(std::move(out));
  }
  return make_sorted_team(std::move(keep), std::move(rows));
}

Relation image(const std::vector<Term>& terms, const Team& team, const Structure& structure) {
  Relation r(terms.size(), structure.domain_size());
  for (std::size_t i = 0; i < team.size(); ++i) {
    Assignment s = team.assignment(i);
    Tuple t;
    for (const Term& term : terms) t.push_back(eval_term(term, s, structure));
    r.insert(t);
  }
  return r;
}

Relation image(const VarList& vars, const Team& team, std::size_t domain_size) {
  std::vector<std::size_t> cols;
  for (const auto& v : vars) {
    auto c = team.column(v);
    if (!c) throw InvariantError("variable '" + v + "' is outside the team domain");
    cols.push_back(*c);
  }
  Relation r(vars.size(), domain_size);
  for (const Row& row : team.rows()) {
    Tuple t;
    for (std::size_t c : cols) t.push_back(row[c]);
    r.insert(t);
  }
  return r;
}

Team team_from_relation(const VarList& vars, const Relation& relation) {
  if (vars.size() != relation.arity()) {
    throw ArityError("relation arity differs from the number of variables");
  }
  std::vector<Row> rows = relation.tuples();
  return Team(vars, std::move(rows));
}

Team supplement(const Team& team, const std::string& var, std::size_t domain_size,
                const std::function<std::vector<Element>(const Assignment&)>& f) {
  VarList domain = team.domain();
  auto col = team.column(var);
  std::size_t c;
  if (col) {
    c = *col;
  } else {
    auto it = std::lower_bound(domain.begin(), domain.end(), var);
    c = static_cast<std::size_t>(it - domain.begin());
    domain.insert(it, var);
  }
  std::vector<Row> rows;
  for (std::size_t i = 0; i < team.size(); ++i) {
    std::vector<Element> values = f(team.assignment(i));
    if (values.empty()) throw InvariantError("supplementing function returned an empty set");
    for (Element a : values) {
      if (a >= domain_size) throw InvariantError("supplemented value outside the domain");
      Row r = team.rows()[i];
      if (col) {
        r[c] = a;
      } else {
        r.insert(r.begin() + static_cast<std::ptrdiff_t>(c), a);
      }
      rows.push_back(std::move(r));
    }
  }
  return make_sorted_team(std::move(domain), std::move(rows));
}

Team duplicate(const Team& team, const std::string& var, std::size_t domain_size) {
  std::vector<Element> all(domain_size);
  std::iota(all.begin(), all.end(), Element{0});
  return supplement(team, var, domain_size, [&](const Assignment&) { return all; });
}

Team team_union(const Team& a, const Team& b) {
  if (a.domain() != b.domain()) throw InvariantError("union of teams over different domains");
  std::vector<Row> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return make_sorted_team(a.domain(), std::move(rows));
}

bool is_subteam(const Team& a, const Team& b) {
  if (a.domain() != b.domain()) return false;
  return std::includes(b.rows().begin(), b.rows().end(), a.rows().begin(), a.rows().end());
}

}  // namespace teamlogic
