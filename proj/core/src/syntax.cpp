#include "teamlogic/syntax.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "teamlogic/error.hpp"

namespace teamlogic {

namespace {

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<std::string> merge(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> without(std::vector<std::string> v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
  return v;
}

void collect_function_symbols(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) return;
  out.push_back(t.name());
  for (const Term& a : t.args()) collect_function_symbols(a, out);
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_term(const Term& t) {
  std::size_t h = std::hash<std::string>{}(t.name());
  h = mix(h, t.is_variable() ? 1 : 2);
  for (const Term& a : t.args()) h = mix(h, hash_term(a));
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Term

Term Term::variable(std::string name) {
  Term t;
  t.variable_ = true;
  t.name_ = std::move(name);
  return t;
}

Term Term::apply(std::string function, std::vector<Term> args) {
  Term t;
  t.variable_ = false;
  t.name_ = std::move(function);
  t.args_ = std::move(args);
  return t;
}

void Term::collect_variables(std::vector<Variable>& out) const {
  if (variable_) {
    out.push_back(name_);
    return;
  }
  for (const Term& a : args_) a.collect_variables(out);
}

VarList Term::variables() const {
  VarList out;
  collect_variables(out);
  sort_unique(out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  return a.variable_ == b.variable_ && a.name_ == b.name_ && a.args_ == b.args_;
}

VarList term_variables(const std::vector<Term>& terms) {
  VarList out;
  for (const Term& t : terms) t.collect_variables(out);
  sort_unique(out);
  return out;
}

// ---------------------------------------------------------------------------
// SparseBound

SparseBound SparseBound::polynomial(std::vector<std::uint64_t> coefficients) {
  SparseBound b;
  b.form_ = Form::Polynomial;
  b.coefficients_ = std::move(coefficients);
  return b;
}

SparseBound SparseBound::team_power(std::uint64_t team_size, std::uint64_t exponent) {
  SparseBound b;
  b.form_ = Form::TeamPower;
  b.team_size_ = team_size;
  b.exponent_ = exponent;
  return b;
}

namespace {

std::vector<std::uint64_t> parse_number_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error("bad number '" + std::string(item) + "' in sparse bound");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace

SparseBound SparseBound::parse(std::string_view text) {
  if (text.rfind("poly:", 0) == 0) {
    return polynomial(parse_number_list(text.substr(5)));
  }
  if (text.rfind("team:", 0) == 0) {
    auto nums = parse_number_list(text.substr(5));
    if (nums.size() != 2) throw Error("team bound needs exactly two numbers: team:k,m");
    return team_power(nums[0], nums[1]);
  }
  throw Error("unknown sparse bound '" + std::string(text) +
              "' (expected poly:c0,c1,... or team:k,m)");
}

std::uint64_t SparseBound::operator()(std::uint64_t n) const {
  if (form_ == Form::TeamPower) return sat_mul(team_size_, sat_pow(n, exponent_));
  std::uint64_t result = 0;
  std::uint64_t power = 1;
  for (std::uint64_t c : coefficients_) {
    result = sat_add(result, sat_mul(c, power));
    power = sat_mul(power, n);
  }
  return result;
}

std::string SparseBound::to_string() const {
  std::string out;
  if (form_ == Form::TeamPower) {
    return "team:" + std::to_string(team_size_) + "," + std::to_string(exponent_);
  }
  out = "poly:";
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coefficients_[i]);
  }
  if (coefficients_.empty()) out += '0';
  return out;
}

// ---------------------------------------------------------------------------
// Formula construction

Formula Formula::make(Node node) {
  std::vector<std::string> symbols;
  VarList vars;
  bool classical = true;
  std::size_t size = 1;
  std::size_t h = mix(static_cast<std::size_t>(node.kind) + 17,
                      std::hash<std::string>{}(node.name));
  for (const Term& t : node.terms) {
    t.collect_variables(vars);
    collect_function_symbols(t, symbols);
    h = mix(h, hash_term(t));
  }
  sort_unique(vars);
  if (node.kind == Kind::Atom) symbols.push_back(node.name);
  sort_unique(symbols);

  for (const Formula& c : node.children) {
    vars = merge(vars, c.free_vars());
    symbols = merge(symbols, c.free_symbols());
    classical = classical && c.is_classical();
    size += c.size();
    h = mix(h, c.node_->hash);
  }

  switch (node.kind) {
    case Kind::Exists:
    case Kind::Forall:
      vars = without(std::move(vars), node.name);
      break;
    case Kind::SoExists:
    case Kind::SoForall:
      symbols = without(std::move(symbols), node.binder.name);
      classical = false;
      h = mix(h, node.binder.arity * 31 + static_cast<std::size_t>(node.binder.sort));
      h = mix(h, std::hash<std::string>{}(node.binder.name));
      if (node.binder.bound) h = mix(h, std::hash<std::string>{}(node.binder.bound->to_string()));
      break;
    case Kind::Tilde:
    case Kind::Dependency:
      classical = false;
      break;
    default:
      break;
  }

  node.free_vars = std::move(vars);
  node.free_symbols = std::move(symbols);
  node.classical = classical;
  node.size = size;
  node.hash = h;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::top() {
  static const Formula f = make(Node{.kind = Kind::Top});
  return f;
}

Formula Formula::bottom() {
  static const Formula f = make(Node{.kind = Kind::Bottom});
  return f;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return make(Node{.kind = Kind::Atom, .name = std::move(predicate), .terms = std::move(args)});
}

Formula Formula::equal(Term lhs, Term rhs) {
  return make(Node{.kind = Kind::Equal, .terms = {std::move(lhs), std::move(rhs)}});
}

Formula Formula::dependency(std::string name, std::vector<Term> args) {
  return make(Node{.kind = Kind::Dependency, .name = std::move(name), .terms = std::move(args)});
}

Formula Formula::proposition(std::string name) {
  return make(Node{.kind = Kind::Prop, .name = std::move(name)});
}

Formula Formula::neg(Formula f) { return make(Node{.kind = Kind::Not, .children = {std::move(f)}}); }

Formula Formula::tilde(Formula f) {
  return make(Node{.kind = Kind::Tilde, .children = {std::move(f)}});
}

Formula Formula::conj(Formula a, Formula b) {
  return make(Node{.kind = Kind::And, .children = {std::move(a), std::move(b)}});
}

Formula Formula::disj(Formula a, Formula b) {
  return make(Node{.kind = Kind::Or, .children = {std::move(a), std::move(b)}});
}

Formula Formula::exists(Variable v, Formula body) {
  return make(Node{.kind = Kind::Exists, .name = std::move(v), .children = {std::move(body)}});
}

Formula Formula::forall(Variable v, Formula body) {
  return make(Node{.kind = Kind::Forall, .name = std::move(v), .children = {std::move(body)}});
}

Formula Formula::box(Formula f) { return make(Node{.kind = Kind::Box, .children = {std::move(f)}}); }

Formula Formula::diamond(Formula f) {
  return make(Node{.kind = Kind::Diamond, .children = {std::move(f)}});
}

Formula Formula::so_exists(SoBinder binder, Formula body) {
  if (binder.sort == SoSort::Function && binder.bound) {
    throw FragmentError("sparse quantifiers range over relations only");
  }
  return make(Node{.kind = Kind::SoExists, .children = {std::move(body)}, .binder = std::move(binder)});
}

Formula Formula::so_forall(SoBinder binder, Formula body) {
  if (binder.sort == SoSort::Function && binder.bound) {
    throw FragmentError("sparse quantifiers range over relations only");
  }
  return make(Node{.kind = Kind::SoForall, .children = {std::move(body)}, .binder = std::move(binder)});
}

Formula Formula::implies(Formula a, Formula b) {
  return make(Node{.kind = Kind::Implies, .children = {std::move(a), std::move(b)}});
}

Formula Formula::iff(Formula a, Formula b) {
  return make(Node{.kind = Kind::Iff, .children = {std::move(a), std::move(b)}});
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula Formula::exists_all(const std::vector<Variable>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, body);
  return body;
}

Formula Formula::forall_all(const std::vector<Variable>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, body);
  return body;
}

// ---------------------------------------------------------------------------
// Accessors

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
std::size_t Formula::child_count() const { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }
const SoBinder& Formula::binder() const { return node_->binder; }
const VarList& Formula::free_vars() const { return node_->free_vars; }
const std::vector<std::string>& Formula::free_symbols() const { return node_->free_symbols; }
bool Formula::is_classical() const { return node_->classical; }
std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const Formula::Node& x = *a.node_;
  const Formula::Node& y = *b.node_;
  return x.hash == y.hash && x.kind == y.kind && x.name == y.name && x.terms == y.terms &&
         x.binder == y.binder && x.children == y.children;
}

std::size_t hash_value(const Formula& f) { return f.id()->hash; }

// ---------------------------------------------------------------------------
// Measures

VarList free_vars(const Formula& f) { return f.free_vars(); }

namespace {

void collect_all_vars(const Formula& f, VarList& out) {
  for (const Term& t : f.terms()) t.collect_variables(out);
  if (f.kind() == Kind::Exists || f.kind() == Kind::Forall) out.push_back(f.name());
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_all_vars(f.child(i), out);
}

void collect_props(const Formula& f, std::vector<std::string>& out) {
  if (f.kind() == Kind::Prop) out.push_back(f.name());
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_props(f.child(i), out);
}

}  // namespace

VarList all_vars(const Formula& f) {
  VarList out;
  collect_all_vars(f, out);
  sort_unique(out);
  return out;
}

std::size_t width(const Formula& f) { return all_vars(f).size(); }

std::size_t quantifier_rank(const Formula& f) {
  std::size_t inner = 0;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    inner = std::max(inner, quantifier_rank(f.child(i)));
  }
  if (f.kind() == Kind::Exists || f.kind() == Kind::Forall) return inner + 1;
  return inner;
}

std::size_t modal_depth(const Formula& f) {
  std::size_t inner = 0;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    inner = std::max(inner, modal_depth(f.child(i)));
  }
  if (f.kind() == Kind::Box || f.kind() == Kind::Diamond) return inner + 1;
  return inner;
}

std::vector<std::string> propositions(const Formula& f) {
  std::vector<std::string> out;
  collect_props(f, out);
  sort_unique(out);
  return out;
}

bool contains_kind(const Formula& f, Kind k) {
  if (f.kind() == k) return true;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    if (contains_kind(f.child(i), k)) return true;
  }
  return false;
}

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  switch (f.kind()) {
    case Kind::Not: return Formula::neg(children[0]);
    case Kind::Tilde: return Formula::tilde(children[0]);
    case Kind::And: return Formula::conj(children[0], children[1]);
    case Kind::Or: return Formula::disj(children[0], children[1]);
    case Kind::Exists: return Formula::exists(f.name(), children[0]);
    case Kind::Forall: return Formula::forall(f.name(), children[0]);
    case Kind::Box: return Formula::box(children[0]);
    case Kind::Diamond: return Formula::diamond(children[0]);
    case Kind::SoExists: return Formula::so_exists(f.binder(), children[0]);
    case Kind::SoForall: return Formula::so_forall(f.binder(), children[0]);
    case Kind::Implies: return Formula::implies(children[0], children[1]);
    case Kind::Iff: return Formula::iff(children[0], children[1]);
    default: return f;
  }
}

}  // namespace

Formula rename_predicate(const Formula& f, const std::string& from, const std::string& to) {
  if (f.kind() == Kind::Atom) {
    return f.name() == from ? Formula::atom(to, f.terms()) : f;
  }
  if (f.child_count() == 0) return f;
  // A second-order binder of the same name shadows the renaming.
  if ((f.kind() == Kind::SoExists || f.kind() == Kind::SoForall) && f.binder().name == from) {
    return f;
  }
  std::vector<Formula> children;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    children.push_back(rename_predicate(f.child(i), from, to));
  }
  return rebuild(f, std::move(children));
}

Formula map_propositions(const Formula& f,
                         const std::function<Formula(const std::string&)>& substitute) {
  if (f.kind() == Kind::Prop) return substitute(f.name());
  if (f.child_count() == 0) return f;
  std::vector<Formula> children;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    children.push_back(map_propositions(f.child(i), substitute));
  }
  return rebuild(f, std::move(children));
}

}  // namespace teamlogic
