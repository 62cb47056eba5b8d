#include "teamlogic/vocabulary.hpp"

#include <fstream>
#include <sstream>

#include "teamlogic/error.hpp"
#include "teamlogic/parser.hpp"

namespace teamlogic {

void Vocabulary::add_predicate(const std::string& name, std::size_t arity) {
  if (functions_.count(name)) throw InvariantError("symbol '" + name + "' is already a function");
  auto [it, fresh] = predicates_.emplace(name, arity);
  if (!fresh && it->second != arity) {
    throw ArityError("predicate '" + name + "' redeclared with a different arity");
  }
}

void Vocabulary::add_function(const std::string& name, std::size_t arity) {
  if (predicates_.count(name)) throw InvariantError("symbol '" + name + "' is already a predicate");
  auto [it, fresh] = functions_.emplace(name, arity);
  if (!fresh && it->second != arity) {
    throw ArityError("function '" + name + "' redeclared with a different arity");
  }
}

std::optional<std::size_t> Vocabulary::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Vocabulary::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Built-in dependency definitions

namespace {

VarList numbered(const std::string& stem, std::size_t count) {
  VarList out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

std::vector<Term> as_terms(const VarList& vars) {
  std::vector<Term> out;
  for (const auto& v : vars) out.push_back(Term::variable(v));
  return out;
}

Formula p_atom(const VarList& a, const VarList& b = {}) {
  std::vector<Term> args = as_terms(a);
  for (const auto& v : b) args.push_back(Term::variable(v));
  return Formula::atom(kDependencyPredicate, std::move(args));
}

Formula tuple_equal(const VarList& a, const VarList& b) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    parts.push_back(Formula::equal(Term::variable(a[i]), Term::variable(b[i])));
  }
  return Formula::conj_all(parts);
}

Formula not_both(const Formula& a, const Formula& b) {
  return Formula::neg(Formula::conj(a, b));
}

void require_even(std::size_t arity, const char* name) {
  if (arity == 0 || arity % 2 != 0) {
    throw ArityError(std::string(name) + " needs an even, positive number of arguments");
  }
}

}  // namespace

Formula dependence_definition(std::size_t arity) {
  if (arity == 0) throw ArityError("dep needs at least one argument");
  VarList xs = numbered("x", arity - 1);
  // A x. A y. A z. !(P(x,y) & P(x,z)) | y = z
  Formula body = Formula::disj(not_both(p_atom(xs, {"y"}), p_atom(xs, {"z"})),
                               Formula::equal(Term::variable("y"), Term::variable("z")));
  VarList bound = xs;
  bound.push_back("y");
  bound.push_back("z");
  return Formula::forall_all(bound, body);
}

Formula inclusion_definition(std::size_t arity) {
  require_even(arity, "inc");
  std::size_t k = arity / 2;
  VarList a = numbered("a", k), b = numbered("b", k), c = numbered("c", k);
  Formula body = Formula::disj(Formula::neg(p_atom(a, b)),
                               Formula::exists_all(c, p_atom(c, a)));
  VarList bound = a;
  bound.insert(bound.end(), b.begin(), b.end());
  return Formula::forall_all(bound, body);
}

Formula exclusion_definition(std::size_t arity) {
  require_even(arity, "exc");
  std::size_t k = arity / 2;
  VarList a = numbered("a", k), b = numbered("b", k), c = numbered("c", k), d = numbered("d", k);
  Formula body = Formula::disj(not_both(p_atom(a, b), p_atom(c, d)),
                               Formula::neg(tuple_equal(a, d)));
  VarList bound = a;
  for (const auto* part : {&b, &c, &d}) bound.insert(bound.end(), part->begin(), part->end());
  return Formula::forall_all(bound, body);
}

Formula independence_definition(std::size_t arity) {
  require_even(arity, "ind");
  std::size_t k = arity / 2;
  VarList a = numbered("a", k), b = numbered("b", k), c = numbered("c", k), d = numbered("d", k);
  Formula body = Formula::disj(not_both(p_atom(a, b), p_atom(c, d)), p_atom(a, d));
  VarList bound = a;
  for (const auto* part : {&b, &c, &d}) bound.insert(bound.end(), part->begin(), part->end());
  return Formula::forall_all(bound, body);
}

// ---------------------------------------------------------------------------
// Registry

namespace {

const char* const kBuiltinNames[] = {"dep", "inc", "exc", "ind"};

bool is_builtin(const std::string& name) {
  for (const char* b : kBuiltinNames) {
    if (name == b) return true;
  }
  return false;
}

}  // namespace

DependencyRegistry DependencyRegistry::with_builtins() {
  DependencyRegistry r;
  r.builtins_ = true;
  return r;
}

void DependencyRegistry::add(DependencySignature signature) {
  if (!signature.definition.free_vars().empty()) {
    throw InvariantError("definition of dependency '" + signature.name +
                         "' has free variables");
  }
  Vocabulary single;
  single.add_predicate(kDependencyPredicate, signature.arity);
  ParseContext context;
  context.vocabulary = single;
  validate(signature.definition, Language::FO, context);
  custom_[signature.name] = std::move(signature);
}

bool DependencyRegistry::knows(const std::string& name) const {
  return custom_.count(name) || (builtins_ && is_builtin(name));
}

DependencySignature DependencyRegistry::get(const std::string& name, std::size_t arity) const {
  if (auto it = custom_.find(name); it != custom_.end()) {
    if (it->second.arity != arity) {
      throw ArityError("dependency '" + name + "' expects " + std::to_string(it->second.arity) +
                       " arguments, got " + std::to_string(arity));
    }
    return it->second;
  }
  if (builtins_) {
    if (name == "dep") return {name, arity, dependence_definition(arity)};
    if (name == "inc") return {name, arity, inclusion_definition(arity)};
    if (name == "exc") return {name, arity, exclusion_definition(arity)};
    if (name == "ind") return {name, arity, independence_definition(arity)};
  }
  throw UnknownSymbolError("unknown dependency '" + name + "'");
}

std::vector<std::string> DependencyRegistry::names() const {
  std::vector<std::string> out;
  if (builtins_) out.assign(std::begin(kBuiltinNames), std::end(kBuiltinNames));
  for (const auto& [name, sig] : custom_) {
    if (!is_builtin(name)) out.push_back(name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sidecar files

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw ParseError(message, line, 1);
}

std::size_t parse_arity(const std::string& word, std::size_t line) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(word, &used);
    if (used != word.size()) fail(line, "bad arity '" + word + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "bad arity '" + word + "'");
  }
}

}  // namespace

VocabularyFile parse_vocabulary(std::string_view text) {
  VocabularyFile out;
  struct PendingDependency {
    std::string name;
    std::size_t arity;
    std::string body;
    std::size_t line;
  };
  std::vector<PendingDependency> pending;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    // The quoted sentence of a dependency line may itself contain '#'.
    std::size_t quote = line.find('"');
    std::size_t hash = line.find('#');
    if (hash != std::string::npos && (quote == std::string::npos || hash < quote)) {
      line.erase(hash);
    }
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "pred" || keyword == "func") {
      std::string name, arity, extra;
      if (!(words >> name >> arity) || (words >> extra)) {
        fail(line_no, "expected '" + keyword + " NAME ARITY'");
      }
      try {
        if (keyword == "pred") {
          out.vocabulary.add_predicate(name, parse_arity(arity, line_no));
        } else {
          out.vocabulary.add_function(name, parse_arity(arity, line_no));
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    } else if (keyword == "equality") {
      std::string value;
      if (!(words >> value) || (value != "on" && value != "off")) {
        fail(line_no, "expected 'equality on' or 'equality off'");
      }
      out.vocabulary.set_equality(value == "on");
    } else if (keyword == "dependency") {
      std::string name, arity;
      if (!(words >> name >> arity)) fail(line_no, "expected 'dependency NAME ARITY \"sentence\"'");
      std::size_t open = line.find('"');
      std::size_t close = line.rfind('"');
      if (open == std::string::npos || close == open) {
        fail(line_no, "dependency definition must be a quoted sentence");
      }
      pending.push_back({name, parse_arity(arity, line_no), line.substr(open + 1, close - open - 1),
                         line_no});
    } else {
      fail(line_no, "unknown declaration '" + keyword + "'");
    }
  }

  for (const auto& dep : pending) {
    Vocabulary single;
    single.add_predicate(kDependencyPredicate, dep.arity);
    ParseContext context;
    context.vocabulary = single;
    try {
      Formula definition = parse(dep.body, Language::FO, context);
      out.registry.add({dep.name, dep.arity, definition});
    } catch (const ParseError& e) {
      fail(dep.line, "in definition of '" + dep.name + "': " + e.what());
    } catch (const Error& e) {
      fail(dep.line, e.what());
    }
  }
  return out;
}

VocabularyFile load_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open vocabulary file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_vocabulary(buffer.str());
}

}  // namespace teamlogic
