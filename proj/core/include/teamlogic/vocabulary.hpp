#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teamlogic/syntax.hpp"

namespace teamlogic {

class Vocabulary {
 public:
  Vocabulary() = default;

  void add_predicate(const std::string& name, std::size_t arity);
  void add_function(const std::string& name, std::size_t arity);
  void set_equality(bool enabled) { equality_ = enabled; }

  bool equality() const { return equality_; }
  bool has_predicate(const std::string& name) const { return predicates_.count(name) != 0; }
  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  std::optional<std::size_t> predicate_arity(const std::string& name) const;
  std::optional<std::size_t> function_arity(const std::string& name) const;

  const std::map<std::string, std::size_t>& predicates() const { return predicates_; }
  const std::map<std::string, std::size_t>& functions() const { return functions_; }
  bool relational() const { return functions_.empty(); }

  // At least one predicate or equality.
  bool nonempty() const { return equality_ || !predicates_.empty(); }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::map<std::string, std::size_t> predicates_;
  std::map<std::string, std::size_t> functions_;
  bool equality_ = true;
};

// A k-ary dependency: a first-order sentence over the single k-ary predicate P
// (and equality). A_i(t1..tk) holds in a team T iff P := t<T> satisfies it.
struct DependencySignature {
  std::string name;
  std::size_t arity = 0;
  Formula definition = Formula::top();
};

// Name of the predicate that dependency definitions talk about.
inline constexpr const char* kDependencyPredicate = "P";

class DependencyRegistry {
 public:
  // Empty registry.
  DependencyRegistry() = default;
  // dep, inc, exc and ind, available at every arity they make sense for.
  static DependencyRegistry with_builtins();

  // Validates and registers; replaces a previous entry of the same name.
  void add(DependencySignature signature);

  bool knows(const std::string& name) const;
  // Throws UnknownSymbolError / ArityError.
  DependencySignature get(const std::string& name, std::size_t arity) const;
  std::vector<std::string> names() const;

 private:
  bool builtins_ = false;
  std::map<std::string, DependencySignature> custom_;
};

// Built-in definitions, exposed for tests.
// dep(x1..xn, y): the last coordinate is a function of the others.
Formula dependence_definition(std::size_t arity);
// inc(a1..ak, b1..bk): every a-tuple also occurs as a b-tuple.
Formula inclusion_definition(std::size_t arity);
// exc(a1..ak, b1..bk): no a-tuple occurs as a b-tuple.
Formula exclusion_definition(std::size_t arity);
// ind(a1..ak, b1..bk): a and b are independent (the relation is a product).
Formula independence_definition(std::size_t arity);

// Result of reading a vocabulary sidecar file.
struct VocabularyFile {
  Vocabulary vocabulary;
  DependencyRegistry registry = DependencyRegistry::with_builtins();
};

// Lines: `pred R 2`, `func c 0`, `equality on|off`,
// `dependency name k "sentence over P"`; `#` starts a comment.
VocabularyFile parse_vocabulary(std::string_view text);
VocabularyFile load_vocabulary(const std::string& path);

}  // namespace teamlogic
