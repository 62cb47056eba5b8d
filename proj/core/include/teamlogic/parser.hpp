#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "teamlogic/syntax.hpp"
#include "teamlogic/vocabulary.hpp"

namespace teamlogic {

enum class Language { FO, Team, MTL, SO };

std::optional<Language> language_from_string(std::string_view name);
std::string_view to_string(Language language);

// Symbols a formula may refer to. Free second-order variables (relations or
// functions bound by an SO assignment) are listed separately from the
// vocabulary.
struct ParseContext {
  Vocabulary vocabulary;
  DependencyRegistry registry = DependencyRegistry::with_builtins();
  std::map<std::string, std::size_t> relation_variables;
  std::map<std::string, std::size_t> function_variables;
};

// Grammar (loosest binding first):
//   so only:  a <-> b,  a -> b (right associative)
//   a \/ b   Boolean disjunction, sugar for ~(~a & ~b)
//   a | b    disjunction (splitjunction in team languages)
//   a & b
//   ~a  !a  NE a (sugar for ~!a)  <>a  []a
//   E x. a   A x. a   E2 X:k. a   A2 X:k. a   Ef f:k. a   Af f:k. a
//   Ep{bound} X:k. a   Ap{bound} X:k. a
//   top  bot  P(t,..)  t = t  dep(t,..)  p (modal)  (a)
// Quantifiers extend as far to the right as possible.
Formula parse(std::string_view text, Language language, const ParseContext& context);
Formula parse(std::string_view text, Language language, const Vocabulary& vocabulary);

// The context's vocabulary extended by every applied identifier the parser
// does not know (and that is not a registered dependency), taken as a
// predicate of the arity it is used with.
Vocabulary infer_vocabulary(std::string_view text, Language language, const ParseContext& context);

// Throws FragmentError, ArityError or UnknownSymbolError when the formula is
// not a well-formed member of `language` over the context's symbols.
void validate(const Formula& formula, Language language, const ParseContext& context);

// Term parser for data files (`x`, `c`, `f(x,c)`).
Term parse_term(std::string_view text, const Vocabulary& vocabulary);

}  // namespace teamlogic
