#include "teamlogic/parser.hpp"

#include <cctype>
#include <vector>

#include "teamlogic/error.hpp"

namespace teamlogic {

std::optional<Language> language_from_string(std::string_view name) {
  if (name == "fo") return Language::FO;
  if (name == "team") return Language::Team;
  if (name == "mtl") return Language::MTL;
  if (name == "so") return Language::SO;
  return std::nullopt;
}

std::string_view to_string(Language language) {
  switch (language) {
    case Language::FO: return "fo";
    case Language::Team: return "team";
    case Language::MTL: return "mtl";
    case Language::SO: return "so";
  }
  return "?";
}

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  Comma,
  Dot,
  Colon,
  Equals,
  And,
  Or,
  BoolOr,   // \/
  Tilde,
  Bang,
  Diamond,  // <>
  Box,      // []
  Arrow,    // ->
  DArrow,   // <->
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.offset = pos_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
      }
      t.kind = Tok::Ident;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      t.kind = Tok::Number;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    auto starts = [&](std::string_view s) { return text_.substr(pos_, s.size()) == s; };
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym kSymbols[] = {
        {"<->", Tok::DArrow}, {"<>", Tok::Diamond}, {"[]", Tok::Box},   {"->", Tok::Arrow},
        {"\\/", Tok::BoolOr}, {"(", Tok::LParen},   {")", Tok::RParen}, {"{", Tok::LBrace},
        {",", Tok::Comma},    {".", Tok::Dot},      {":", Tok::Colon},  {"=", Tok::Equals},
        {"&", Tok::And},      {"|", Tok::Or},       {"~", Tok::Tilde},  {"!", Tok::Bang},
    };
    for (const Sym& s : kSymbols) {
      if (starts(s.text)) {
        pos_ += s.text.size();
        t.kind = s.kind;
        t.text = std::string(s.text);
        return t;
      }
    }
    throw error_at(pos_, std::string("unexpected character '") + c + "'");
  }

  // Raw text up to the next '}' (consumed, not returned).
  std::string raw_until_brace() {
    std::size_t close = text_.find('}', pos_);
    if (close == std::string_view::npos) throw error_at(pos_, "missing '}'");
    std::string out(text_.substr(pos_, close - pos_));
    pos_ = close + 1;
    return out;
  }

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

  ParseError error_at(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return ParseError(message, line, column);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_keyword(const std::string& s) {
  static const char* const kKeywords[] = {"E",  "A",  "NE", "E2", "A2", "Ef",
                                          "Af", "Ep", "Ap", "top", "bot"};
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

class Parser {
 public:
  Parser(std::string_view text, Language language, const ParseContext& context)
      : lexer_(text), language_(language), context_(context) {
    for (const auto& [name, arity] : context.relation_variables) relvars_.push_back({name, arity});
    for (const auto& [name, arity] : context.function_variables) funvars_.push_back({name, arity});
    advance();
  }

  Formula parse_all() {
    Formula f = formula();
    if (current_.kind != Tok::End) fail("unexpected '" + current_.text + "'");
    return f;
  }

  // Unknown applied identifiers become predicates of the observed arity.
  void enable_inference() { infer_ = true; }
  const std::map<std::string, std::size_t>& inferred() const { return inferred_; }

  Term parse_term_only() {
    Term t = term();
    if (current_.kind != Tok::End) fail("unexpected '" + current_.text + "'");
    return t;
  }

 private:
  struct Scoped {
    std::string name;
    std::size_t arity;
  };

  void advance() {
    previous_offset_ = current_.offset;
    current_ = lexer_.next();
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw lexer_.error_at(current_.offset, message);
  }
  [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const {
    throw lexer_.error_at(offset, message);
  }

  void expect(Tok kind, const char* what) {
    if (current_.kind != kind) {
      fail(std::string("expected ") + what +
           (current_.kind == Tok::End ? " at end of input" : ", found '" + current_.text + "'"));
    }
    advance();
  }

  bool at_ident(const char* text) const {
    return current_.kind == Tok::Ident && current_.text == text;
  }

  bool so() const { return language_ == Language::SO; }
  bool modal() const { return language_ == Language::MTL; }

  // -- formula levels -------------------------------------------------------

  Formula formula() { return so() ? iff() : boolean_or(); }

  Formula iff() {
    Formula left = implication();
    while (current_.kind == Tok::DArrow) {
      advance();
      left = Formula::iff(left, implication());
    }
    return left;
  }

  Formula implication() {
    Formula left = boolean_or();
    if (current_.kind == Tok::Arrow) {
      advance();
      return Formula::implies(left, implication());
    }
    return left;
  }

  Formula boolean_or() {
    Formula left = disjunction();
    while (current_.kind == Tok::BoolOr) {
      std::size_t at = current_.offset;
      advance();
      Formula right = disjunction();
      require_team_connective(at, "\\/");
      left = Formula::tilde(Formula::conj(Formula::tilde(left), Formula::tilde(right)));
    }
    return left;
  }

  Formula disjunction() {
    Formula left = conjunction();
    while (current_.kind == Tok::Or) {
      advance();
      left = Formula::disj(left, conjunction());
    }
    return left;
  }

  Formula conjunction() {
    Formula left = unary();
    while (current_.kind == Tok::And) {
      advance();
      left = Formula::conj(left, unary());
    }
    return left;
  }

  void require_team_connective(std::size_t at, const char* op) const {
    if (language_ == Language::FO || language_ == Language::SO) {
      fail_at(at, std::string("'") + op + "' is not available in " +
                      std::string(to_string(language_)) + " formulas");
    }
  }

  void require_classical(const Formula& f, std::size_t at, const char* op) const {
    if (!f.is_classical()) {
      fail_at(at, std::string("'") + op + "' applies to classical formulas only");
    }
  }

  Formula unary() {
    std::size_t at = current_.offset;
    switch (current_.kind) {
      case Tok::Tilde: {
        advance();
        require_team_connective(at, "~");
        return Formula::tilde(unary());
      }
      case Tok::Bang: {
        advance();
        Formula body = unary();
        if (language_ == Language::Team || modal()) require_classical(body, at, "!");
        return Formula::neg(body);
      }
      case Tok::Diamond:
      case Tok::Box: {
        bool box = current_.kind == Tok::Box;
        if (!modal()) fail("modal operators are only available in mtl formulas");
        advance();
        Formula body = unary();
        return box ? Formula::box(body) : Formula::diamond(body);
      }
      case Tok::Ident:
        if (current_.text == "NE") {
          advance();
          require_team_connective(at, "NE");
          Formula body = unary();
          require_classical(body, at, "NE");
          return Formula::tilde(Formula::neg(body));
        }
        if (current_.text == "E" || current_.text == "A") return first_order_quantifier();
        if (current_.text == "E2" || current_.text == "A2" || current_.text == "Ef" ||
            current_.text == "Af" || current_.text == "Ep" || current_.text == "Ap") {
          return second_order_quantifier();
        }
        return primary();
      default:
        return primary();
    }
  }

  Formula first_order_quantifier() {
    bool exists = current_.text == "E";
    if (modal()) fail("first-order quantifiers are not available in mtl formulas");
    advance();
    if (current_.kind != Tok::Ident || is_keyword(current_.text)) fail("expected a variable name");
    std::string var = current_.text;
    advance();
    expect(Tok::Dot, "'.'");
    Formula body = formula();
    return exists ? Formula::exists(var, body) : Formula::forall(var, body);
  }

  Formula second_order_quantifier() {
    std::string keyword = current_.text;
    if (!so()) fail("second-order quantifiers are only available in so formulas");
    advance();
    SoBinder binder;
    binder.sort = (keyword == "Ef" || keyword == "Af") ? SoSort::Function : SoSort::Relation;
    if (keyword == "Ep" || keyword == "Ap") {
      if (current_.kind != Tok::LBrace) fail("expected '{' after " + keyword);
      std::size_t at = current_.offset;
      std::string raw = lexer_.raw_until_brace();
      try {
        binder.bound = SparseBound::parse(raw);
      } catch (const Error& e) {
        fail_at(at, e.what());
      }
      advance();
    }
    if (current_.kind != Tok::Ident || is_keyword(current_.text)) {
      fail("expected a second-order variable name");
    }
    binder.name = current_.text;
    advance();
    expect(Tok::Colon, "':' and an arity");
    if (current_.kind != Tok::Number) fail("expected an arity");
    binder.arity = std::stoul(current_.text);
    advance();
    expect(Tok::Dot, "'.'");
    auto& scope = binder.sort == SoSort::Function ? funvars_ : relvars_;
    scope.push_back({binder.name, binder.arity});
    Formula body = formula();
    scope.pop_back();
    bool exists = keyword[0] == 'E';
    return exists ? Formula::so_exists(binder, body) : Formula::so_forall(binder, body);
  }

  // -- symbols ----------------------------------------------------------------

  static std::optional<std::size_t> lookup(const std::vector<Scoped>& scope,
                                           const std::string& name) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->name == name) return it->arity;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> relation_arity(const std::string& name) const {
    if (auto a = lookup(relvars_, name)) return a;
    if (auto it = inferred_.find(name); it != inferred_.end()) return it->second;
    return context_.vocabulary.predicate_arity(name);
  }

  std::optional<std::size_t> function_arity(const std::string& name) const {
    if (auto a = lookup(funvars_, name)) return a;
    return context_.vocabulary.function_arity(name);
  }

  // -- atoms ------------------------------------------------------------------

  Formula primary() {
    std::size_t at = current_.offset;
    if (current_.kind == Tok::LParen) {
      advance();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_ident("top")) {
      advance();
      return Formula::top();
    }
    if (at_ident("bot")) {
      advance();
      return Formula::bottom();
    }
    if (current_.kind != Tok::Ident) {
      if (current_.kind == Tok::End) fail("unexpected end of input");
      fail("unexpected '" + current_.text + "'");
    }
    if (is_keyword(current_.text)) fail("unexpected keyword '" + current_.text + "'");

    std::string name = current_.text;
    if (modal()) {
      advance();
      if (current_.kind == Tok::LParen) fail_at(at, "modal propositions take no arguments");
      return Formula::proposition(name);
    }

    std::size_t save = lexer_.position();
    Token save_token = current_;
    advance();
    bool applied = current_.kind == Tok::LParen;
    bool is_function = function_arity(name).has_value();

    if (!is_function) {
      if (auto arity = relation_arity(name)) {
        if (applied || *arity == 0) {
          std::vector<Term> args = applied ? argument_list() : std::vector<Term>{};
          if (args.size() != *arity) {
            fail_at(at, "'" + name + "' expects " + std::to_string(*arity) + " arguments, got " +
                            std::to_string(args.size()));
          }
          return Formula::atom(name, std::move(args));
        }
      } else if (applied) {
        if (language_ == Language::Team && context_.registry.knows(name)) {
          std::vector<Term> args = argument_list();
          try {
            context_.registry.get(name, args.size());
          } catch (const Error& e) {
            fail_at(at, e.what());
          }
          return Formula::dependency(name, std::move(args));
        }
        if (infer_ && !modal()) {
          std::vector<Term> args = argument_list();
          inferred_[name] = args.size();
          return Formula::atom(name, std::move(args));
        }
        if (language_ == Language::Team) fail_at(at, "unknown dependency '" + name + "'");
        fail_at(at, "unknown predicate '" + name + "'");
      }
    }

    // Equality between terms: rewind and read the left term properly.
    lexer_.rewind(save);
    current_ = save_token;
    Term lhs = term();
    if (current_.kind != Tok::Equals) {
      if (lhs.is_variable()) fail_at(at, "unknown predicate '" + name + "'");
      fail("expected '=' after term");
    }
    std::size_t eq_at = current_.offset;
    advance();
    Term rhs = term();
    if (!context_.vocabulary.equality() && language_ != Language::SO) {
      fail_at(eq_at, "equality is disabled in this vocabulary");
    }
    return Formula::equal(std::move(lhs), std::move(rhs));
  }

  std::vector<Term> argument_list() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (current_.kind == Tok::RParen) {
      advance();
      return args;
    }
    args.push_back(term());
    while (current_.kind == Tok::Comma) {
      advance();
      args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  Term term() {
    std::size_t at = current_.offset;
    if (current_.kind != Tok::Ident || is_keyword(current_.text)) fail("expected a term");
    std::string name = current_.text;
    advance();
    auto arity = function_arity(name);
    if (current_.kind == Tok::LParen) {
      if (!arity) fail_at(at, "unknown function '" + name + "'");
      std::vector<Term> args = argument_list();
      if (args.size() != *arity) {
        fail_at(at, "'" + name + "' expects " + std::to_string(*arity) + " arguments, got " +
                        std::to_string(args.size()));
      }
      return Term::apply(name, std::move(args));
    }
    if (arity) {
      if (*arity != 0) fail_at(at, "function '" + name + "' needs arguments");
      return Term::apply(name);
    }
    return Term::variable(name);
  }

  Lexer lexer_;
  Language language_;
  const ParseContext& context_;
  std::vector<Scoped> relvars_;
  std::vector<Scoped> funvars_;
  Token current_;
  std::size_t previous_offset_ = 0;
  bool infer_ = false;
  std::map<std::string, std::size_t> inferred_;
};

// -- validation ---------------------------------------------------------------

class Validator {
 public:
  Validator(Language language, const ParseContext& context)
      : language_(language), context_(context) {
    for (const auto& [name, arity] : context.relation_variables) relvars_.push_back({name, arity});
    for (const auto& [name, arity] : context.function_variables) funvars_.push_back({name, arity});
  }

  void check(const Formula& f) {
    switch (f.kind()) {
      case Kind::Top:
      case Kind::Bottom:
        return;
      case Kind::Atom: {
        require(language_ != Language::MTL, "predicate atoms");
        auto arity = relation_arity(f.name());
        if (!arity) throw UnknownSymbolError("unknown predicate '" + f.name() + "'");
        if (*arity != f.terms().size()) {
          throw ArityError("'" + f.name() + "' expects " + std::to_string(*arity) + " arguments");
        }
        for (const Term& t : f.terms()) check_term(t);
        return;
      }
      case Kind::Equal:
        require(language_ != Language::MTL, "equality");
        if (!context_.vocabulary.equality() && language_ != Language::SO) {
          throw FragmentError("equality is disabled in this vocabulary");
        }
        for (const Term& t : f.terms()) check_term(t);
        return;
      case Kind::Dependency:
        require(language_ == Language::Team, "dependency atoms");
        context_.registry.get(f.name(), f.terms().size());
        for (const Term& t : f.terms()) check_term(t);
        return;
      case Kind::Prop:
        require(language_ == Language::MTL, "propositions");
        return;
      case Kind::Not:
        if ((language_ == Language::Team || language_ == Language::MTL) &&
            !f.body().is_classical()) {
          throw FragmentError("classical negation applied to a non-classical formula");
        }
        check(f.body());
        return;
      case Kind::Tilde:
        require(language_ == Language::Team || language_ == Language::MTL, "'~'");
        check(f.body());
        return;
      case Kind::And:
      case Kind::Or:
        check(f.lhs());
        check(f.rhs());
        return;
      case Kind::Exists:
      case Kind::Forall:
        require(language_ != Language::MTL, "first-order quantifiers");
        check(f.body());
        return;
      case Kind::Box:
      case Kind::Diamond:
        require(language_ == Language::MTL, "modal operators");
        check(f.body());
        return;
      case Kind::SoExists:
      case Kind::SoForall: {
        require(language_ == Language::SO, "second-order quantifiers");
        auto& scope = f.binder().sort == SoSort::Function ? funvars_ : relvars_;
        scope.push_back({f.binder().name, f.binder().arity});
        check(f.body());
        scope.pop_back();
        return;
      }
      case Kind::Implies:
      case Kind::Iff:
        require(language_ == Language::SO, "'->' and '<->'");
        check(f.lhs());
        check(f.rhs());
        return;
    }
  }

 private:
  struct Scoped {
    std::string name;
    std::size_t arity;
  };

  void require(bool ok, const char* what) const {
    if (!ok) {
      throw FragmentError(std::string(what) + " are not allowed in " +
                          std::string(to_string(language_)) + " formulas");
    }
  }

  static std::optional<std::size_t> lookup(const std::vector<Scoped>& scope,
                                           const std::string& name) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->name == name) return it->arity;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> relation_arity(const std::string& name) const {
    if (auto a = lookup(relvars_, name)) return a;
    return context_.vocabulary.predicate_arity(name);
  }

  void check_term(const Term& t) const {
    if (t.is_variable()) return;
    auto arity = lookup(funvars_, t.name());
    if (!arity) arity = context_.vocabulary.function_arity(t.name());
    if (!arity) throw UnknownSymbolError("unknown function '" + t.name() + "'");
    if (*arity != t.args().size()) {
      throw ArityError("'" + t.name() + "' expects " + std::to_string(*arity) + " arguments");
    }
    for (const Term& a : t.args()) check_term(a);
  }

  Language language_;
  const ParseContext& context_;
  std::vector<Scoped> relvars_;
  std::vector<Scoped> funvars_;
  bool infer_ = false;
  std::map<std::string, std::size_t> inferred_;
};

}  // namespace

Vocabulary infer_vocabulary(std::string_view text, Language language, const ParseContext& context) {
  Parser parser(text, language, context);
  parser.enable_inference();
  parser.parse_all();
  Vocabulary out = context.vocabulary;
  for (const auto& [name, arity] : parser.inferred()) out.add_predicate(name, arity);
  return out;
}

Formula parse(std::string_view text, Language language, const ParseContext& context) {
  return Parser(text, language, context).parse_all();
}

Formula parse(std::string_view text, Language language, const Vocabulary& vocabulary) {
  ParseContext context;
  context.vocabulary = vocabulary;
  return parse(text, language, context);
}

void validate(const Formula& formula, Language language, const ParseContext& context) {
  Validator(language, context).check(formula);
}

Term parse_term(std::string_view text, const Vocabulary& vocabulary) {
  ParseContext context;
  context.vocabulary = vocabulary;
  return Parser(text, Language::FO, context).parse_term_only();
}

}  // namespace teamlogic
