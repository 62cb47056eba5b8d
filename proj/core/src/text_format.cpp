#include "teamlogic/text_format.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "teamlogic/error.hpp"
#include "teamlogic/so.hpp"

namespace teamlogic {

namespace {

struct Token {
  enum Type { Ident, Number, Symbol, End } type = End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, current_.line, current_.column);
  }

  bool at_symbol(std::string_view s) const {
    return current_.type == Token::Symbol && current_.text == s;
  }
  bool at_word(std::string_view s) const {
    return current_.type == Token::Ident && current_.text == s;
  }

  void expect(std::string_view s) {
    if (!at_symbol(s)) fail("expected '" + std::string(s) + "'");
    advance();
  }

  std::string identifier() {
    if (current_.type != Token::Ident) fail("expected a name");
    return next().text;
  }

  std::size_t number() {
    if (current_.type != Token::Number) fail("expected a number");
    const Token t = next();
    try {
      return std::stoull(t.text);
    } catch (const std::exception&) {
      throw ParseError("number out of range", t.line, t.column);
    }
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      current_.type = Token::Number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        current_.text += text_[pos_];
        step();
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      current_.type = Token::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\'')) {
        current_.text += text_[pos_];
        step();
      }
    } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      current_.type = Token::Symbol;
      current_.text = "->";
      step();
      step();
    } else if (std::string_view("{}(),;:").find(c) != std::string_view::npos) {
      current_.type = Token::Symbol;
      current_.text = std::string(1, c);
      step();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

// `( a, b, ... )`, possibly empty.
Tuple read_tuple(Lexer& lex) {
  Tuple t;
  lex.expect("(");
  if (!lex.at_symbol(")")) {
    t.push_back(static_cast<Element>(lex.number()));
    while (lex.at_symbol(",")) {
      lex.next();
      t.push_back(static_cast<Element>(lex.number()));
    }
  }
  lex.expect(")");
  return t;
}

void check_elements(Lexer& lex, const Tuple& t, std::size_t n) {
  for (Element e : t) {
    if (e >= n) lex.fail("element " + std::to_string(e) + " is outside the domain");
  }
}

Relation read_relation(Lexer& lex, std::size_t n) {
  std::optional<std::size_t> arity;
  if (lex.peek().type == Token::Number) arity = lex.number();
  lex.expect("{");
  std::vector<Tuple> tuples;
  while (!lex.at_symbol("}")) {
    Tuple t = read_tuple(lex);
    if (!arity) arity = t.size();
    if (t.size() != *arity) lex.fail("tuple has the wrong arity");
    check_elements(lex, t, n);
    tuples.push_back(std::move(t));
  }
  lex.expect("}");
  if (!arity) lex.fail("empty relation needs an explicit arity");
  Relation r(*arity, n);
  for (const Tuple& t : tuples) r.insert(t);
  return r;
}

FunctionTable read_function(Lexer& lex, std::size_t n) {
  std::optional<std::size_t> arity;
  if (lex.peek().type == Token::Number) arity = lex.number();
  lex.expect("{");
  std::vector<std::pair<Tuple, Element>> entries;
  while (!lex.at_symbol("}")) {
    Tuple t = read_tuple(lex);
    if (!arity) arity = t.size();
    if (t.size() != *arity) lex.fail("argument tuple has the wrong arity");
    check_elements(lex, t, n);
    lex.expect("->");
    Element v = static_cast<Element>(lex.number());
    check_elements(lex, {v}, n);
    entries.emplace_back(std::move(t), v);
  }
  Token close = lex.peek();
  lex.expect("}");
  if (!arity) throw ParseError("function table is empty", close.line, close.column);
  FunctionTable f(*arity, n);
  std::vector<bool> seen(f.universe_size(), false);
  for (const auto& [t, v] : entries) {
    std::size_t c = f.code(t);
    if (seen[c]) throw ParseError("argument tuple listed twice", close.line, close.column);
    seen[c] = true;
    f.set_code(c, v);
  }
  for (bool s : seen) {
    if (!s) throw ParseError("function is not total", close.line, close.column);
  }
  return f;
}

std::string next_default_name(std::size_t& counter) {
  std::string name = counter == 0 ? "T" : "T" + std::to_string(counter);
  ++counter;
  return name;
}

// `[NAME:]` in front of a team body.
std::optional<std::string> read_team_name(Lexer& lex, Lexer probe) {
  if (probe.peek().type != Token::Ident) return std::nullopt;
  probe.next();
  if (!probe.at_symbol(":")) return std::nullopt;
  std::string name = lex.identifier();
  lex.expect(":");
  return name;
}

Team read_team(Lexer& lex, std::optional<std::size_t> n) {
  VarList vars;
  while (lex.peek().type == Token::Ident) vars.push_back(lex.identifier());
  std::set<std::string> distinct(vars.begin(), vars.end());
  if (distinct.size() != vars.size()) lex.fail("team variable listed twice");
  lex.expect("{");
  std::vector<Row> rows;
  while (!lex.at_symbol("}")) {
    Tuple t = read_tuple(lex);
    if (t.size() != vars.size()) lex.fail("row has the wrong number of values");
    if (n) check_elements(lex, t, *n);
    rows.push_back(std::move(t));
  }
  lex.expect("}");
  return Team(vars, std::move(rows));
}

WorldSet read_worlds(Lexer& lex, std::size_t worlds) {
  lex.expect("{");
  WorldSet set = 0;
  while (!lex.at_symbol("}")) {
    std::size_t w = lex.number();
    if (w >= worlds) lex.fail("world " + std::to_string(w) + " does not exist");
    set |= WorldSet{1} << w;
    if (lex.at_symbol(",")) lex.next();
  }
  lex.expect("}");
  return set;
}

void read_kripke(Lexer& lex, Document& doc, std::size_t& world_counter) {
  std::size_t worlds = lex.number();
  if (worlds == 0 || worlds > kMaxWorlds) lex.fail("a Kripke structure needs 1 to 64 worlds");
  KripkeStructure k(worlds);
  lex.expect("{");
  while (!lex.at_symbol("}")) {
    if (lex.at_symbol(";")) {
      lex.next();
      continue;
    }
    std::string item = lex.identifier();
    if (item == "edges") {
      while (lex.at_symbol("(")) {
        Tuple e = read_tuple(lex);
        if (e.size() != 2) lex.fail("an edge has two endpoints");
        if (e[0] >= worlds || e[1] >= worlds) lex.fail("edge endpoint does not exist");
        k.add_edge(e[0], e[1]);
      }
    } else if (item == "val") {
      std::string p = lex.identifier();
      k.set_valuation(p, read_worlds(lex, worlds));
    } else if (item == "team") {
      std::optional<std::string> name = read_team_name(lex, lex);
      WorldSet set = read_worlds(lex, worlds);
      doc.world_teams.emplace_back(name ? *name : next_default_name(world_counter), set);
    } else {
      lex.fail("unknown Kripke item '" + item + "'");
    }
  }
  lex.expect("}");
  doc.kripke = std::move(k);
}

}  // namespace

const Team& Document::team(const std::string& name) const {
  for (const auto& [n, t] : teams) {
    if (n == name) return t;
  }
  throw UnknownSymbolError("no team named '" + name + "'");
}

WorldSet Document::world_team(const std::string& name) const {
  for (const auto& [n, t] : world_teams) {
    if (n == name) return t;
  }
  throw UnknownSymbolError("no world team named '" + name + "'");
}

Document parse_document(std::string_view text) {
  Lexer lex(text);
  Document doc;
  std::size_t team_counter = 0, world_counter = 0;
  std::set<std::string> team_names;
  while (lex.peek().type != Token::End) {
    std::string keyword = lex.identifier();
    if (keyword == "domain") {
      if (doc.structure) lex.fail("domain declared twice");
      std::size_t n = lex.number();
      if (n == 0) lex.fail("the domain must be nonempty");
      doc.structure = Structure(n);
    } else if (keyword == "rel" || keyword == "fun") {
      if (!doc.structure) lex.fail("'domain' must come before relations and functions");
      std::string name = lex.identifier();
      if (doc.structure->find_relation(name) || doc.structure->find_function(name)) {
        lex.fail("symbol '" + name + "' declared twice");
      }
      std::size_t n = doc.structure->domain_size();
      if (keyword == "rel") {
        doc.structure->set_relation(name, read_relation(lex, n));
      } else {
        doc.structure->set_function(name, read_function(lex, n));
      }
    } else if (keyword == "team") {
      std::optional<std::string> name = read_team_name(lex, lex);
      std::optional<std::size_t> n;
      if (doc.structure) n = doc.structure->domain_size();
      Team t = read_team(lex, n);
      std::string key = name ? *name : next_default_name(team_counter);
      if (!team_names.insert(key).second) lex.fail("team '" + key + "' declared twice");
      doc.teams.emplace_back(key, std::move(t));
    } else if (keyword == "kripke") {
      if (doc.kripke) lex.fail("only one Kripke structure per file");
      read_kripke(lex, doc, world_counter);
    } else {
      lex.fail("unknown declaration '" + keyword + "'");
    }
  }
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw FileError("cannot read '" + path + "'");
  return out.str();
}

Document load_document(const std::string& path) { return parse_document(read_file(path)); }

SOAssignment parse_so_assignment(std::string_view text, std::size_t n) {
  Lexer lex(text);
  SOAssignment j;
  while (lex.peek().type != Token::End) {
    std::string keyword = lex.identifier();
    std::string name = lex.identifier();
    if (j.relations.count(name) || j.functions.count(name) || j.elements.count(name)) {
      lex.fail("'" + name + "' assigned twice");
    }
    if (keyword == "rel") {
      j.relations.emplace(name, read_relation(lex, n));
    } else if (keyword == "fun") {
      j.functions.emplace(name, read_function(lex, n));
    } else if (keyword == "var") {
      std::size_t v = lex.number();
      if (v >= n) lex.fail("element " + std::to_string(v) + " is outside the domain");
      j.elements.emplace(name, static_cast<Element>(v));
    } else {
      lex.fail("unknown declaration '" + keyword + "'");
    }
  }
  return j;
}

SOAssignment load_so_assignment(const std::string& path, std::size_t n) {
  return parse_so_assignment(read_file(path), n);
}

namespace {

std::string format_tuple(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

}  // namespace

std::string format_structure(const Structure& a) {
  std::string out = "domain " + std::to_string(a.domain_size()) + "\n";
  for (const auto& [name, r] : a.relations()) {
    out += "rel " + name + " " + std::to_string(r.arity()) + " {";
    for (const Tuple& t : r.tuples()) out += " " + format_tuple(t);
    out += " }\n";
  }
  for (const auto& [name, f] : a.functions()) {
    out += "fun " + name + " " + std::to_string(f.arity()) + " {";
    Relation shape(f.arity(), a.domain_size());
    for (std::size_t c = 0; c < f.universe_size(); ++c) {
      out += " " + format_tuple(shape.decode(c)) + "->" + std::to_string(f.at(c));
    }
    out += " }\n";
  }
  return out;
}

std::string format_team(const Team& team, const std::string& name) {
  std::string out = "team";
  if (!name.empty()) out += " " + name + ":";
  for (const auto& v : team.domain()) out += " " + v;
  out += " {";
  for (const Row& r : team.rows()) out += " " + format_tuple(r);
  return out + " }\n";
}

std::string format_world_set(WorldSet set) {
  std::string out = "{";
  for (std::size_t w : worlds_of(set)) out += " " + std::to_string(w);
  return out + " }";
}

std::string format_kripke(const KripkeStructure& k,
                          const std::vector<std::pair<std::string, WorldSet>>& teams) {
  std::string out = "kripke " + std::to_string(k.world_count()) + " {\n  edges";
  for (const auto& [a, b] : k.edges()) out += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  for (const auto& [p, set] : k.valuations()) out += " ;\n  val " + p + " " + format_world_set(set);
  for (const auto& [name, set] : teams) {
    out += " ;\n  team ";
    if (!name.empty()) out += name + ": ";
    out += format_world_set(set);
  }
  return out + "\n}\n";
}

}  // namespace teamlogic
