#include "teamlogic/printer.hpp"

namespace teamlogic {

namespace {

struct Symbols {
  const char* top;
  const char* bottom;
  const char* tilde;
  const char* bang;
  const char* conj;
  const char* disj;
  const char* exists;
  const char* forall;
  const char* box;
  const char* diamond;
  const char* implies;
  const char* iff;
  const char* so_exists;
  const char* so_forall;
  const char* fn_exists;
  const char* fn_forall;
};

constexpr Symbols kAscii{"top", "bot", "~",  "!",  " & ",  " | ",  "E ",  "A ",
                         "[]",  "<>",  " -> ", " <-> ", "E2 ", "A2 ", "Ef ", "Af "};
constexpr Symbols kUnicode{"⊤",  "⊥",  "∼",  "¬",  " ∧ ", " ∨ ", "∃", "∀",
                           "□",  "◇",  " → ", " ↔ ", "∃", "∀", "∃", "∀"};

bool is_binary(Kind k) {
  return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Iff;
}

bool is_binder(Kind k) {
  return k == Kind::Exists || k == Kind::Forall || k == Kind::SoExists || k == Kind::SoForall;
}

void print_term(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_variable() || t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print_term(t.args()[i], out);
  }
  out += ')';
}

class Printer {
 public:
  explicit Printer(const Symbols& s) : s_(s), unicode_(&s == &kUnicode) {}

  enum class Position { Top, QuantifierBody, Operand, UnaryOperand };

  void print(const Formula& f, Position pos, std::string& out) const {
    Kind k = f.kind();
    bool parens = false;
    if (pos == Position::Operand || pos == Position::UnaryOperand) {
      parens = is_binary(k) || is_binder(k);
    } else if (pos == Position::QuantifierBody) {
      parens = is_binary(k);
    }
    if (pos == Position::UnaryOperand && k == Kind::Equal) parens = true;
    if (parens) out += '(';
    print_bare(f, out);
    if (parens) out += ')';
  }

 private:
  void print_bare(const Formula& f, std::string& out) const {
    switch (f.kind()) {
      case Kind::Top: out += s_.top; return;
      case Kind::Bottom: out += s_.bottom; return;
      case Kind::Atom:
      case Kind::Dependency:
        out += f.name();
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ',';
          print_term(f.terms()[i], out);
        }
        out += ')';
        return;
      case Kind::Equal:
        print_term(f.terms()[0], out);
        out += " = ";
        print_term(f.terms()[1], out);
        return;
      case Kind::Prop: out += f.name(); return;
      case Kind::Not: unary(s_.bang, f, out); return;
      case Kind::Tilde: unary(s_.tilde, f, out); return;
      case Kind::Box: unary(s_.box, f, out); return;
      case Kind::Diamond: unary(s_.diamond, f, out); return;
      case Kind::And: binary(s_.conj, f, out); return;
      case Kind::Or: binary(s_.disj, f, out); return;
      case Kind::Implies: binary(s_.implies, f, out); return;
      case Kind::Iff: binary(s_.iff, f, out); return;
      case Kind::Exists:
      case Kind::Forall:
        out += f.kind() == Kind::Exists ? s_.exists : s_.forall;
        out += f.name();
        out += ". ";
        print(f.body(), Position::QuantifierBody, out);
        return;
      case Kind::SoExists:
      case Kind::SoForall: {
        const SoBinder& b = f.binder();
        bool ex = f.kind() == Kind::SoExists;
        if (b.sort == SoSort::Function) {
          out += ex ? s_.fn_exists : s_.fn_forall;
        } else if (b.bound) {
          out += ex ? "Ep{" : "Ap{";
          if (unicode_) {
            out.resize(out.size() - 3);
            out += ex ? "∃^{" : "∀^{";
          }
          out += b.bound->to_string();
          out += "} ";
        } else {
          out += ex ? s_.so_exists : s_.so_forall;
        }
        out += b.name;
        out += ':';
        out += std::to_string(b.arity);
        out += ". ";
        print(f.body(), Position::QuantifierBody, out);
        return;
      }
    }
  }

  void unary(const char* op, const Formula& f, std::string& out) const {
    out += op;
    print(f.body(), Position::UnaryOperand, out);
  }

  void binary(const char* op, const Formula& f, std::string& out) const {
    print(f.lhs(), Position::Operand, out);
    out += op;
    print(f.rhs(), Position::Operand, out);
  }

  const Symbols& s_;
  bool unicode_;
};

}  // namespace

std::string print(const Formula& formula, PrintStyle style) {
  std::string out;
  Printer p(style == PrintStyle::Unicode ? kUnicode : kAscii);
  p.print(formula, Printer::Position::Top, out);
  return out;
}

std::string print(const Term& term) {
  std::string out;
  print_term(term, out);
  return out;
}

}  // namespace teamlogic
