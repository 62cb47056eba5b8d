#include "teamlogic/normal_form.hpp"

#include <algorithm>
#include <deque>

#include "teamlogic/error.hpp"
#include "teamlogic/printer.hpp"

namespace teamlogic {

Formula make_e(const Formula& beta) { return Formula::tilde(Formula::neg(beta)); }

Formula bool_or(const Formula& a, const Formula& b) {
  return Formula::tilde(Formula::conj(Formula::tilde(a), Formula::tilde(b)));
}

Formula bool_or_all(const std::vector<Formula>& parts) {
  if (parts.empty()) throw InvariantError("Boolean disjunction of nothing");
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = bool_or(out, parts[i]);
  return out;
}

std::optional<Formula> match_e(const Formula& f) {
  if (f.kind() == Kind::Tilde && f.body().kind() == Kind::Not && f.body().body().is_classical()) {
    return f.body().body();
  }
  return std::nullopt;
}

std::optional<std::pair<Formula, Formula>> match_bool_or(const Formula& f) {
  if (f.kind() != Kind::Tilde || f.body().kind() != Kind::And) return std::nullopt;
  const Formula& inner = f.body();
  if (inner.lhs().kind() != Kind::Tilde || inner.rhs().kind() != Kind::Tilde) return std::nullopt;
  return std::make_pair(inner.lhs().body(), inner.rhs().body());
}

namespace {

// alpha & E beta with alpha classical.
struct Piece {
  Formula alpha;
  Formula beta;
};

std::optional<Piece> match_piece(const Formula& f) {
  if (f.kind() != Kind::And || !f.lhs().is_classical()) return std::nullopt;
  auto beta = match_e(f.rhs());
  if (!beta) return std::nullopt;
  return Piece{f.lhs(), *beta};
}

// Splits a left-nested disjunction of pieces.
std::optional<std::vector<Piece>> match_pieces(const Formula& f) {
  std::deque<Piece> pieces;
  Formula node = f;
  while (node.kind() == Kind::Or) {
    auto p = match_piece(node.rhs());
    if (!p) return std::nullopt;
    pieces.push_front(*p);
    node = node.lhs();
  }
  auto p = match_piece(node);
  if (!p) return std::nullopt;
  pieces.push_front(*p);
  return std::vector<Piece>(pieces.begin(), pieces.end());
}

// alpha & E b1 & ... & E bn, n >= 1, as (alpha, [b1..bn]).
std::optional<std::pair<Formula, std::vector<Formula>>> match_flat_conjunction(const Formula& f) {
  std::deque<Formula> betas;
  Formula node = f;
  while (node.kind() == Kind::And) {
    auto b = match_e(node.rhs());
    if (!b) break;
    betas.push_front(*b);
    node = node.lhs();
  }
  if (betas.empty() || !node.is_classical()) return std::nullopt;
  return std::make_pair(node, std::vector<Formula>(betas.begin(), betas.end()));
}

std::optional<Formula> law1(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    auto m = match_flat_conjunction(phi);
    if (!m) return std::nullopt;
    std::vector<Formula> parts;
    for (const Formula& b : m->second) parts.push_back(Formula::conj(m->first, make_e(b)));
    return Formula::disj_all(parts);
  }
  auto pieces = match_pieces(phi);
  if (!pieces) return std::nullopt;
  const Formula& alpha = (*pieces)[0].alpha;
  Formula out = alpha;
  for (const Piece& p : *pieces) {
    if (p.alpha != alpha) return std::nullopt;
    out = Formula::conj(out, make_e(p.beta));
  }
  return out;
}

std::optional<Formula> law2(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    auto pieces = match_pieces(phi);
    if (!pieces) return std::nullopt;
    std::vector<Formula> alphas;
    for (const Piece& p : *pieces) alphas.push_back(p.alpha);
    Formula out = Formula::disj_all(alphas);
    for (const Piece& p : *pieces) out = Formula::conj(out, make_e(Formula::conj(p.alpha, p.beta)));
    return out;
  }
  auto m = match_flat_conjunction(phi);
  if (!m) return std::nullopt;
  const std::vector<Formula>& gammas = m->second;
  std::size_t n = gammas.size();
  for (const Formula& g : gammas) {
    if (g.kind() != Kind::And) return std::nullopt;
  }
  // Peel the disjunction into exactly n parts from the right.
  std::vector<Formula> alphas(n, Formula::top());
  Formula node = m->first;
  for (std::size_t i = n - 1; i > 0; --i) {
    if (node.kind() != Kind::Or) return std::nullopt;
    alphas[i] = node.rhs();
    node = node.lhs();
  }
  alphas[0] = node;
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < n; ++i) {
    if (gammas[i].lhs() != alphas[i]) return std::nullopt;
    parts.push_back(Formula::conj(alphas[i], make_e(gammas[i].rhs())));
  }
  return Formula::disj_all(parts);
}

std::optional<Formula> law3(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    if (phi.kind() != Kind::Or) return std::nullopt;
    auto b = match_bool_or(phi.lhs());
    if (!b) return std::nullopt;
    return bool_or(Formula::disj(b->first, phi.rhs()), Formula::disj(b->second, phi.rhs()));
  }
  auto b = match_bool_or(phi);
  if (!b || b->first.kind() != Kind::Or || b->second.kind() != Kind::Or) return std::nullopt;
  if (b->first.rhs() != b->second.rhs()) return std::nullopt;
  return Formula::disj(bool_or(b->first.lhs(), b->second.lhs()), b->first.rhs());
}

std::optional<Formula> law4(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    if (phi.kind() != Kind::Or) return std::nullopt;
    auto b = match_bool_or(phi.rhs());
    if (!b) return std::nullopt;
    return bool_or(Formula::disj(phi.lhs(), b->first), Formula::disj(phi.lhs(), b->second));
  }
  auto b = match_bool_or(phi);
  if (!b || b->first.kind() != Kind::Or || b->second.kind() != Kind::Or) return std::nullopt;
  if (b->first.lhs() != b->second.lhs()) return std::nullopt;
  return Formula::disj(b->first.lhs(), bool_or(b->first.rhs(), b->second.rhs()));
}

std::optional<Formula> law5(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    if (phi.kind() != Kind::Exists) return std::nullopt;
    auto b = match_bool_or(phi.body());
    if (!b) return std::nullopt;
    return bool_or(Formula::exists(phi.name(), b->first), Formula::exists(phi.name(), b->second));
  }
  auto b = match_bool_or(phi);
  if (!b || b->first.kind() != Kind::Exists || b->second.kind() != Kind::Exists) return std::nullopt;
  if (b->first.name() != b->second.name()) return std::nullopt;
  return Formula::exists(b->first.name(), bool_or(b->first.body(), b->second.body()));
}

std::optional<Formula> law6(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    if (phi.kind() != Kind::Exists || phi.body().kind() != Kind::Or) return std::nullopt;
    const Formula& body = phi.body();
    return Formula::disj(Formula::exists(phi.name(), body.lhs()),
                         Formula::exists(phi.name(), body.rhs()));
  }
  if (phi.kind() != Kind::Or || phi.lhs().kind() != Kind::Exists ||
      phi.rhs().kind() != Kind::Exists || phi.lhs().name() != phi.rhs().name()) {
    return std::nullopt;
  }
  return Formula::exists(phi.lhs().name(), Formula::disj(phi.lhs().body(), phi.rhs().body()));
}

std::optional<Formula> law7(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    if (phi.kind() != Kind::Exists) return std::nullopt;
    auto p = match_piece(phi.body());
    if (!p) return std::nullopt;
    const std::string& x = phi.name();
    return Formula::conj(Formula::exists(x, p->alpha),
                         make_e(Formula::exists(x, Formula::conj(p->alpha, p->beta))));
  }
  if (phi.kind() != Kind::And || phi.lhs().kind() != Kind::Exists) return std::nullopt;
  auto e = match_e(phi.rhs());
  if (!e || e->kind() != Kind::Exists || e->name() != phi.lhs().name()) return std::nullopt;
  const Formula& inner = e->body();
  const Formula& alpha = phi.lhs().body();
  if (inner.kind() != Kind::And || inner.lhs() != alpha || !alpha.is_classical()) {
    return std::nullopt;
  }
  return Formula::exists(phi.lhs().name(), Formula::conj(alpha, make_e(inner.rhs())));
}

std::optional<Formula> law8(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    if (phi.kind() != Kind::Forall || phi.body().kind() != Kind::And) return std::nullopt;
    return Formula::conj(Formula::forall(phi.name(), phi.body().lhs()),
                         Formula::forall(phi.name(), phi.body().rhs()));
  }
  if (phi.kind() != Kind::And || phi.lhs().kind() != Kind::Forall ||
      phi.rhs().kind() != Kind::Forall || phi.lhs().name() != phi.rhs().name()) {
    return std::nullopt;
  }
  return Formula::forall(phi.lhs().name(), Formula::conj(phi.lhs().body(), phi.rhs().body()));
}

std::optional<Formula> law9(const Formula& phi, LawDirection dir) {
  if (dir == LawDirection::LeftToRight) {
    if (phi.kind() != Kind::Forall || phi.body().kind() != Kind::Tilde) return std::nullopt;
    return Formula::tilde(Formula::forall(phi.name(), phi.body().body()));
  }
  if (phi.kind() != Kind::Tilde || phi.body().kind() != Kind::Forall) return std::nullopt;
  return Formula::forall(phi.body().name(), Formula::tilde(phi.body().body()));
}

}  // namespace

std::optional<Formula> apply_law(int law, const Formula& phi, LawDirection direction) {
  switch (law) {
    case 1: return law1(phi, direction);
    case 2: return law2(phi, direction);
    case 3: return law3(phi, direction);
    case 4: return law4(phi, direction);
    case 5: return law5(phi, direction);
    case 6: return law6(phi, direction);
    case 7: return law7(phi, direction);
    case 8: return law8(phi, direction);
    case 9: return law9(phi, direction);
    default: throw InvariantError("laws are numbered 1 to 9");
  }
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

Formula smart_neg(const Formula& f) {
  if (f.kind() == Kind::Top) return Formula::bottom();
  if (f.kind() == Kind::Bottom) return Formula::top();
  if (f.kind() == Kind::Not) return f.body();
  return Formula::neg(f);
}

Formula smart_conj(const Formula& a, const Formula& b) {
  if (a.kind() == Kind::Top) return b;
  if (b.kind() == Kind::Top) return a;
  if (a.kind() == Kind::Bottom || b.kind() == Kind::Bottom) return Formula::bottom();
  if (a == b) return a;
  return Formula::conj(a, b);
}

Formula smart_disj(const Formula& a, const Formula& b) {
  if (a.kind() == Kind::Bottom) return b;
  if (b.kind() == Kind::Bottom) return a;
  if (a.kind() == Kind::Top || b.kind() == Kind::Top) return Formula::top();
  if (a == b) return a;
  return Formula::disj(a, b);
}

Formula smart_exists(const std::string& x, const Formula& f) {
  if (f.kind() == Kind::Top || f.kind() == Kind::Bottom) return f;
  return Formula::exists(x, f);
}

Formula smart_forall(const std::string& x, const Formula& f) {
  if (f.kind() == Kind::Top || f.kind() == Kind::Bottom) return f;
  return Formula::forall(x, f);
}

using Disjuncts = std::vector<Disjunct>;

class Expander {
 public:
  explicit Expander(std::size_t max_size) : max_size_(max_size) {}

  Disjuncts expand(const Formula& f) {
    if (f.is_classical()) return {Disjunct{f, {}}};
    switch (f.kind()) {
      case Kind::Tilde: return negate(expand(f.body()));
      case Kind::And: return product(expand(f.lhs()), expand(f.rhs()));
      case Kind::Or: return split(expand(f.lhs()), expand(f.rhs()));
      case Kind::Exists: {
        Disjuncts out;
        for (const Disjunct& d : expand(f.body())) {
          Disjunct e{smart_exists(f.name(), d.alpha), {}};
          for (const Formula& b : d.betas) {
            e.betas.push_back(smart_exists(f.name(), smart_conj(d.alpha, b)));
          }
          out.push_back(std::move(e));
        }
        return tidy(std::move(out));
      }
      case Kind::Forall: {
        Disjuncts out;
        for (const Disjunct& d : expand(f.body())) {
          Disjunct e{smart_forall(f.name(), d.alpha), {}};
          for (const Formula& b : d.betas) e.betas.push_back(smart_exists(f.name(), b));
          out.push_back(std::move(e));
        }
        return tidy(std::move(out));
      }
      case Kind::Dependency:
        throw FragmentError("dependency atoms have no normal form here");
      default:
        throw FragmentError("not a first-order team formula");
    }
  }

 private:
  // ~(D_1 \/ ... \/ D_n) = ~D_1 & ... & ~D_n, and
  // ~(a & E b_1 & ... & E b_m) = E !a \/ !b_1 \/ ... \/ !b_m.
  Disjuncts negate(const Disjuncts& ds) {
    Disjuncts acc = {Disjunct{Formula::top(), {}}};
    for (const Disjunct& d : ds) {
      Disjuncts neg;
      neg.push_back(Disjunct{Formula::top(), {smart_neg(d.alpha)}});
      for (const Formula& b : d.betas) neg.push_back(Disjunct{smart_neg(b), {}});
      acc = product(acc, tidy(std::move(neg)));
    }
    return acc;
  }

  Disjuncts product(const Disjuncts& a, const Disjuncts& b) {
    guard(a.size() * b.size());
    Disjuncts out;
    for (const Disjunct& d : a) {
      for (const Disjunct& e : b) {
        Disjunct c{smart_conj(d.alpha, e.alpha), d.betas};
        c.betas.insert(c.betas.end(), e.betas.begin(), e.betas.end());
        out.push_back(std::move(c));
      }
    }
    return tidy(std::move(out));
  }

  // (a & E b_j) | (c & E d_k) = (a | c) & E(a & b_j) & E(c & d_k).
  Disjuncts split(const Disjuncts& a, const Disjuncts& b) {
    guard(a.size() * b.size());
    Disjuncts out;
    for (const Disjunct& d : a) {
      for (const Disjunct& e : b) {
        Disjunct c{smart_disj(d.alpha, e.alpha), {}};
        for (const Formula& x : d.betas) c.betas.push_back(smart_conj(d.alpha, x));
        for (const Formula& x : e.betas) c.betas.push_back(smart_conj(e.alpha, x));
        out.push_back(std::move(c));
      }
    }
    return tidy(std::move(out));
  }

  // Removes repeated betas, unsatisfiable disjuncts and duplicates.
  Disjuncts tidy(Disjuncts ds) {
    Disjuncts out;
    std::size_t size = 0;
    for (Disjunct& d : ds) {
      std::vector<Formula> betas;
      bool dead = false;
      for (const Formula& b : d.betas) {
        if (b.kind() == Kind::Bottom) dead = true;
        if (std::find(betas.begin(), betas.end(), b) == betas.end()) betas.push_back(b);
      }
      if (d.alpha.kind() == Kind::Bottom && !betas.empty()) dead = true;
      if (dead) continue;
      d.betas = std::move(betas);
      if (std::find(out.begin(), out.end(), d) != out.end()) continue;
      size += d.alpha.size();
      for (const Formula& b : d.betas) size += b.size() + 2;
      out.push_back(std::move(d));
    }
    if (out.empty()) out.push_back(Disjunct{Formula::top(), {Formula::bottom()}});
    guard(size);
    return out;
  }

  void guard(std::size_t size) const {
    if (size > max_size_) throw ResourceExhausted("normal form exceeds the size budget");
  }

  std::size_t max_size_;
};

}  // namespace

DNF dnf_expand(const Formula& phi, std::size_t max_size) {
  Expander e(max_size);
  return DNF{e.expand(phi)};
}

Formula reconstruct(const Disjunct& d) {
  Formula out = d.alpha;
  for (const Formula& b : d.betas) out = Formula::conj(out, make_e(b));
  return out;
}

Formula reconstruct(const DNF& dnf) {
  std::vector<Formula> parts;
  for (const Disjunct& d : dnf.disjuncts) parts.push_back(reconstruct(d));
  return bool_or_all(parts);
}

std::size_t dnf_size(const DNF& dnf) {
  std::size_t size = 0;
  for (const Disjunct& d : dnf.disjuncts) {
    size += d.alpha.size();
    for (const Formula& b : d.betas) size += b.size() + 2;
  }
  return size;
}

std::string print_dnf(const DNF& dnf) {
  std::string out;
  for (std::size_t i = 0; i < dnf.disjuncts.size(); ++i) {
    const Disjunct& d = dnf.disjuncts[i];
    if (i) out += " \\/ ";
    out += "((" + print(d.alpha) + ")";
    for (const Formula& b : d.betas) out += " & NE (" + print(b) + ")";
    out += ")";
  }
  return out;
}

Formula build_gamma(const Disjunct& d, const std::string& x, const std::string& y) {
  auto check = [&](const Formula& f) {
    for (const auto& v : all_vars(f)) {
      if (v != x && v != y) throw FragmentError("variable '" + v + "' is neither " + x + " nor " + y);
    }
  };
  check(d.alpha);
  std::vector<Formula> parts;
  for (const Formula& b : d.betas) {
    check(b);
    parts.push_back(Formula::exists(x, Formula::exists(y, Formula::conj(d.alpha, b))));
  }
  return Formula::conj_all(parts);
}

}  // namespace teamlogic
