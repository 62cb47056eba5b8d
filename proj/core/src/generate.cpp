#include "teamlogic/generate.hpp"

#include <algorithm>

#include "teamlogic/error.hpp"

namespace teamlogic {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

const Variable& pick_var(Rng& rng, const FormulaSpec& spec) {
  return spec.variables[pick(rng, spec.variables.size())];
}

std::vector<Term> random_args(Rng& rng, const FormulaSpec& spec, std::size_t arity) {
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(Term::variable(pick_var(rng, spec)));
  return args;
}

Formula fo_leaf(Rng& rng, const FormulaSpec& spec) {
  std::size_t options = spec.predicates.size() + (spec.equality ? 1 : 0);
  if (spec.constants && coin(rng, 0.1)) return coin(rng) ? Formula::top() : Formula::bottom();
  if (options == 0) return coin(rng) ? Formula::top() : Formula::bottom();
  std::size_t k = pick(rng, options);
  if (k < spec.predicates.size()) {
    auto it = std::next(spec.predicates.begin(), static_cast<std::ptrdiff_t>(k));
    return Formula::atom(it->first, random_args(rng, spec, it->second));
  }
  return Formula::equal(Term::variable(pick_var(rng, spec)), Term::variable(pick_var(rng, spec)));
}

// Splits n >= 2 into two positive parts.
std::pair<std::size_t, std::size_t> split(Rng& rng, std::size_t n) {
  std::size_t a = 1 + pick(rng, n - 1);
  return {a, n - a};
}

Formula classical_ml(Rng& rng, const std::vector<std::string>& props, std::size_t size,
                     std::size_t depth) {
  if (size <= 1) return Formula::proposition(props[pick(rng, props.size())]);
  std::vector<int> ops = {0};  // !
  if (size >= 3) ops.insert(ops.end(), {1, 2});
  if (depth > 0) ops.insert(ops.end(), {3, 4});
  switch (ops[pick(rng, ops.size())]) {
    case 0: return Formula::neg(classical_ml(rng, props, size - 1, depth));
    case 1:
    case 2: {
      auto [a, b] = split(rng, size - 1);
      Formula l = classical_ml(rng, props, a, depth), r = classical_ml(rng, props, b, depth);
      return coin(rng) ? Formula::conj(l, r) : Formula::disj(l, r);
    }
    case 3: return Formula::diamond(classical_ml(rng, props, size - 1, depth - 1));
    default: return Formula::box(classical_ml(rng, props, size - 1, depth - 1));
  }
}

}  // namespace

Formula random_fo(Rng& rng, const FormulaSpec& spec, std::size_t size) {
  if (size <= 1) return fo_leaf(rng, spec);
  std::vector<int> ops = {0};
  if (spec.quantifiers) ops.insert(ops.end(), {1, 2});
  if (size >= 3) ops.insert(ops.end(), {3, 4});
  switch (ops[pick(rng, ops.size())]) {
    case 0: return Formula::neg(random_fo(rng, spec, size - 1));
    case 1: return Formula::exists(pick_var(rng, spec), random_fo(rng, spec, size - 1));
    case 2: return Formula::forall(pick_var(rng, spec), random_fo(rng, spec, size - 1));
    case 3: {
      auto [a, b] = split(rng, size - 1);
      return Formula::conj(random_fo(rng, spec, a), random_fo(rng, spec, b));
    }
    default: {
      auto [a, b] = split(rng, size - 1);
      return Formula::disj(random_fo(rng, spec, a), random_fo(rng, spec, b));
    }
  }
}

Formula random_team_formula(Rng& rng, const FormulaSpec& spec, std::size_t size) {
  if (size <= 1) {
    if (!spec.dependencies.empty() && coin(rng, 0.4)) {
      const auto& [name, arity] = spec.dependencies[pick(rng, spec.dependencies.size())];
      return Formula::dependency(name, random_args(rng, spec, arity));
    }
    return fo_leaf(rng, spec);
  }
  std::vector<int> ops = {0};
  if (spec.tilde) ops.insert(ops.end(), {1, 1});
  if (spec.quantifiers) ops.insert(ops.end(), {2, 3});
  if (size >= 3) {
    ops.insert(ops.end(), {4, 4});
    if (spec.splitjunction) ops.insert(ops.end(), {5, 5});
  }
  switch (ops[pick(rng, ops.size())]) {
    case 0: return Formula::neg(random_fo(rng, spec, size - 1));
    case 1: return Formula::tilde(random_team_formula(rng, spec, size - 1));
    case 2: return Formula::exists(pick_var(rng, spec), random_team_formula(rng, spec, size - 1));
    case 3: return Formula::forall(pick_var(rng, spec), random_team_formula(rng, spec, size - 1));
    case 4: {
      auto [a, b] = split(rng, size - 1);
      return Formula::conj(random_team_formula(rng, spec, a), random_team_formula(rng, spec, b));
    }
    default: {
      auto [a, b] = split(rng, size - 1);
      return Formula::disj(random_team_formula(rng, spec, a), random_team_formula(rng, spec, b));
    }
  }
}

Formula random_mtl(Rng& rng, const std::vector<std::string>& props, std::size_t size,
                   std::size_t max_depth) {
  if (props.empty()) throw InvariantError("random modal formulas need a proposition");
  if (size <= 1) return Formula::proposition(props[pick(rng, props.size())]);
  std::vector<int> ops = {0, 1};
  if (size >= 3) ops.insert(ops.end(), {2, 3});
  if (max_depth > 0) ops.insert(ops.end(), {4, 5});
  switch (ops[pick(rng, ops.size())]) {
    case 0: return Formula::neg(classical_ml(rng, props, size - 1, max_depth));
    case 1: return Formula::tilde(random_mtl(rng, props, size - 1, max_depth));
    case 2: {
      auto [a, b] = split(rng, size - 1);
      return Formula::conj(random_mtl(rng, props, a, max_depth), random_mtl(rng, props, b, max_depth));
    }
    case 3: {
      auto [a, b] = split(rng, size - 1);
      return Formula::disj(random_mtl(rng, props, a, max_depth), random_mtl(rng, props, b, max_depth));
    }
    case 4: return Formula::diamond(random_mtl(rng, props, size - 1, max_depth - 1));
    default: return Formula::box(random_mtl(rng, props, size - 1, max_depth - 1));
  }
}

Structure random_structure(Rng& rng, const std::map<std::string, std::size_t>& predicates,
                           std::size_t n) {
  Structure a(n);
  for (const auto& [name, arity] : predicates) {
    Relation r(arity, n);
    for (std::size_t c = 0; c < r.universe_size(); ++c) r.set(c, coin(rng));
    a.set_relation(name, std::move(r));
  }
  return a;
}

Team random_team(Rng& rng, const VarList& vars, std::size_t n, std::size_t max_rows) {
  std::size_t rows = pick(rng, max_rows + 1);
  std::vector<Row> out;
  for (std::size_t i = 0; i < rows; ++i) {
    Row r;
    for (std::size_t j = 0; j < vars.size(); ++j) r.push_back(static_cast<Element>(pick(rng, n)));
    out.push_back(std::move(r));
  }
  return Team(vars, std::move(out));
}

KripkeStructure random_kripke(Rng& rng, std::size_t worlds, const std::vector<std::string>& props) {
  KripkeStructure k(worlds);
  for (std::size_t a = 0; a < worlds; ++a) {
    for (std::size_t b = 0; b < worlds; ++b) {
      if (coin(rng)) k.add_edge(a, b);
    }
  }
  for (const auto& p : props) k.set_valuation(p, random_world_set(rng, worlds));
  return k;
}

WorldSet random_world_set(Rng& rng, std::size_t worlds) {
  WorldSet s = 0;
  for (std::size_t w = 0; w < worlds; ++w) {
    if (coin(rng)) s |= WorldSet{1} << w;
  }
  return s;
}

std::uint64_t structure_count(const std::map<std::string, std::size_t>& predicates,
                              std::size_t n) {
  std::size_t bits = 0;
  for (const auto& [name, arity] : predicates) {
    bits += checked_power(n, arity);
    if (bits > 62) throw ResourceExhausted("too many candidate structures");
  }
  return std::uint64_t{1} << bits;
}

Structure structure_at(const std::map<std::string, std::size_t>& predicates, std::size_t n,
                       std::uint64_t index) {
  Structure a(n);
  std::size_t shift = 0;
  for (const auto& [name, arity] : predicates) {
    Relation r(arity, n);
    for (std::size_t c = 0; c < r.universe_size(); ++c, ++shift) r.set(c, (index >> shift) & 1U);
    a.set_relation(name, std::move(r));
  }
  return a;
}

std::uint64_t team_count(const VarList& vars, std::size_t n) {
  std::size_t rows = checked_power(n, vars.size());
  if (rows > 62) throw ResourceExhausted("too many candidate teams");
  return std::uint64_t{1} << rows;
}

Team team_from_mask(const VarList& vars, std::size_t n, std::uint64_t mask) {
  Relation shape(vars.size(), n);
  std::vector<Row> rows;
  for (std::size_t c = 0; c < shape.universe_size(); ++c) {
    if ((mask >> c) & 1U) rows.push_back(shape.decode(c));
  }
  return Team(vars, std::move(rows));
}

void for_each_kripke(std::size_t worlds, const std::vector<std::string>& props,
                     const std::function<void(const KripkeStructure&)>& visit) {
  std::size_t edge_bits = worlds * worlds;
  std::size_t bits = edge_bits + worlds * props.size();
  if (bits > 40) throw ResourceExhausted("too many Kripke structures");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
    KripkeStructure k(worlds);
    for (std::size_t e = 0; e < edge_bits; ++e) {
      if ((m >> e) & 1U) k.add_edge(e / worlds, e % worlds);
    }
    for (std::size_t i = 0; i < props.size(); ++i) {
      WorldSet v = (m >> (edge_bits + i * worlds)) & ((WorldSet{1} << worlds) - 1);
      k.set_valuation(props[i], v);
    }
    visit(k);
  }
}

std::vector<Formula> all_ptl_formulas(const std::vector<std::string>& props, std::size_t max_size) {
  // by_size[s]: (formula, classical) pairs with exactly s nodes.
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  for (std::size_t s = 1; s <= max_size; ++s) {
    auto& out = by_size[s];
    if (s == 1) {
      for (const auto& p : props) out.push_back(Formula::proposition(p));
      continue;
    }
    for (const Formula& f : by_size[s - 1]) {
      if (f.is_classical()) out.push_back(Formula::neg(f));
      out.push_back(Formula::tilde(f));
    }
    for (std::size_t a = 1; a + 1 < s; ++a) {
      for (const Formula& l : by_size[a]) {
        for (const Formula& r : by_size[s - 1 - a]) {
          out.push_back(Formula::conj(l, r));
          out.push_back(Formula::disj(l, r));
        }
      }
    }
  }
  std::vector<Formula> all;
  for (auto& level : by_size) all.insert(all.end(), level.begin(), level.end());
  return all;
}

}  // namespace teamlogic
