#include "teamlogic/so.hpp"

#include <algorithm>
#include <unordered_map>

#include "teamlogic/error.hpp"

namespace teamlogic {

// ---------------------------------------------------------------------------
// Normal forms

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case Kind::Implies:
      return Formula::disj(Formula::neg(desugar(f.lhs())), desugar(f.rhs()));
    case Kind::Iff: {
      Formula a = desugar(f.lhs()), b = desugar(f.rhs());
      return Formula::conj(Formula::disj(Formula::neg(a), b), Formula::disj(Formula::neg(b), a));
    }
    case Kind::Not: return Formula::neg(desugar(f.body()));
    case Kind::And: return Formula::conj(desugar(f.lhs()), desugar(f.rhs()));
    case Kind::Or: return Formula::disj(desugar(f.lhs()), desugar(f.rhs()));
    case Kind::Exists: return Formula::exists(f.name(), desugar(f.body()));
    case Kind::Forall: return Formula::forall(f.name(), desugar(f.body()));
    case Kind::SoExists: return Formula::so_exists(f.binder(), desugar(f.body()));
    case Kind::SoForall: return Formula::so_forall(f.binder(), desugar(f.body()));
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Atom:
    case Kind::Equal:
      return f;
    default:
      throw FragmentError("not a second-order formula");
  }
}

namespace {

Formula nnf(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Kind::Top: return positive ? f : Formula::bottom();
    case Kind::Bottom: return positive ? f : Formula::top();
    case Kind::Atom:
    case Kind::Equal:
      return positive ? f : Formula::neg(f);
    case Kind::Not: return nnf(f.body(), !positive);
    case Kind::And:
    case Kind::Or: {
      Formula a = nnf(f.lhs(), positive), b = nnf(f.rhs(), positive);
      bool conj = (f.kind() == Kind::And) == positive;
      return conj ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case Kind::Implies:
      return nnf(Formula::disj(Formula::neg(f.lhs()), f.rhs()), positive);
    case Kind::Iff:
      return nnf(desugar(f), positive);
    case Kind::Exists:
    case Kind::Forall: {
      bool ex = (f.kind() == Kind::Exists) == positive;
      Formula body = nnf(f.body(), positive);
      return ex ? Formula::exists(f.name(), body) : Formula::forall(f.name(), body);
    }
    case Kind::SoExists:
    case Kind::SoForall: {
      bool ex = (f.kind() == Kind::SoExists) == positive;
      Formula body = nnf(f.body(), positive);
      return ex ? Formula::so_exists(f.binder(), body) : Formula::so_forall(f.binder(), body);
    }
    default:
      throw FragmentError("not a second-order formula");
  }
}

}  // namespace

Formula to_nnf(const Formula& alpha) { return nnf(alpha, true); }

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not: return f.body().kind() == Kind::Atom || f.body().kind() == Kind::Equal;
    case Kind::Implies:
    case Kind::Iff:
      return false;
    default:
      for (std::size_t i = 0; i < f.child_count(); ++i) {
        if (!is_nnf(f.child(i))) return false;
      }
      return true;
  }
}

// ---------------------------------------------------------------------------
// Evaluator

namespace {

enum Truth : int { kFalse = 0, kUnknown = 1, kTrue = 2 };

struct CTerm {
  int var = -1;  // element slot, or
  int fun = -1;  // function slot applied to args
  std::vector<CTerm> args;
};

struct CNode {
  Kind kind = Kind::Top;
  bool negated = false;
  int lhs = -1;
  int rhs = -1;
  int rel = -1;
  std::vector<CTerm> terms;
  int var = -1;
  int slot = -1;
  SoSort sort = SoSort::Relation;
  std::size_t arity = 0;
  bool sparse = false;
  std::uint64_t bound = 0;
  bool vacuous = false;
  bool has_so = false;
  bool has_function_binder = false;
  std::vector<int> free_vars;
  std::vector<int> free_rels;  // quantified relation slots
  std::vector<int> free_funs;  // quantified function slots
};

struct RelSlot {
  const Relation* fixed = nullptr;
  Relation value;
  Relation known;
  bool partial = false;
};

struct FunSlot {
  const FunctionTable* fixed = nullptr;
  FunctionTable value;
};

void merge_into(std::vector<int>& into, const std::vector<int>& from) {
  std::vector<int> out;
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

void remove_from(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

bool contains(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = v.size();
    for (std::uint64_t x : v) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

class SoEvaluator {
 public:
  SoEvaluator(const Structure& a, const SOAssignment& j, const SoOptions& options)
      : a_(a), j_(j), options_(options), n_(a.domain_size()) {}

  bool run(const Formula& alpha) {
    root_ = compile(alpha);
    return exact(root_);
  }

  SoStats stats;

 private:
  template <class Slot>
  struct Scope {
    std::vector<std::pair<std::string, int>> entries;
    int find(const std::string& name) const {
      for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (it->first == name) return it->second;
      }
      return -1;
    }
  };

  // -- compilation ------------------------------------------------------------

  int free_var_slot(const std::string& name) {
    if (int s = free_var_scope_.find(name); s >= 0) return s;
    auto it = j_.elements.find(name);
    if (it == j_.elements.end()) throw UnboundVariableError("variable '" + name + "' is not assigned");
    if (it->second >= n_) throw InvariantError("value of '" + name + "' is outside the domain");
    int s = static_cast<int>(env_.size());
    env_.push_back(it->second);
    free_var_scope_.entries.push_back({name, s});
    return s;
  }

  int rel_slot(const std::string& name, std::size_t arity) {
    int s = rel_scope_.find(name);
    if (s < 0) s = free_rel_scope_.find(name);
    if (s < 0) {
      const Relation* r = nullptr;
      if (auto it = j_.relations.find(name); it != j_.relations.end()) {
        r = &it->second;
      } else {
        r = a_.find_relation(name);
      }
      if (!r) throw UnknownSymbolError("relation '" + name + "' is not interpreted");
      if (r->domain_size() != n_) throw InvariantError("relation '" + name + "' has the wrong domain");
      s = static_cast<int>(rels_.size());
      rels_.push_back(RelSlot{r, {}, {}, false});
      free_rel_scope_.entries.push_back({name, s});
    }
    const RelSlot& slot = rels_[static_cast<std::size_t>(s)];
    std::size_t actual = slot.fixed ? slot.fixed->arity() : slot.value.arity();
    if (actual != arity) throw ArityError("relation '" + name + "' used with the wrong arity");
    return s;
  }

  int fun_slot(const std::string& name, std::size_t arity) {
    int s = fun_scope_.find(name);
    if (s < 0) s = free_fun_scope_.find(name);
    if (s < 0) {
      const FunctionTable* f = nullptr;
      if (auto it = j_.functions.find(name); it != j_.functions.end()) {
        f = &it->second;
      } else {
        f = a_.find_function(name);
      }
      if (!f) throw UnknownSymbolError("function '" + name + "' is not interpreted");
      s = static_cast<int>(funs_.size());
      funs_.push_back(FunSlot{f, {}});
      free_fun_scope_.entries.push_back({name, s});
    }
    const FunSlot& slot = funs_[static_cast<std::size_t>(s)];
    std::size_t actual = slot.fixed ? slot.fixed->arity() : slot.value.arity();
    if (actual != arity) throw ArityError("function '" + name + "' used with the wrong arity");
    return s;
  }

  CTerm compile_term(const Term& t, CNode& node) {
    CTerm out;
    if (t.is_variable()) {
      out.var = var_scope_.find(t.name());
      if (out.var < 0) out.var = free_var_slot(t.name());
      node.free_vars.push_back(out.var);
      return out;
    }
    out.fun = fun_slot(t.name(), t.args().size());
    if (!funs_[static_cast<std::size_t>(out.fun)].fixed) node.free_funs.push_back(out.fun);
    for (const Term& a : t.args()) out.args.push_back(compile_term(a, node));
    return out;
  }

  static void normalize(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  int compile(const Formula& f) {
    CNode node;
    node.kind = f.kind();
    const Formula* g = &f;
    if (f.kind() == Kind::Not) {
      g = &f.body();
      node.kind = g->kind();
      node.negated = true;
      if (node.kind != Kind::Atom && node.kind != Kind::Equal) {
        throw FragmentError("formula is not in negation normal form");
      }
    }
    switch (node.kind) {
      case Kind::Top:
      case Kind::Bottom:
        break;
      case Kind::Atom: {
        node.rel = rel_slot(g->name(), g->terms().size());
        if (!rels_[static_cast<std::size_t>(node.rel)].fixed) node.free_rels.push_back(node.rel);
        for (const Term& t : g->terms()) node.terms.push_back(compile_term(t, node));
        break;
      }
      case Kind::Equal:
        for (const Term& t : g->terms()) node.terms.push_back(compile_term(t, node));
        break;
      case Kind::And:
      case Kind::Or: {
        node.lhs = compile(g->lhs());
        node.rhs = compile(g->rhs());
        for (int c : {node.lhs, node.rhs}) absorb(node, c);
        break;
      }
      case Kind::Exists:
      case Kind::Forall: {
        node.var = static_cast<int>(env_.size());
        env_.push_back(0);
        var_scope_.entries.push_back({g->name(), node.var});
        node.lhs = compile(g->body());
        var_scope_.entries.pop_back();
        absorb(node, node.lhs);
        node.vacuous = !contains(node.free_vars, node.var);
        remove_from(node.free_vars, node.var);
        break;
      }
      case Kind::SoExists:
      case Kind::SoForall: {
        const SoBinder& b = g->binder();
        node.sort = b.sort;
        node.arity = b.arity;
        if (b.bound) {
          node.sparse = true;
          node.bound = (*b.bound)(n_);
        }
        std::size_t universe = checked_power(n_, b.arity);
        if (b.sort == SoSort::Relation) {
          node.slot = static_cast<int>(rels_.size());
          RelSlot slot;
          slot.value = Relation(b.arity, n_);
          slot.known = Relation(b.arity, n_);
          rels_.push_back(std::move(slot));
          rel_scope_.entries.push_back({b.name, node.slot});
          node.lhs = compile(g->body());
          rel_scope_.entries.pop_back();
          absorb(node, node.lhs);
          node.vacuous = !contains(node.free_rels, node.slot);
          remove_from(node.free_rels, node.slot);
        } else {
          node.slot = static_cast<int>(funs_.size());
          funs_.push_back(FunSlot{nullptr, FunctionTable(b.arity, n_)});
          fun_scope_.entries.push_back({b.name, node.slot});
          node.lhs = compile(g->body());
          fun_scope_.entries.pop_back();
          absorb(node, node.lhs);
          node.vacuous = !contains(node.free_funs, node.slot);
          remove_from(node.free_funs, node.slot);
          node.has_function_binder = true;
        }
        node.has_so = true;
        if (!node.vacuous && universe > options_.max_universe) {
          throw ResourceExhausted("quantified " + b.name + " ranges over " +
                                  std::to_string(universe) + " tuples, above the limit");
        }
        break;
      }
      default:
        throw FragmentError("not a second-order formula");
    }
    normalize(node.free_vars);
    normalize(node.free_rels);
    normalize(node.free_funs);
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
  }

  void absorb(CNode& node, int child) {
    const CNode& c = nodes_[static_cast<std::size_t>(child)];
    merge_into(node.free_vars, c.free_vars);
    merge_into(node.free_rels, c.free_rels);
    merge_into(node.free_funs, c.free_funs);
    node.has_so = node.has_so || c.has_so;
    node.has_function_binder = node.has_function_binder || c.has_function_binder;
  }

  // -- evaluation -------------------------------------------------------------

  void tick() {
    ++stats.nodes;
    if (options_.max_nodes && stats.nodes > options_.max_nodes) {
      throw ResourceExhausted("second-order evaluation budget exhausted");
    }
  }

  const Relation& relation(int s) const {
    const RelSlot& slot = rels_[static_cast<std::size_t>(s)];
    return slot.fixed ? *slot.fixed : slot.value;
  }

  Element term(const CTerm& t) const {
    if (t.var >= 0) return env_[static_cast<std::size_t>(t.var)];
    const FunSlot& slot = funs_[static_cast<std::size_t>(t.fun)];
    const FunctionTable& f = slot.fixed ? *slot.fixed : slot.value;
    std::size_t code = 0;
    for (const CTerm& a : t.args) code = code * n_ + term(a);
    return f.at(code);
  }

  std::size_t tuple_code(const CNode& node) const {
    std::size_t code = 0;
    for (const CTerm& t : node.terms) code = code * n_ + term(t);
    return code;
  }

  bool literal(const CNode& node) const {
    bool v;
    if (node.kind == Kind::Atom) {
      v = relation(node.rel).test(tuple_code(node));
    } else {
      v = term(node.terms[0]) == term(node.terms[1]);
    }
    return v != node.negated;
  }

  void enter_mode(int mode, int& saved_mode, std::uint64_t& saved_switches) {
    saved_mode = mode_;
    saved_switches = switches_;
    if (mode_ != mode) {
      ++switches_;
      stats.alternations = std::max(stats.alternations, switches_);
    }
    mode_ = mode;
  }

  void leave_mode(int saved_mode, std::uint64_t saved_switches) {
    mode_ = saved_mode;
    switches_ = saved_switches;
  }

  std::vector<std::uint64_t> memo_key(int index, const CNode& node) const {
    std::vector<std::uint64_t> key;
    key.push_back(static_cast<std::uint64_t>(index));
    for (int v : node.free_vars) key.push_back(env_[static_cast<std::size_t>(v)]);
    for (int r : node.free_rels) {
      const auto& words = relation(r).words();
      key.insert(key.end(), words.begin(), words.end());
    }
    for (int f : node.free_funs) {
      const FunctionTable& t = funs_[static_cast<std::size_t>(f)].value;
      for (std::size_t c = 0; c < t.universe_size(); ++c) key.push_back(t.at(c));
    }
    return key;
  }

  bool exact(int index) {
    const CNode& node = nodes_[static_cast<std::size_t>(index)];
    if (options_.memoize && node.has_so) {
      std::vector<std::uint64_t> key = memo_key(index, node);
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++stats.memo_hits;
        return it->second;
      }
      bool r = exact_uncached(index);
      memo_.emplace(std::move(key), r);
      return r;
    }
    return exact_uncached(index);
  }

  bool exact_uncached(int index) {
    tick();
    const CNode& node = nodes_[static_cast<std::size_t>(index)];
    switch (node.kind) {
      case Kind::Top: return !node.negated;
      case Kind::Bottom: return node.negated;
      case Kind::Atom:
      case Kind::Equal:
        return literal(node);
      case Kind::And: return exact(node.lhs) && exact(node.rhs);
      case Kind::Or: return exact(node.lhs) || exact(node.rhs);
      case Kind::Exists:
      case Kind::Forall: {
        if (node.vacuous) return exact(node.lhs);
        bool want = node.kind == Kind::Exists;
        int saved_mode;
        std::uint64_t saved_switches;
        enter_mode(want ? 1 : 2, saved_mode, saved_switches);
        Element& slot = env_[static_cast<std::size_t>(node.var)];
        Element old = slot;
        bool result = !want;
        for (std::size_t a = 0; a < n_; ++a) {
          slot = static_cast<Element>(a);
          if (exact(node.lhs) == want) {
            result = want;
            break;
          }
        }
        slot = old;
        leave_mode(saved_mode, saved_switches);
        return result;
      }
      case Kind::SoExists:
      case Kind::SoForall: {
        // The empty relation is always admissible, and some function exists.
        if (node.vacuous) return exact(node.lhs);
        bool want = node.kind == Kind::SoExists;
        int saved_mode;
        std::uint64_t saved_switches;
        enter_mode(want ? 1 : 2, saved_mode, saved_switches);
        bool result;
        if (node.sort == SoSort::Function) {
          result = enumerate_functions(node, want);
        } else if (options_.mode == SoMode::Exhaustive) {
          result = node.sparse ? enumerate_sparse(node, want) : enumerate_relations(node, want);
        } else {
          result = search(node, want);
        }
        leave_mode(saved_mode, saved_switches);
        return result;
      }
      default:
        throw FragmentError("unexpected node");
    }
  }

  bool enumerate_functions(const CNode& node, bool want) {
    FunctionTable& f = funs_[static_cast<std::size_t>(node.slot)].value;
    FunctionTable saved = f;
    std::size_t universe = f.universe_size();
    for (std::size_t c = 0; c < universe; ++c) f.set_code(c, 0);
    bool result = !want;
    while (true) {
      ++stats.candidates;
      if (exact(node.lhs) == want) {
        result = want;
        break;
      }
      std::size_t i = universe;
      bool done = true;
      while (i > 0) {
        --i;
        if (f.at(i) + 1 < n_) {
          f.set_code(i, f.at(i) + 1);
          done = false;
          break;
        }
        f.set_code(i, 0);
      }
      if (done) break;
    }
    f = saved;
    return result;
  }

  bool enumerate_relations(const CNode& node, bool want) {
    Relation& r = rels_[static_cast<std::size_t>(node.slot)].value;
    Relation saved = r;
    std::size_t universe = r.universe_size();
    if (universe > 62) throw ResourceExhausted("too many candidate relations");
    std::uint64_t count = std::uint64_t{1} << universe;
    bool result = !want;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      for (std::size_t c = 0; c < universe; ++c) r.set(c, (bits >> c) & 1U);
      ++stats.candidates;
      if (exact(node.lhs) == want) {
        result = want;
        break;
      }
    }
    r = saved;
    return result;
  }

  bool enumerate_sparse(const CNode& node, bool want) {
    Relation& r = rels_[static_cast<std::size_t>(node.slot)].value;
    Relation saved = r;
    std::size_t universe = r.universe_size();
    std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(node.bound, universe));
    bool result = !want;
    for (std::size_t size = 0; size <= top && result != want; ++size) {
      std::vector<std::size_t> pick(size);
      for (std::size_t i = 0; i < size; ++i) pick[i] = i;
      while (true) {
        for (std::size_t c = 0; c < universe; ++c) r.set(c, false);
        for (std::size_t c : pick) r.set(c, true);
        ++stats.candidates;
        if (exact(node.lhs) == want) {
          result = want;
          break;
        }
        // Next combination in lexicographic order.
        std::size_t i = size;
        bool advanced = false;
        while (i > 0) {
          --i;
          if (pick[i] < universe - size + i) {
            ++pick[i];
            for (std::size_t k = i + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
            advanced = true;
            break;
          }
        }
        if (!advanced) break;
      }
    }
    r = saved;
    return result;
  }

  // Tuple-by-tuple search, trying "absent" before "present".
  bool search(const CNode& node, bool want) {
    RelSlot& slot = rels_[static_cast<std::size_t>(node.slot)];
    RelSlot saved = slot;
    slot.value = Relation(node.arity, n_);
    slot.known = Relation(node.arity, n_);
    slot.partial = true;
    std::size_t count = 0;
    bool result = branch(node, slot, 0, count, want);
    slot = std::move(saved);
    return result;
  }

  bool branch(const CNode& node, RelSlot& slot, std::size_t i, std::size_t& count, bool want) {
    int k = kleene(node.lhs);
    if (k != kUnknown) {
      if (i == slot.value.universe_size()) ++stats.candidates;
      return k == kTrue;
    }
    if (i == slot.value.universe_size()) {
      ++stats.candidates;
      slot.partial = false;
      bool r = exact(node.lhs);
      slot.partial = true;
      return r;
    }
    slot.known.set(i, true);
    bool r0 = branch(node, slot, i + 1, count, want);
    bool result = r0;
    if (r0 != want && (!node.sparse || count < node.bound)) {
      slot.value.set(i, true);
      ++count;
      result = branch(node, slot, i + 1, count, want);
      --count;
      slot.value.set(i, false);
    }
    slot.known.set(i, false);
    return result;
  }

  bool any_partial(const CNode& node) const {
    for (int r : node.free_rels) {
      if (rels_[static_cast<std::size_t>(r)].partial) return true;
    }
    return false;
  }

  int kleene(int index) {
    const CNode& node = nodes_[static_cast<std::size_t>(index)];
    if (!any_partial(node)) return exact(index) ? kTrue : kFalse;
    tick();
    switch (node.kind) {
      case Kind::Top: return node.negated ? kFalse : kTrue;
      case Kind::Bottom: return node.negated ? kTrue : kFalse;
      case Kind::Atom: {
        const RelSlot& slot = rels_[static_cast<std::size_t>(node.rel)];
        std::size_t code = tuple_code(node);
        if (slot.partial && !slot.known.test(code)) return kUnknown;
        return literal(node) ? kTrue : kFalse;
      }
      case Kind::Equal: return literal(node) ? kTrue : kFalse;
      case Kind::And: {
        int a = kleene(node.lhs);
        if (a == kFalse) return kFalse;
        return std::min(a, kleene(node.rhs));
      }
      case Kind::Or: {
        int a = kleene(node.lhs);
        if (a == kTrue) return kTrue;
        return std::max(a, kleene(node.rhs));
      }
      case Kind::Exists:
      case Kind::Forall: {
        if (node.vacuous) return kleene(node.lhs);
        bool ex = node.kind == Kind::Exists;
        Element& slot = env_[static_cast<std::size_t>(node.var)];
        Element old = slot;
        int result = ex ? kFalse : kTrue;
        for (std::size_t a = 0; a < n_; ++a) {
          slot = static_cast<Element>(a);
          int k = kleene(node.lhs);
          result = ex ? std::max(result, k) : std::min(result, k);
          if (result == (ex ? kTrue : kFalse)) break;
        }
        slot = old;
        return result;
      }
      case Kind::SoExists:
      case Kind::SoForall: {
        if (node.vacuous) return kleene(node.lhs);
        if (node.sort == SoSort::Function) return kUnknown;
        // Every value of the bound relation is still possible.
        RelSlot& slot = rels_[static_cast<std::size_t>(node.slot)];
        RelSlot saved = slot;
        slot.value = Relation(node.arity, n_);
        slot.known = Relation(node.arity, n_);
        slot.partial = true;
        int k = kleene(node.lhs);
        slot = std::move(saved);
        return k;
      }
      default:
        throw FragmentError("unexpected node");
    }
  }

  const Structure& a_;
  const SOAssignment& j_;
  SoOptions options_;
  std::size_t n_;

  std::vector<CNode> nodes_;
  int root_ = -1;
  std::vector<Element> env_;
  std::vector<RelSlot> rels_;
  std::vector<FunSlot> funs_;
  Scope<Element> var_scope_, free_var_scope_;
  Scope<RelSlot> rel_scope_, free_rel_scope_;
  Scope<FunSlot> fun_scope_, free_fun_scope_;
  std::unordered_map<std::vector<std::uint64_t>, bool, VecHash> memo_;
  int mode_ = 0;
  std::uint64_t switches_ = 0;
};

}  // namespace

SoResult eval_so(const Structure& structure, const SOAssignment& j, const Formula& alpha,
                 const SoOptions& options) {
  for (const auto& [name, r] : j.relations) {
    if (r.domain_size() != structure.domain_size()) {
      throw InvariantError("relation '" + name + "' is over a different domain");
    }
  }
  Formula normal = to_nnf(alpha);
  SoEvaluator evaluator(structure, j, options);
  SoResult result;
  try {
    result.verdict = evaluator.run(normal) ? Verdict::True : Verdict::False;
  } catch (const ResourceExhausted&) {
    result.verdict = Verdict::ResourceExhausted;
  }
  result.stats = evaluator.stats;
  return result;
}

bool so_holds(const Structure& structure, const SOAssignment& j, const Formula& alpha,
              const SoOptions& options) {
  SoResult r = eval_so(structure, j, alpha, options);
  if (r.verdict == Verdict::ResourceExhausted) {
    throw ResourceExhausted("second-order evaluation budget exhausted");
  }
  return r.verdict == Verdict::True;
}

}  // namespace teamlogic
