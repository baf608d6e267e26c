#include "ptlab/formula.hpp"

#include "ptlab/error.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace ptlab {

namespace {

bool same_shape(const TermNode& a, const TermNode& b) {
  return a.kind == b.kind && a.index == b.index && a.args == b.args && a.value == b.value;
}

bool same_shape(const FormulaNode& a, const FormulaNode& b) {
  return a.kind == b.kind && a.index == b.index && a.terms == b.terms && a.subs == b.subs;
}

std::atomic<std::size_t> g_node_count{0};

// Sharded hash-consing table. Each shard owns its nodes (deque keeps addresses stable).
template <class Node>
class Interner {
 public:
  const Node* intern(Node&& cand) {
    Shard& s = shards_[cand.hash % kShards];
    std::lock_guard<std::mutex> lock(s.mu);
    if (auto it = s.index.find(&cand); it != s.index.end()) return *it;
    s.store.push_back(std::move(cand));
    const Node* p = &s.store.back();
    s.index.insert(p);
    g_node_count.fetch_add(1, std::memory_order_relaxed);
    return p;
  }

 private:
  struct Hash {
    std::size_t operator()(const Node* n) const { return static_cast<std::size_t>(n->hash); }
  };
  struct Eq {
    bool operator()(const Node* a, const Node* b) const { return a == b || same_shape(*a, *b); }
  };
  struct Shard {
    std::mutex mu;
    std::deque<Node> store;
    std::unordered_set<const Node*, Hash, Eq> index;
  };
  static constexpr std::size_t kShards = 16;
  std::array<Shard, kShards> shards_;
};

Interner<TermNode>& term_table() {
  static auto* t = new Interner<TermNode>();
  return *t;
}

Interner<FormulaNode>& formula_table() {
  static auto* t = new Interner<FormulaNode>();
  return *t;
}

Term make_term(TermKind kind, std::uint32_t index, BigNat value, std::vector<Term> args) {
  TermNode n;
  n.kind = kind;
  n.index = index;
  std::uint64_t h = mix_hash(0x7465726dULL, static_cast<std::uint64_t>(kind));
  h = mix_hash(h, index);
  if (kind == TermKind::Numeral) h = mix_hash(h, hash_bignat(value));
  if (kind == TermKind::Bound) n.loose = index + 1;
  if (kind == TermKind::Free) n.free_end = index + 1;
  for (Term a : args) {
    h = mix_hash(h, a.hash());
    n.loose = std::max(n.loose, a.loose());
    n.free_end = std::max(n.free_end, a.free_end());
  }
  n.hash = h;
  n.value = std::move(value);
  n.args = std::move(args);
  return Term(term_table().intern(std::move(n)));
}

struct Levels {
  std::uint8_t s, p;
};

Levels levels_of(Formula f) { return {f.sigma_level(), f.pi_level()}; }

bool unclassified(Levels l) { return l.s == kUnclassified || l.p == kUnclassified; }

Levels quantifier_levels(bool universal, Levels body) {
  if (unclassified(body)) return {kUnclassified, kUnclassified};
  if (universal) {
    auto p = std::max<std::uint8_t>(1, body.p);
    return {static_cast<std::uint8_t>(p + 1), p};
  }
  auto s = std::max<std::uint8_t>(1, body.s);
  return {s, static_cast<std::uint8_t>(s + 1)};
}

Levels compute_levels(const FormulaNode& n) {
  constexpr Levels kNone{kUnclassified, kUnclassified};
  switch (n.kind) {
    case FormulaKind::Top:
    case FormulaKind::Bot:
    case FormulaKind::Eq:
    case FormulaKind::Le:
    case FormulaKind::Decidable:
      return {0, 0};
    case FormulaKind::Provability:
    case FormulaKind::Membership:
      return {1, 2};
    case FormulaKind::Sentence:
      return kNone;
    case FormulaKind::Not: {
      Levels l = levels_of(n.subs[0]);
      return {l.p, l.s};
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      Levels a = levels_of(n.subs[0]), b = levels_of(n.subs[1]);
      if (unclassified(a) || unclassified(b)) return kNone;
      return {std::max(a.s, b.s), std::max(a.p, b.p)};
    }
    case FormulaKind::Imp: {
      Levels a = levels_of(n.subs[0]), b = levels_of(n.subs[1]);
      if (unclassified(a) || unclassified(b)) return kNone;
      return {std::max(a.p, b.s), std::max(a.s, b.p)};
    }
    case FormulaKind::Forall:
      return quantifier_levels(true, levels_of(n.subs[0]));
    case FormulaKind::Exists:
      return quantifier_levels(false, levels_of(n.subs[0]));
    case FormulaKind::BForall:
    case FormulaKind::BExists: {
      Levels b = levels_of(n.subs[0]);
      if (b.s == 0 && b.p == 0) return {0, 0};
      return quantifier_levels(n.kind == FormulaKind::BForall, b);
    }
  }
  return kNone;
}

Formula make_formula(FormulaKind kind, std::uint32_t index, std::vector<Term> terms, std::vector<Formula> subs) {
  FormulaNode n;
  n.kind = kind;
  n.index = index;
  std::uint64_t h = mix_hash(0x666f726dULL, static_cast<std::uint64_t>(kind));
  h = mix_hash(h, index);
  for (Term t : terms) {
    h = mix_hash(h, t.hash());
    n.loose = std::max(n.loose, t.loose());
    n.free_end = std::max(n.free_end, t.free_end());
  }
  for (Formula s : subs) h = mix_hash(h, s.hash());
  n.hash = h;
  switch (kind) {
    case FormulaKind::Provability:
      break;  // the template is quoted
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::BForall:
    case FormulaKind::BExists:
      n.loose = std::max(n.loose, subs[0].loose() > 0 ? subs[0].loose() - 1 : 0U);
      n.free_end = std::max(n.free_end, subs[0].free_end());
      n.sent_marker = subs[0].has_sentence_marker();
      break;
    default:
      for (Formula s : subs) {
        n.loose = std::max(n.loose, s.loose());
        n.free_end = std::max(n.free_end, s.free_end());
        n.sent_marker = n.sent_marker || s.has_sentence_marker();
      }
  }
  if (kind == FormulaKind::Sentence) n.sent_marker = true;
  n.terms = std::move(terms);
  n.subs = std::move(subs);
  Levels l = compute_levels(n);
  n.sigma = l.s;
  n.pi = l.p;
  return Formula(formula_table().intern(std::move(n)));
}

void check_arity(std::span<const AtomSpec> table, std::uint32_t id, std::size_t given) {
  if (id >= table.size()) throw Error("unknown atom identifier");
  if (table[id].arity != given)
    throw Error("atom " + std::string(table[id].name) + " expects " + std::to_string(table[id].arity) + " arguments");
}

bool is_power_of_two_numeral(Term t, std::size_t& k) {
  if (t.kind() != TermKind::Numeral || t.value() < 2) return false;
  k = bit_length(t.value()) - 1;
  return t.value() == (BigNat(1) << k);
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

}  // namespace

std::optional<std::uint32_t> lookup_atom(std::span<const AtomSpec> table, std::string_view name) {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].name == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::size_t interned_node_count() { return g_node_count.load(std::memory_order_relaxed); }

Term numeral(const BigNat& n) {
  if (n < 0) throw Error("negative numeral");
  return make_term(TermKind::Numeral, 0, n, {});
}

Term zero() { return numeral(0); }
Term bound_var(std::uint32_t index) { return make_term(TermKind::Bound, index, 0, {}); }
Term free_var(std::uint32_t index) { return make_term(TermKind::Free, index, 0, {}); }

Term succ(Term t) {
  if (t.kind() == TermKind::Numeral && t.value() == 0) return numeral(1);
  return make_term(TermKind::Succ, 0, 0, {t});
}

Term plus(Term a, Term b) {
  std::size_t k = 0;
  if (is_power_of_two_numeral(a, k) && b.kind() == TermKind::Numeral && b.value() > 0 && b.value() < a.value())
    return numeral(a.value() + b.value());
  return make_term(TermKind::Plus, 0, 0, {a, b});
}

Term times(Term a, Term b) { return make_term(TermKind::Times, 0, 0, {a, b}); }

Term exp2(Term t) {
  if (t.kind() == TermKind::Numeral && t.value() >= 1 && t.value() <= kMaxCollapsedExponent)
    return numeral(BigNat(1) << static_cast<unsigned>(t.value()));
  return make_term(TermKind::Exp2, 0, 0, {t});
}

Term func(TermFn fn, std::vector<Term> args) {
  auto id = static_cast<std::uint32_t>(fn);
  check_arity(kTermFunctions, id, args.size());
  return make_term(TermKind::Func, id, 0, std::move(args));
}

Term sub_term(Term code, Term var_index, Term value) { return func(TermFn::Sub, {code, var_index, value}); }

Formula top() { return make_formula(FormulaKind::Top, 0, {}, {}); }
Formula bot() { return make_formula(FormulaKind::Bot, 0, {}, {}); }
Formula eq(Term a, Term b) { return make_formula(FormulaKind::Eq, 0, {a, b}, {}); }
Formula le(Term a, Term b) { return make_formula(FormulaKind::Le, 0, {a, b}, {}); }
Formula neg(Formula f) { return make_formula(FormulaKind::Not, 0, {}, {f}); }
Formula conj(Formula a, Formula b) { return make_formula(FormulaKind::And, 0, {}, {a, b}); }
Formula disj(Formula a, Formula b) { return make_formula(FormulaKind::Or, 0, {}, {a, b}); }
Formula implies(Formula a, Formula b) { return make_formula(FormulaKind::Imp, 0, {}, {a, b}); }
Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }
Formula forall(Formula body) { return make_formula(FormulaKind::Forall, 0, {}, {body}); }
Formula exists(Formula body) { return make_formula(FormulaKind::Exists, 0, {}, {body}); }
Formula bforall(Term bound, Formula body) { return make_formula(FormulaKind::BForall, 0, {bound}, {body}); }
Formula bexists(Term bound, Formula body) { return make_formula(FormulaKind::BExists, 0, {bound}, {body}); }

Formula decidable(DecidableId id, std::vector<Term> args) {
  auto i = static_cast<std::uint32_t>(id);
  check_arity(kDecidableAtoms, i, args.size());
  return make_formula(FormulaKind::Decidable, i, std::move(args), {});
}

Formula provable(Formula templ, std::vector<Term> args) {
  if (templ.loose() != 0) throw Error("provability template has loose bound variables");
  if (templ.free_end() > args.size())
    throw Error("provability template mentions v" + std::to_string(templ.free_end() - 1) + " but has " +
                std::to_string(args.size()) + " holes");
  return make_formula(FormulaKind::Provability, 0, std::move(args), {templ});
}

Formula provable(Formula closed_sentence) {
  if (!closed_sentence.is_sentence()) throw Error("provability atom without holes needs a sentence");
  return provable(closed_sentence, {});
}

Formula membership(EnumeratorId id, std::vector<Term> args) {
  auto i = static_cast<std::uint32_t>(id);
  check_arity(kEnumerators, i, args.size());
  return make_formula(FormulaKind::Membership, i, std::move(args), {});
}

Formula sentence_of(Term code) { return make_formula(FormulaKind::Sentence, 0, {code}, {}); }

Formula conj_all(std::span<const Formula> parts) {
  if (parts.empty()) return top();
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula consistency(Formula chi) { return neg(provable(neg(chi))); }

namespace {

struct MemoKey {
  const void* node;
  std::uint32_t depth;
  bool operator==(const MemoKey&) const = default;
};
struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return std::hash<const void*>{}(k.node) ^ (static_cast<std::size_t>(k.depth) * 0x9e3779b97f4a7c15ULL);
  }
};

Term rebuild(Term t, std::vector<Term> args) {
  switch (t.kind()) {
    case TermKind::Succ:
      return succ(args[0]);
    case TermKind::Plus:
      return plus(args[0], args[1]);
    case TermKind::Times:
      return times(args[0], args[1]);
    case TermKind::Exp2:
      return exp2(args[0]);
    case TermKind::Func:
      return func(static_cast<TermFn>(t.index()), std::move(args));
    default:
      return t;
  }
}

Formula rebuild(Formula f, std::vector<Term> terms, std::vector<Formula> subs) {
  return make_formula(f.kind(), f.index(), std::move(terms), std::move(subs));
}

// Rewrites variable leaves under a binder-depth counter. Leaf(t, depth) maps
// Bound/Free leaves; Touches(loose, free_end, depth) says whether a subtree can change.
template <class Leaf, class Touches>
class Rewriter {
 public:
  Rewriter(Leaf leaf, Touches touches) : leaf_(leaf), touches_(touches) {}

  Term term(Term t, std::uint32_t depth) {
    if (!touches_(t.loose(), t.free_end(), depth)) return t;
    if (t.kind() == TermKind::Bound || t.kind() == TermKind::Free) return leaf_(t, depth);
    MemoKey key{t.node(), depth};
    if (auto it = terms_.find(key); it != terms_.end()) return it->second;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (std::size_t i = 0; i < t.arity(); ++i) args.push_back(term(t.arg(i), depth));
    Term r = rebuild(t, std::move(args));
    terms_.emplace(key, r);
    return r;
  }

  Formula formula(Formula f, std::uint32_t depth) {
    if (!touches_(f.loose(), f.free_end(), depth)) return f;
    MemoKey key{f.node(), depth};
    if (auto it = formulas_.find(key); it != formulas_.end()) return it->second;
    std::vector<Term> terms;
    terms.reserve(f.num_terms());
    for (Term t : f.terms()) terms.push_back(term(t, depth));
    std::vector<Formula> subs;
    subs.reserve(f.num_subs());
    switch (f.kind()) {
      case FormulaKind::Provability:
        subs.push_back(f.templ());
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists:
      case FormulaKind::BForall:
      case FormulaKind::BExists:
        subs.push_back(formula(f.sub(0), depth + 1));
        break;
      default:
        for (std::size_t i = 0; i < f.num_subs(); ++i) subs.push_back(formula(f.sub(i), depth));
    }
    Formula r = rebuild(f, std::move(terms), std::move(subs));
    formulas_.emplace(key, r);
    return r;
  }

 private:
  Leaf leaf_;
  Touches touches_;
  std::unordered_map<MemoKey, Term, MemoKeyHash> terms_;
  std::unordered_map<MemoKey, Formula, MemoKeyHash> formulas_;
};

template <class Leaf, class Touches>
Rewriter<Leaf, Touches> rewriter(Leaf leaf, Touches touches) {
  return Rewriter<Leaf, Touches>(leaf, touches);
}

auto lifter(std::uint32_t by, std::uint32_t cutoff) {
  return rewriter(
      [=](Term t, std::uint32_t depth) {
        if (t.kind() == TermKind::Bound && t.index() >= cutoff + depth) return bound_var(t.index() + by);
        return t;
      },
      [=](std::uint32_t loose, std::uint32_t, std::uint32_t depth) { return loose > cutoff + depth; });
}

auto substituter(std::uint32_t var, Term value) {
  return rewriter(
      [=](Term t, std::uint32_t depth) {
        if (t.kind() == TermKind::Free && t.index() == var) return depth == 0 ? value : lift(value, depth);
        return t;
      },
      [=](std::uint32_t, std::uint32_t free_end, std::uint32_t) { return free_end > var; });
}

}  // namespace

Term lift(Term t, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || t.loose() <= cutoff) return t;
  return lifter(by, cutoff).term(t, 0);
}

Formula lift(Formula f, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || f.loose() <= cutoff) return f;
  return lifter(by, cutoff).formula(f, 0);
}

Term substitute(Term t, std::uint32_t var, Term value) { return substituter(var, value).term(t, 0); }

Formula substitute(Formula f, std::uint32_t var, Term value) { return substituter(var, value).formula(f, 0); }

Formula abstract_free(Formula f, std::uint32_t var) {
  auto rw = rewriter(
      [=](Term t, std::uint32_t depth) {
        if (t.kind() == TermKind::Free && t.index() == var) return bound_var(depth);
        if (t.kind() == TermKind::Bound && t.index() >= depth) return bound_var(t.index() + 1);
        return t;
      },
      [=](std::uint32_t loose, std::uint32_t free_end, std::uint32_t depth) {
        return free_end > var || loose > depth;
      });
  return rw.formula(f, 0);
}

Formula open_binder(Formula body, Term t) {
  auto rw = rewriter(
      [=](Term leaf, std::uint32_t depth) {
        if (leaf.kind() != TermKind::Bound || leaf.index() < depth) return leaf;
        if (leaf.index() == depth) return lift(t, depth);
        return bound_var(leaf.index() - 1);
      },
      [=](std::uint32_t loose, std::uint32_t, std::uint32_t depth) { return loose > depth; });
  return rw.formula(body, 0);
}

Formula forall_over(std::uint32_t var, Formula body) { return forall(abstract_free(body, var)); }
Formula exists_over(std::uint32_t var, Formula body) { return exists(abstract_free(body, var)); }

std::uint64_t numeral_size(const BigNat& n) {
  if (n == 0) return 1;
  if (n == 1) return 2;
  // n = e2(k1) + (e2(k2) + (... + last)); last is s(z) for bit 0, e2(k) otherwise.
  std::uint64_t total = 0;
  std::size_t len = bit_length(n);
  std::size_t lowest = static_cast<std::size_t>(boost::multiprecision::lsb(n));
  for (std::size_t i = len; i-- > lowest;) {
    if (!bit_at(n, i)) continue;
    if (i == lowest) {
      total = sat_add(total, i == 0 ? 2 : 1 + numeral_size(i));
    } else {
      total = sat_add(total, 2 + numeral_size(i));
    }
  }
  return total;
}

std::uint64_t term_size(Term t) {
  if (t.kind() == TermKind::Numeral) return numeral_size(t.value());
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < t.arity(); ++i) s = sat_add(s, term_size(t.arg(i)));
  return s;
}

std::uint64_t tree_size(Formula f) {
  std::unordered_map<const FormulaNode*, std::uint64_t> memo;
  std::unordered_map<const TermNode*, std::uint64_t> tmemo;
  auto tsize = [&](auto&& self, Term t) -> std::uint64_t {
    if (auto it = tmemo.find(t.node()); it != tmemo.end()) return it->second;
    std::uint64_t s = 1;
    if (t.kind() == TermKind::Numeral) {
      s = numeral_size(t.value());
    } else {
      for (std::size_t i = 0; i < t.arity(); ++i) s = sat_add(s, self(self, t.arg(i)));
    }
    tmemo.emplace(t.node(), s);
    return s;
  };
  auto fsize = [&](auto&& self, Formula g) -> std::uint64_t {
    if (auto it = memo.find(g.node()); it != memo.end()) return it->second;
    std::uint64_t s = 1;
    for (Term t : g.terms()) s = sat_add(s, tsize(tsize, t));
    for (std::size_t i = 0; i < g.num_subs(); ++i) s = sat_add(s, self(self, g.sub(i)));
    memo.emplace(g.node(), s);
    return s;
  };
  return fsize(fsize, f);
}

std::size_t dag_size(Formula f) {
  std::unordered_set<const void*> seen;
  std::vector<Term> tstack;
  std::vector<Formula> fstack{f};
  while (!fstack.empty()) {
    Formula g = fstack.back();
    fstack.pop_back();
    if (!seen.insert(g.node()).second) continue;
    for (Term t : g.terms()) tstack.push_back(t);
    for (std::size_t i = 0; i < g.num_subs(); ++i) fstack.push_back(g.sub(i));
  }
  while (!tstack.empty()) {
    Term t = tstack.back();
    tstack.pop_back();
    if (!seen.insert(t.node()).second) continue;
    for (std::size_t i = 0; i < t.arity(); ++i) tstack.push_back(t.arg(i));
  }
  return seen.size();
}

void collect_subformulas(Formula f, std::vector<Formula>& out) {
  std::unordered_set<const FormulaNode*> seen;
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      out.push_back(g);
      continue;
    }
    if (!seen.insert(g.node()).second) continue;
    stack.emplace_back(g, true);
    for (std::size_t i = g.num_subs(); i-- > 0;)
      if (!seen.count(g.sub(i).node())) stack.emplace_back(g.sub(i), false);
  }
}

}  // namespace ptlab
