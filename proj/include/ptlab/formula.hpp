#pragma once

// Hash-consed first-order arithmetic syntax over {0, S, +, *, 2^x, =, <=}
// plus designated atoms. Bound variables are de Bruijn indices, so alpha-
// equivalent formulas are the same node. Free variables are numbered v0, v1, ...
//
// Nodes are immutable and never freed; Term and Formula are pointer-sized
// handles whose equality is node identity.

#include "ptlab/bignat.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ptlab {

enum class TermKind : std::uint8_t { Numeral, Bound, Free, Succ, Plus, Times, Exp2, Func };

// Encoding tags follow declaration order.
enum class FormulaKind : std::uint8_t {
  Top,
  Bot,
  Eq,
  Le,
  Not,
  And,
  Or,
  Imp,
  Forall,
  Exists,
  BForall,  // (ball x t f): for all x < t
  BExists,  // (bex x t f): exists x < t
  Decidable,
  Provability,
  Membership,
  Sentence,  // (sent t): the sentence coded by t; meaningful inside provability templates
};

struct AtomSpec {
  std::string_view name;
  unsigned arity;
};

enum class DecidableId : std::uint32_t { OrdD, OrdLt, OrdZero, OrdSucc, OrdLimit };
enum class EnumeratorId : std::uint32_t { ASet };
enum class TermFn : std::uint32_t { Sub };

inline constexpr std::array<AtomSpec, 5> kDecidableAtoms{{
    {"ord-d", 1},
    {"ord-lt", 2},
    {"ord-zero", 1},
    {"ord-succ", 2},
    {"ord-limit", 1},
}};
inline constexpr std::array<AtomSpec, 1> kEnumerators{{{"aset", 2}}};
// sub(c, i, m): code of the formula coded by c with free variable v_i replaced by the numeral m.
inline constexpr std::array<AtomSpec, 1> kTermFunctions{{{"sub", 3}}};

std::optional<std::uint32_t> lookup_atom(std::span<const AtomSpec> table, std::string_view name);

struct TermNode;
struct FormulaNode;

class Term {
 public:
  Term() = default;
  explicit Term(const TermNode* n) : n_(n) {}

  const TermNode* node() const { return n_; }
  explicit operator bool() const { return n_ != nullptr; }
  bool operator==(const Term& o) const { return n_ == o.n_; }

  TermKind kind() const;
  std::uint32_t index() const;
  const BigNat& value() const;
  std::size_t arity() const;
  Term arg(std::size_t i) const;
  std::uint64_t hash() const;
  bool closed() const;  // no free and no loose bound variables
  std::uint32_t loose() const;
  std::uint32_t free_end() const;

 private:
  const TermNode* n_ = nullptr;
};

class Formula {
 public:
  Formula() = default;
  explicit Formula(const FormulaNode* n) : n_(n) {}

  const FormulaNode* node() const { return n_; }
  explicit operator bool() const { return n_ != nullptr; }
  bool operator==(const Formula& o) const { return n_ == o.n_; }

  FormulaKind kind() const;
  std::uint32_t index() const;
  std::size_t num_subs() const;
  Formula sub(std::size_t i) const;
  std::size_t num_terms() const;
  Term term(std::size_t i) const;
  std::span<const Term> terms() const;
  std::uint64_t hash() const;

  // Provability atoms: the quoted template and its hole arguments.
  Formula templ() const { return sub(0); }
  std::size_t holes() const { return num_terms(); }

  // Closed and free of (sent ...) outside provability templates.
  bool is_sentence() const;
  std::uint32_t loose() const;
  std::uint32_t free_end() const;
  bool has_sentence_marker() const;

  // Least n with membership in Sigma_n / Pi_n (kUnclassified when (sent ...) occurs unquoted).
  std::uint8_t sigma_level() const;
  std::uint8_t pi_level() const;

 private:
  const FormulaNode* n_ = nullptr;
};

inline constexpr std::uint8_t kUnclassified = 0xff;

struct TermNode {
  TermKind kind{};
  std::uint32_t index = 0;
  BigNat value;
  std::vector<Term> args;
  std::uint64_t hash = 0;
  std::uint32_t loose = 0;
  std::uint32_t free_end = 0;
};

struct FormulaNode {
  FormulaKind kind{};
  std::uint32_t index = 0;
  std::vector<Term> terms;
  std::vector<Formula> subs;
  std::uint64_t hash = 0;
  std::uint32_t loose = 0;
  std::uint32_t free_end = 0;
  bool sent_marker = false;
  std::uint8_t sigma = 0;
  std::uint8_t pi = 0;
};

// Exponents above this are kept as explicit (e2 ...) nodes instead of numeral leaves.
inline constexpr std::uint64_t kMaxCollapsedExponent = 1U << 20;

// Terms. numeral(n) is the canonical binary expansion of n:
//   0 = z, 1 = s(z), n >= 2 = e2(num k) [+ num r] with k = msb(n), r = n - 2^k.
// Any term with exactly that shape is represented by the same numeral leaf.
Term numeral(const BigNat& n);
Term zero();
Term bound_var(std::uint32_t index);
Term free_var(std::uint32_t index);
Term succ(Term t);
Term plus(Term a, Term b);
Term times(Term a, Term b);
Term exp2(Term t);
Term func(TermFn fn, std::vector<Term> args);
Term sub_term(Term code, Term var_index, Term value);

// Formulas.
Formula top();
Formula bot();
Formula eq(Term a, Term b);
Formula le(Term a, Term b);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula forall(Formula body);
Formula exists(Formula body);
Formula bforall(Term bound, Formula body);
Formula bexists(Term bound, Formula body);
Formula decidable(DecidableId id, std::vector<Term> args);
Formula provable(Formula templ, std::vector<Term> args);
Formula provable(Formula closed_sentence);
Formula membership(EnumeratorId id, std::vector<Term> args);
Formula sentence_of(Term code);

// Left-nested conjunction; empty list is top.
Formula conj_all(std::span<const Formula> parts);

// Con_T(chi) as the negated provability atom not Pr(not chi).
Formula consistency(Formula chi);

// Syntax operations. Substitution never enters provability templates.
Term lift(Term t, std::uint32_t by, std::uint32_t cutoff = 0);
Formula lift(Formula f, std::uint32_t by, std::uint32_t cutoff = 0);
Term substitute(Term t, std::uint32_t var, Term value);
Formula substitute(Formula f, std::uint32_t var, Term value);
// Turns free variable v_var into the binder's bound index 0 (for wrapping in a quantifier).
Formula abstract_free(Formula f, std::uint32_t var);
// Replaces bound index 0 of a quantifier body by t and lowers the other loose indices.
Formula open_binder(Formula body, Term t);
Formula forall_over(std::uint32_t var, Formula body);
Formula exists_over(std::uint32_t var, Formula body);

// Numerals expanded to their binary-expansion terms.
std::uint64_t term_size(Term t);
std::uint64_t tree_size(Formula f);  // saturates at UINT64_MAX
std::size_t dag_size(Formula f);     // distinct formula and term nodes
std::uint64_t numeral_size(const BigNat& n);

// Process-wide count of interned nodes (formulas + terms).
std::size_t interned_node_count();

void collect_subformulas(Formula f, std::vector<Formula>& out);  // each node once, children first

inline TermKind Term::kind() const { return n_->kind; }
inline std::uint32_t Term::index() const { return n_->index; }
inline const BigNat& Term::value() const { return n_->value; }
inline std::size_t Term::arity() const { return n_->args.size(); }
inline Term Term::arg(std::size_t i) const { return n_->args[i]; }
inline std::uint64_t Term::hash() const { return n_->hash; }
inline bool Term::closed() const { return n_->loose == 0 && n_->free_end == 0; }
inline std::uint32_t Term::loose() const { return n_->loose; }
inline std::uint32_t Term::free_end() const { return n_->free_end; }

inline FormulaKind Formula::kind() const { return n_->kind; }
inline std::uint32_t Formula::index() const { return n_->index; }
inline std::size_t Formula::num_subs() const { return n_->subs.size(); }
inline Formula Formula::sub(std::size_t i) const { return n_->subs[i]; }
inline std::size_t Formula::num_terms() const { return n_->terms.size(); }
inline Term Formula::term(std::size_t i) const { return n_->terms[i]; }
inline std::span<const Term> Formula::terms() const { return n_->terms; }
inline std::uint64_t Formula::hash() const { return n_->hash; }
inline bool Formula::is_sentence() const { return n_->loose == 0 && n_->free_end == 0 && !n_->sent_marker; }
inline std::uint32_t Formula::loose() const { return n_->loose; }
inline std::uint32_t Formula::free_end() const { return n_->free_end; }
inline bool Formula::has_sentence_marker() const { return n_->sent_marker; }
inline std::uint8_t Formula::sigma_level() const { return n_->sigma; }
inline std::uint8_t Formula::pi_level() const { return n_->pi; }

}  // namespace ptlab

template <>
struct std::hash<ptlab::Formula> {
  std::size_t operator()(const ptlab::Formula& f) const noexcept { return std::hash<const void*>{}(f.node()); }
};
template <>
struct std::hash<ptlab::Term> {
  std::size_t operator()(const ptlab::Term& t) const noexcept { return std::hash<const void*>{}(t.node()); }
};
