#include "ptlab/evaluate.hpp"

#include "ptlab/error.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/ordinal.hpp"

#include <unordered_map>

namespace ptlab {

BigNat eval_term(Term t) {
  switch (t.kind()) {
    case TermKind::Numeral:
      return t.value();
    case TermKind::Bound:
    case TermKind::Free:
      throw PreconditionError("cannot evaluate an open term");
    case TermKind::Succ:
      return eval_term(t.arg(0)) + 1;
    case TermKind::Plus:
      return eval_term(t.arg(0)) + eval_term(t.arg(1));
    case TermKind::Times:
      return eval_term(t.arg(0)) * eval_term(t.arg(1));
    case TermKind::Exp2: {
      BigNat e = eval_term(t.arg(0));
      if (e > (1U << 26)) throw ResourceError("2^x with x too large to evaluate");
      return BigNat(1) << static_cast<unsigned>(e);
    }
    case TermKind::Func:
      return eval_sub(eval_term(t.arg(0)), eval_term(t.arg(1)), eval_term(t.arg(2)));
  }
  throw Error("bad term");
}

namespace {

std::optional<bool> eval_rec(Formula f, const EvalOptions& opts);

std::optional<bool> eval_bounded(Formula f, const EvalOptions& opts) {
  BigNat n = eval_term(f.term(0));
  if (n > opts.max_bounded_range) return std::nullopt;
  bool universal = f.kind() == FormulaKind::BForall;
  bool unknown = false;
  auto count = static_cast<std::uint64_t>(n);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto v = eval_rec(open_binder(f.sub(0), numeral(i)), opts);
    if (!v) {
      unknown = true;
    } else if (*v != universal) {
      return !universal;
    }
  }
  if (unknown) return std::nullopt;
  return universal;
}

std::optional<bool> eval_rec(Formula f, const EvalOptions& opts) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Eq:
      return eval_term(f.term(0)) == eval_term(f.term(1));
    case FormulaKind::Le:
      return eval_term(f.term(0)) <= eval_term(f.term(1));
    case FormulaKind::Decidable: {
      std::vector<BigNat> args;
      for (Term t : f.terms()) args.push_back(eval_term(t));
      return ordinal::eval_atom(static_cast<DecidableId>(f.index()), args);
    }
    case FormulaKind::Membership:
      if (!opts.membership) return std::nullopt;
      return opts.membership(f);
    case FormulaKind::Provability:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return std::nullopt;
    case FormulaKind::Sentence:
      return eval_rec(godel_decode(eval_term(f.term(0))), opts);
    case FormulaKind::Not: {
      auto v = eval_rec(f.sub(0), opts);
      if (!v) return std::nullopt;
      return !*v;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      bool is_and = f.kind() == FormulaKind::And;
      auto a = eval_rec(f.sub(0), opts);
      if (a && *a != is_and) return !is_and;
      auto b = eval_rec(f.sub(1), opts);
      if (b && *b != is_and) return !is_and;
      if (a && b) return is_and;
      return std::nullopt;
    }
    case FormulaKind::Imp: {
      auto a = eval_rec(f.sub(0), opts);
      if (a && !*a) return true;
      auto b = eval_rec(f.sub(1), opts);
      if (b && *b) return true;
      if (a && b) return false;
      return std::nullopt;
    }
    case FormulaKind::BForall:
    case FormulaKind::BExists:
      return eval_bounded(f, opts);
  }
  return std::nullopt;
}

}  // namespace

std::optional<bool> eval_sentence(Formula f, const EvalOptions& opts) {
  if (f.free_end() != 0 || f.loose() != 0) throw PreconditionError("eval_sentence: formula has free variables");
  return eval_rec(f, opts);
}

Formula resolve_sentences(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  auto rec = [&](auto&& self, Formula g) -> Formula {
    if (!g.has_sentence_marker()) return g;
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Formula r;
    switch (g.kind()) {
      case FormulaKind::Sentence: {
        Term t = g.term(0);
        if (!t.closed()) return g;
        r = godel_decode(eval_term(t));
        if (!r.is_sentence()) throw NotAFormulaCode("(sent ...) argument does not code a sentence");
        break;
      }
      case FormulaKind::Not:
        r = neg(self(self, g.sub(0)));
        break;
      case FormulaKind::And:
        r = conj(self(self, g.sub(0)), self(self, g.sub(1)));
        break;
      case FormulaKind::Or:
        r = disj(self(self, g.sub(0)), self(self, g.sub(1)));
        break;
      case FormulaKind::Imp:
        r = implies(self(self, g.sub(0)), self(self, g.sub(1)));
        break;
      case FormulaKind::Forall:
        r = forall(self(self, g.sub(0)));
        break;
      case FormulaKind::Exists:
        r = exists(self(self, g.sub(0)));
        break;
      case FormulaKind::BForall:
        r = bforall(g.term(0), self(self, g.sub(0)));
        break;
      case FormulaKind::BExists:
        r = bexists(g.term(0), self(self, g.sub(0)));
        break;
      default:
        r = g;
    }
    memo.emplace(g, r);
    return r;
  };
  return rec(rec, f);
}

Formula instantiate(Formula pr_atom) {
  if (pr_atom.kind() != FormulaKind::Provability) throw PreconditionError("instantiate: not a provability atom");
  Formula body = pr_atom.templ();
  for (std::size_t i = 0; i < pr_atom.holes(); ++i) {
    Term a = pr_atom.term(i);
    if (!a.closed()) throw PreconditionError("instantiate: open hole argument");
    body = substitute(body, static_cast<std::uint32_t>(i), numeral(eval_term(a)));
  }
  Formula r = resolve_sentences(body);
  if (!r.is_sentence()) throw PreconditionError("instantiate: result is not a sentence");
  return r;
}

}  // namespace ptlab
