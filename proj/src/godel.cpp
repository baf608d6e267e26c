#include "ptlab/godel.hpp"

#include "ptlab/error.hpp"

#include <mutex>
#include <unordered_map>

namespace ptlab {

namespace {

constexpr unsigned kFormulaTagBits = 4;
constexpr unsigned kTermTagBits = 3;
constexpr int kMaxDecodeDepth = 20000;

void put_term(Term t, BitWriter& w) {
  w.put_bits(static_cast<std::uint64_t>(t.kind()), kTermTagBits);
  switch (t.kind()) {
    case TermKind::Numeral:
      w.put_gamma(BigNat(t.value() + 1));
      return;
    case TermKind::Bound:
    case TermKind::Free:
      w.put_gamma(static_cast<std::uint64_t>(t.index()) + 1);
      return;
    case TermKind::Func:
      w.put_gamma(static_cast<std::uint64_t>(t.index()) + 1);
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) put_term(t.arg(i), w);
}

void put_formula(Formula f, BitWriter& w) {
  w.put_bits(static_cast<std::uint64_t>(f.kind()), kFormulaTagBits);
  switch (f.kind()) {
    case FormulaKind::Decidable:
    case FormulaKind::Membership:
      w.put_gamma(static_cast<std::uint64_t>(f.index()) + 1);
      break;
    case FormulaKind::Provability:
      w.put_gamma(static_cast<std::uint64_t>(f.holes()) + 1);
      put_formula(f.templ(), w);
      for (Term t : f.terms()) put_term(t, w);
      return;
    default:
      break;
  }
  // Bounded quantifiers write the bound before the body.
  for (Term t : f.terms()) put_term(t, w);
  for (std::size_t i = 0; i < f.num_subs(); ++i) put_formula(f.sub(i), w);
}

std::uint32_t small_index(BitReader& r) {
  std::uint64_t v = r.get_gamma_small() - 1;
  if (v > 0xffffffU) throw NotAFormulaCode("index out of range");
  return static_cast<std::uint32_t>(v);
}

Term get_term(BitReader& r, int depth) {
  if (depth > kMaxDecodeDepth) throw NotAFormulaCode("nesting too deep");
  auto kind = static_cast<TermKind>(r.get_bits(kTermTagBits));
  auto sub = [&] { return get_term(r, depth + 1); };
  switch (kind) {
    case TermKind::Numeral:
      return numeral(r.get_gamma() - 1);
    case TermKind::Bound:
      return bound_var(small_index(r));
    case TermKind::Free:
      return free_var(small_index(r));
    case TermKind::Succ:
      return succ(sub());
    case TermKind::Plus: {
      Term a = sub();
      return plus(a, sub());
    }
    case TermKind::Times: {
      Term a = sub();
      return times(a, sub());
    }
    case TermKind::Exp2:
      return exp2(sub());
    case TermKind::Func: {
      std::uint32_t id = small_index(r);
      if (id >= kTermFunctions.size()) throw NotAFormulaCode("unknown function symbol");
      std::vector<Term> args;
      for (unsigned i = 0; i < kTermFunctions[id].arity; ++i) args.push_back(sub());
      return func(static_cast<TermFn>(id), std::move(args));
    }
  }
  throw NotAFormulaCode("bad term tag");
}

Formula get_formula(BitReader& r, int depth) {
  if (depth > kMaxDecodeDepth) throw NotAFormulaCode("nesting too deep");
  auto kind = static_cast<FormulaKind>(r.get_bits(kFormulaTagBits));
  auto sub = [&] { return get_formula(r, depth + 1); };
  auto term = [&] { return get_term(r, depth + 1); };
  auto args = [&](std::size_t n) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(term());
    return out;
  };
  switch (kind) {
    case FormulaKind::Top:
      return top();
    case FormulaKind::Bot:
      return bot();
    case FormulaKind::Eq: {
      Term a = term();
      return eq(a, term());
    }
    case FormulaKind::Le: {
      Term a = term();
      return le(a, term());
    }
    case FormulaKind::Not:
      return neg(sub());
    case FormulaKind::And: {
      Formula a = sub();
      return conj(a, sub());
    }
    case FormulaKind::Or: {
      Formula a = sub();
      return disj(a, sub());
    }
    case FormulaKind::Imp: {
      Formula a = sub();
      return implies(a, sub());
    }
    case FormulaKind::Forall:
      return forall(sub());
    case FormulaKind::Exists:
      return exists(sub());
    case FormulaKind::BForall: {
      Term b = term();
      return bforall(b, sub());
    }
    case FormulaKind::BExists: {
      Term b = term();
      return bexists(b, sub());
    }
    case FormulaKind::Decidable: {
      std::uint32_t id = small_index(r);
      if (id >= kDecidableAtoms.size()) throw NotAFormulaCode("unknown decidable atom");
      return decidable(static_cast<DecidableId>(id), args(kDecidableAtoms[id].arity));
    }
    case FormulaKind::Membership: {
      std::uint32_t id = small_index(r);
      if (id >= kEnumerators.size()) throw NotAFormulaCode("unknown enumerator");
      return membership(static_cast<EnumeratorId>(id), args(kEnumerators[id].arity));
    }
    case FormulaKind::Provability: {
      std::uint64_t k = r.get_gamma_small() - 1;
      if (k > 64) throw NotAFormulaCode("too many template holes");
      Formula templ = sub();
      if (templ.loose() != 0 || templ.free_end() > k) throw NotAFormulaCode("ill-formed provability template");
      return provable(templ, args(k));
    }
    case FormulaKind::Sentence:
      return sentence_of(term());
  }
  throw NotAFormulaCode("bad formula tag");
}

struct EncodeCache {
  std::mutex mu;
  std::unordered_map<Formula, BigNat> codes;
};

EncodeCache& encode_cache() {
  static auto* c = new EncodeCache();
  return *c;
}

}  // namespace

BigNat godel_encode(Formula f) {
  EncodeCache& cache = encode_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (auto it = cache.codes.find(f); it != cache.codes.end()) return it->second;
  }
  BitWriter w;
  put_formula(f, w);
  BigNat code = w.to_number();
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.codes.emplace(f, code);
  return code;
}

Formula godel_decode(const BigNat& code) {
  BitReader r(code);
  Formula f = get_formula(r, 0);
  if (!r.done()) throw NotAFormulaCode("trailing bits");
  if (f.loose() != 0) throw NotAFormulaCode("unbound variable index");
  // Smart constructors normalise numeral shapes; only the canonical spelling is a code.
  if (godel_encode(f) != code) throw NotAFormulaCode("non-canonical spelling");
  return f;
}

std::optional<Formula> try_godel_decode(const BigNat& code) {
  try {
    return godel_decode(code);
  } catch (const NotAFormulaCode&) {
    return std::nullopt;
  } catch (const Error&) {
    // Constructor-level rejections (arity, template shape) also mean "not a code".
    return std::nullopt;
  }
}

BigNat eval_sub(const BigNat& code, const BigNat& var, const BigNat& value) {
  Formula f = godel_decode(code);
  if (var > 0xffffffU) return godel_encode(f);
  return godel_encode(substitute(f, static_cast<std::uint32_t>(var), numeral(value)));
}

Formula CodeOrderSentences::next() {
  while (true) {
    ++cursor_;
    if (auto f = try_godel_decode(cursor_); f && f->is_sentence()) return *f;
  }
}

}  // namespace ptlab
