#pragma once

// Seeded random syntax for property checks.

#include "ptlab/formula.hpp"

#include <random>

namespace ptlab::sample {

struct Gen {
  std::mt19937_64 rng;
  std::uint32_t free_vars = 3;  // v0..v(free_vars-1) may appear

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng() % n; }

  Term term(int depth, std::uint32_t binders) {
    std::uint64_t pick = below(depth <= 0 ? 3 : 9);
    switch (pick) {
      case 0:
        return numeral(below(4) == 0 ? BigNat(rng()) * rng() : BigNat(below(20)));
      case 1:
        if (binders > 0) return bound_var(static_cast<std::uint32_t>(below(binders)));
        return zero();
      case 2:
        if (free_vars > 0) return free_var(static_cast<std::uint32_t>(below(free_vars)));
        return zero();
      case 3:
        return succ(term(depth - 1, binders));
      case 4:
        return plus(term(depth - 1, binders), term(depth - 1, binders));
      case 5:
        return times(term(depth - 1, binders), term(depth - 1, binders));
      case 6:
        return exp2(term(depth - 1, binders));
      case 7:
        return sub_term(term(depth - 1, binders), numeral(below(3)), term(depth - 1, binders));
      default:
        return numeral(below(1000));
    }
  }

  Formula formula(int depth, std::uint32_t binders = 0) {
    std::uint64_t pick = below(depth <= 0 ? 6 : 16);
    auto t = [&] { return term(2, binders); };
    switch (pick) {
      case 0:
        return top();
      case 1:
        return bot();
      case 2:
        return eq(t(), t());
      case 3:
        return le(t(), t());
      case 4:
        return below(2) ? decidable(DecidableId::OrdLt, {t(), t()}) : decidable(DecidableId::OrdD, {t()});
      case 5:
        return membership(EnumeratorId::ASet, {t(), t()});
      case 6:
        return neg(formula(depth - 1, binders));
      case 7:
        return conj(formula(depth - 1, binders), formula(depth - 1, binders));
      case 8:
        return disj(formula(depth - 1, binders), formula(depth - 1, binders));
      case 9:
        return implies(formula(depth - 1, binders), formula(depth - 1, binders));
      case 10:
        return forall(formula(depth - 1, binders + 1));
      case 11:
        return exists(formula(depth - 1, binders + 1));
      case 12: {
        Term b = t();
        return bforall(b, formula(depth - 1, binders + 1));
      }
      case 13: {
        Term b = t();
        return bexists(b, formula(depth - 1, binders + 1));
      }
      case 14: {
        // Template over holes v0, v1 in a fresh scope.
        Gen inner(rng());
        inner.free_vars = 2;
        Formula templ = below(3) == 0 ? conj(inner.formula(depth - 2, 0), sentence_of(free_var(1)))
                                      : inner.formula(depth - 2, 0);
        return provable(templ, {t(), t()});
      }
      default:
        return provable(closed(depth - 2));
    }
  }

  Formula closed(int depth) {
    std::uint32_t saved = free_vars;
    free_vars = 0;
    Formula f = formula(depth, 0);
    free_vars = saved;
    return f;
  }
};

}  // namespace ptlab::sample
