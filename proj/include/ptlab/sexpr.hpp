#pragma once

// Canonical S-expression syntax.
//
//   formulas  (top) (bot) (= t u) (le t u) (datom NAME t...) (pr F t...)
//             (mem NAME t...) (sent t) (not f) (and f g) (or f g) (imp f g)
//             (forall x f) (exists x f) (ball x t f) (bex x t f)
//   terms     (z) (v i) (s t) (+ t u) (* t u) (e2 t) (num n) (fn NAME t...) x
//
// (v i) is the free variable v_i; a bare symbol must name an enclosing binder.
// A pr template opens a fresh scope: its holes are v0..v(k-1).
// The printer names binders x0, x1, ... by nesting depth.

#include "ptlab/formula.hpp"

#include <string>
#include <string_view>

namespace ptlab {

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

std::string print(Formula f);
std::string print(Term t);

}  // namespace ptlab
