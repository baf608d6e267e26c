#pragma once

// Goedel numbering. A formula is written as a preorder bit string and the code is
// the number whose binary form is "1" followed by that string.
//   formula tag: 4 bits (FormulaKind order); term tag: 3 bits (TermKind order)
//   numeral n: tag + gamma(n+1); bound/free index i: tag + gamma(i+1)
//   atom and function identifiers: gamma(id+1); provability: gamma(k+1) template args...
// Decoding accepts exactly the strings produced by encoding (checked by re-encoding),
// so the scheme is a bijection between formulas and valid codes.

#include "ptlab/formula.hpp"

#include <optional>

namespace ptlab {

BigNat godel_encode(Formula f);
// Throws NotAFormulaCode.
Formula godel_decode(const BigNat& code);
std::optional<Formula> try_godel_decode(const BigNat& code);

// sub(c, i, m): code of the formula coded by c with v_i replaced by the numeral m.
BigNat eval_sub(const BigNat& code, const BigNat& var, const BigNat& value);

// The default sentence enumeration: closed sentences in increasing code order.
class CodeOrderSentences {
 public:
  Formula next();
  const BigNat& last_code() const { return cursor_; }

 private:
  BigNat cursor_ = 0;
};

}  // namespace ptlab
