#pragma once

// Standard-model evaluation of closed terms and of the decidable fragment of sentences.

#include "ptlab/formula.hpp"

#include <functional>
#include <optional>

namespace ptlab {

// Throws PreconditionError on open terms, ResourceError on astronomically large values.
BigNat eval_term(Term t);

struct EvalOptions {
  // Truth of closed membership atoms; nullopt means "not known within budget".
  std::function<std::optional<bool>(Formula)> membership;
  std::uint64_t max_bounded_range = 1U << 16;
};

// Kleene three-valued: nullopt when an unbounded quantifier or provability atom decides the value.
std::optional<bool> eval_sentence(Formula f, const EvalOptions& opts = {});

// Replaces each unquoted (sent t), t closed, by the sentence t codes. Throws NotAFormulaCode.
Formula resolve_sentences(Formula f);

// For a provability atom with closed arguments: the sentence psi it asserts provable,
// i.e. the template with holes filled by the argument values and (sent ...) resolved.
Formula instantiate(Formula pr_atom);

}  // namespace ptlab
