#pragma once

#include "ptlab/formula.hpp"

#include <string>

namespace ptlab {

enum class Side { Sigma, Pi, Delta };

struct ComplexityClass {
  unsigned level = 0;
  Side side = Side::Delta;

  bool operator==(const ComplexityClass&) const = default;
  std::string str() const;  // "Delta0", "Sigma1", "Pi1", ...
};

inline ComplexityClass delta(unsigned n) { return {n, Side::Delta}; }
inline ComplexityClass sigma(unsigned n) { return {n, Side::Sigma}; }
inline ComplexityClass pi(unsigned n) { return {n, Side::Pi}; }

// Least class in the bounded-quantifier-aware hierarchy; provability and membership
// atoms count as Sigma1, decidable atoms as Delta0. Throws PreconditionError unless f is a sentence.
ComplexityClass classify(Formula f);

}  // namespace ptlab
