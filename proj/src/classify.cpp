#include "ptlab/classify.hpp"

#include "ptlab/error.hpp"

namespace ptlab {

std::string ComplexityClass::str() const {
  const char* name = side == Side::Sigma ? "Sigma" : side == Side::Pi ? "Pi" : "Delta";
  return name + std::to_string(level);
}

ComplexityClass classify(Formula f) {
  if (f.free_end() != 0 || f.loose() != 0) throw PreconditionError("classify: formula has free variables");
  if (f.has_sentence_marker()) throw PreconditionError("classify: (sent ...) outside a provability template");
  unsigned s = f.sigma_level(), p = f.pi_level();
  if (s == p) return delta(s);
  return s < p ? sigma(s) : pi(p);
}

}  // namespace ptlab
