#pragma once

// Iterated consistency Con^a(phi) as the instance Con*(code a, code phi) of the
// parametrized fixed point
//
//   Con*(a, p) = forall b (ord-lt(b, a) -> not Pr(not (sent p and sent sub(sub(S, 0, b), 1, p))))
//
// where S evaluates to the code of Con* itself, so the inner term evaluates to the code
// of Con*(b, p). For finite n the explicit unfolding is
//   unfold_finite(n, phi) = /\_{k<n} Con(phi and unfold_finite(k, phi)).

#include "ptlab/diagonal.hpp"
#include "ptlab/gl.hpp"
#include "ptlab/ordinal.hpp"
#include "ptlab/verdict.hpp"

#include <optional>

namespace ptlab::coniter {

using ordinal::Ordinal;

// Template over v0 = ordinal code, v1 = sentence code, v2 = self code.
Formula con_star_template();
const diagonal::FixedPointCertificate& con_star();

struct ConIterSentence {
  Ordinal alpha;
  Formula base;
  Formula rendered;
  std::optional<std::uint64_t> unfold_depth;  // alpha when finite

  nlohmann::json to_json() const;
};

// Throws PreconditionError unless phi is a sentence.
ConIterSentence con_iter(const Ordinal& alpha, Formula phi);

// One step of the fixed point: the conjunction over beta in predecessors_below(alpha, bound)
// of the guarded body at beta with its provability argument evaluated, i.e.
// Con(phi and Con*(beta, phi)) as a closed provability atom.
Formula unfold_once(const ConIterSentence& c, std::size_t bound = 8);
// Checks, for each sampled beta, that the evaluated body is byte-identical to
// Con(phi and Con*(beta, phi)) and that the ord-lt guard holds.
Verdict check_unfold_once(const ConIterSentence& c, std::size_t bound = 8);

// Throws PreconditionError when alpha is not finite.
Formula unfold_finite(const Ordinal& alpha, Formula phi);
Formula unfold_finite(std::uint64_t n, Formula phi);

// The skeleton-level image of unfold_finite: con^n(a).
gl::Modal con_modal(std::uint64_t n, gl::Modal a);

// GL |- [](p->q) -> (con^n(p) -> con^n(q)), or with [] around the consequent when boxed.
Verdict check_monotone_finite(std::uint64_t n, bool boxed = false, const gl::GlOptions& opts = {});

// Con^0 is top, Con^1 is GL-equivalent to Con, and Con^1 unfolds to Con(phi and Con^0).
Verdict check_base_cases(Formula phi, const gl::GlOptions& opts = {});

}  // namespace ptlab::coniter
