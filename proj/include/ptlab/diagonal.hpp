#pragma once

// Term-style diagonal lemma. For a template A with hole v_h:
//   core   D  = A[v_h := sub(v_h, h, v_h)]
//   code   d  = code(D)
//   result δ  = D[v_h := d] = A[v_h := sub(d, h, d)]
// and sub(d, h, d) evaluates to code(δ), so δ is literally A applied to a term whose
// value is its own code. Further free variables of A stay free in δ as parameters.

#include "ptlab/formula.hpp"
#include "ptlab/verdict.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace ptlab::diagonal {

struct FixedPointCertificate {
  Formula templ;
  std::uint32_t hole = 0;
  std::vector<std::uint32_t> params;
  Formula core;
  BigNat core_code;
  Formula result;
  Term diagonal_term;  // sub(d, h, d)
  BigNat result_code;

  // Steps: substitute / encode / numeral, then the evaluation of the diagonal term.
  nlohmann::json trace() const;
  nlohmann::json to_json() const;
};

// Throws PreconditionError if the hole does not occur or other free variables do.
FixedPointCertificate fixed_point(Formula templ, std::uint32_t hole);
// The remaining free variables must all be listed in params.
FixedPointCertificate fixed_point_2var(Formula templ, std::uint32_t self_hole,
                                       std::vector<std::uint32_t> params);

// Recomputes every step from the template and compares printed forms byte for byte.
Verdict replay(const FixedPointCertificate& cert);
// Same, starting from the exported JSON only.
Verdict replay(const nlohmann::json& cert);

// result with the parameters v_{params[i]} set to numerals values[i].
Formula instantiate(const FixedPointCertificate& cert, std::span<const BigNat> values);
// The instance code equals the code of result with sub applied per parameter.
Verdict replay_instance(const FixedPointCertificate& cert, std::span<const BigNat> values);

}  // namespace ptlab::diagonal
