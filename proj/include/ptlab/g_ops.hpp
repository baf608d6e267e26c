#pragma once

// The operators
//   g(phi)  = forall theta (theta in A_a and Pr(phi -> theta) -> Con^a(theta))
//   g0(phi) = forall theta (theta in A_0 and Pr(phi -> theta) -> Con(theta))
//   g0*(phi) = /\{Con(zeta) : zeta in A_0, phi |- zeta} if phi is consistent, bot otherwise
// and their checks. The quantifier over A_a is only ever checked through finite
// truncations over the members numerated by some stage, with membership atoms and their
// boxes injected as premises (true Sigma1 sentences are provable).

#include "ptlab/aset.hpp"
#include "ptlab/gl.hpp"
#include "ptlab/verdict.hpp"

#include <functional>
#include <memory>

namespace ptlab::gops {

using ordinal::Ordinal;

struct GOperator {
  Ordinal alpha;
  std::shared_ptr<const aset::ASetRun> run;
  Formula rendered_template;  // free v0 is the code of phi
};

GOperator make_g(std::shared_ptr<const aset::ASetRun> run);

Formula apply_g(const GOperator& op, Formula phi);

// Con^a(theta) as used in truncations: the finite unfolding when a is finite,
// the fixed point instance otherwise.
Formula con_alpha(const Ordinal& alpha, Formula theta);

// /\ over theta numerated by stage `budget` of (theta in A_a and Pr(phi -> theta) -> Con^a(theta)).
Formula truncate_g(const GOperator& op, Formula phi, std::uint64_t budget);
// The same with Con(theta) in place of Con^a(theta).
Formula truncate_g0(const aset::ASetRun& run, Formula phi, std::uint64_t budget);
Formula apply_g0(Formula phi);

// (a) truncate_g(theta) + premises |- Con^a(theta); (b) Con^a(theta) |- truncate_g(theta).
Verdict verify_thm41_dir1(const GOperator& op, Formula theta, std::uint64_t budget, const gl::GlOptions& opts = {});

// Forward: phi := psi and Con^a(psi); with the premises read off the run (ancestors
// are implied by phi, other branches are inconsistent with it),
// phi and Con(phi) |- truncate_g(phi).
Verdict verify_thm41_dir2_forward(const GOperator& op, Formula psi, std::uint64_t budget,
                                  const gl::GlOptions& opts = {});
// Converse: not Con(phi) and a refutable member |- not truncate_g(phi).
Verdict verify_thm41_dir2_converse(const GOperator& op, Formula psi, std::uint64_t budget,
                                   const gl::GlOptions& opts = {});
Verdict verify_thm41_dir2(const GOperator& op, Formula psi, std::uint64_t budget, const gl::GlOptions& opts = {});

// Con(phi) <-> g0(phi) over an A_0 run, phi abstracted to an atom.
Verdict verify_prop51(const aset::ASetRun& run, std::uint64_t budget, const gl::GlOptions& opts = {});
// The right-to-left argument with Con^{a+1} in place of Con:
//   not Con^{a+1}(phi) + witness premises |- not /\(theta in A_a and Pr(phi -> theta) -> Con^{a+1}(theta)).
// Holds for a = 0; expected to be refuted from a = 1 on.
Verdict verify_collapse(const aset::ASetRun& run, std::uint64_t budget, const gl::GlOptions& opts = {});

// [](p -> q) -> (conjunct_theta(P) -> conjunct_theta(Q)) for every truncation conjunct.
Verdict check_g_monotone(const GOperator& op, std::uint64_t budget, const gl::GlOptions& opts = {});
// truncate_g0 at budget n+1 entails it at budget n.
Verdict check_g0_weakening(const aset::ASetRun& run, const gl::GlOptions& opts = {});

enum class Consistency { Consistent, Inconsistent, Unknown };
using ConsistencyOracle = std::function<Consistency(Formula)>;
// Unsatisfiable skeleton (with decided atom facts) means inconsistent; anything else is unknown.
ConsistencyOracle skeleton_oracle();

// Throws OracleRequired when the oracle answers Unknown.
Formula apply_g0_star(Formula phi, const aset::ASetRun& run, std::uint64_t budget, const ConsistencyOracle& oracle);

// Opaque sentences standing for the propositional variables p and q.
Formula sentence_p();
Formula sentence_q();

}  // namespace ptlab::gops
