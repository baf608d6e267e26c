#pragma once

// Decision procedure for GL.
//
// A formula is GL-satisfiable at a root iff some propositional assignment M to its
// atoms and boxed subformulas satisfies it and, for each box []A false in M, the set
// {C, []C : []C true in M} + {[]A, ~A} is again satisfiable (Loeb: a last ~A world).
// The search keeps one incremental SAT instance over the subformula closure. When a
// child set is unsatisfiable, its assumption core TB gives the GL-valid lemma
// /\TB -> []A (by Loeb's axiom), added as a clause. Refutations come with the
// finite tree of worlds found; proofs are the lemma list, re-checkable by SAT.

#include "ptlab/kripke.hpp"
#include "ptlab/modal.hpp"
#include "ptlab/verdict.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ptlab::gl {

struct GlOptions {
  std::uint64_t max_sat_calls = 0;  // 0: PTLAB_GL_BUDGET or the built-in default
  bool check_proofs = true;
};

// GL proves  /\boxes -> goal_box.
struct ProofLemma {
  std::vector<Modal> boxes;
  Modal goal_box;
};

struct GlProof {
  Modal formula;
  std::vector<ProofLemma> lemmas;
  nlohmann::json to_json() const;
};

struct GlResult {
  Outcome outcome = Outcome::Undecided;
  std::optional<GlProof> proof;
  std::optional<KripkeModel> countermodel;
  std::uint64_t sat_calls = 0;
  std::string note;

  Verdict verdict(std::string claim) const;
};

GlResult gl_prove(Modal f, const GlOptions& opts = {});
GlResult gl_entails(std::span<const Modal> premises, Modal goal, const GlOptions& opts = {});

// Re-derives every lemma and the final step with a fresh SAT instance.
bool check_proof(const GlProof& proof);

struct LobCheck {
  GlResult premise;     // []f -> f
  GlResult conclusion;  // f
  bool passes() const {
    return premise.outcome != Outcome::Established || conclusion.outcome == Outcome::Established;
  }
};
LobCheck lob_rule_check(Modal f, const GlOptions& opts = {});

struct SatResult {
  bool satisfiable = false;
  std::vector<std::pair<std::string, bool>> model;  // atom assignment when satisfiable
};
// Propositional satisfiability of a box-free formula; throws PreconditionError otherwise.
SatResult sat_check(Modal f);
// Replaces each maximal boxed subformula by an atom named after its structural hash.
Modal abstract_boxes(Modal f);

std::uint64_t default_budget();

}  // namespace ptlab::gl
