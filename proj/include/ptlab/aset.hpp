#pragma once

// The staged set A_alpha.
//   stage 0:   numerate top; activate top and Con^{a+1}(top)
//   stage n+1: for each active psi (canonical order) numerate psi and phi_n, psi and not phi_n;
//              deactivate psi; activate theta and Con^{a+1}(theta) for both.
// Node ids are canonical: stage by stage, parent order, positive child first. The
// numerated sentences form a binary tree whose edges are the parent relation.

#include "ptlab/gl.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/ordinal.hpp"
#include "ptlab/verdict.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptlab::aset {

using ordinal::Ordinal;

// phi_0, phi_1, ...: an optional fixed prefix, then closed sentences in code order
// (skipping anything already in the prefix).
class Enumeration {
 public:
  Enumeration() = default;
  explicit Enumeration(std::vector<Formula> prefix);

  Formula at(std::size_t n);
  const std::vector<Formula>& prefix() const { return prefix_; }
  // FNV-1a over the printed first n sentences.
  std::uint64_t digest(std::size_t n);

 private:
  std::vector<Formula> prefix_;
  std::vector<Formula> cache_;
  CodeOrderSentences rest_;
};

// How the Con^{a+1} conjunct of an active sentence is written.
enum class ConForm {
  Auto,      // Unfolded when alpha is finite, Diagonal otherwise
  Unfolded,  // unfold_finite(alpha+1, theta); alpha must be finite
  Diagonal,  // the Con* fixed point instance
};

struct ASetConfig {
  Ordinal alpha;
  Enumeration enumeration;
  std::uint64_t budget = 0;  // number of stages after stage 0
  ConForm con_form = ConForm::Auto;
  std::size_t max_nodes = 1U << 16;
};

struct Node {
  std::uint32_t id = 0;
  std::int64_t parent = -1;
  std::uint32_t stage = 0;
  int polarity = 0;  // +1 for psi and phi_n, -1 for psi and not phi_n, 0 at the root
  Formula sentence;  // numerated
  Formula active;    // sentence and Con^{a+1}(sentence)
  std::int64_t children[2] = {-1, -1};
};

struct ASetRun {
  Ordinal alpha;
  std::uint64_t budget = 0;
  ConForm con_form = ConForm::Auto;
  std::vector<Formula> phis;  // phi_0 .. phi_{budget-1}
  std::uint64_t enumeration_digest = 0;
  std::vector<Node> nodes;
  std::vector<std::vector<std::uint32_t>> active_after;  // active node ids after each stage

  std::size_t numerated_through(std::uint64_t stage) const;  // 2^{stage+1} - 1
  std::vector<std::uint32_t> stage_nodes(std::uint64_t stage) const;
  bool ancestor_or_self(std::uint32_t a, std::uint32_t b) const;
  bool same_branch(std::uint32_t a, std::uint32_t b) const;
  std::optional<std::uint32_t> find(Formula sentence) const;

  // {stage, node_id, parent_id, polarity, formula_ref} per numeration, canonical order.
  nlohmann::json events_json() const;
  // One canonical S-expression per line; line i is formula_ref i.
  std::string formulas_sexp() const;
  nlohmann::json summary_json() const;

 private:
  std::unordered_map<Formula, std::uint32_t> index_;
  friend ASetRun run_enumeration(ASetConfig config);
};

// Throws ResourceError when the run would exceed config.max_nodes.
ASetRun run_enumeration(ASetConfig config);

// theta in A_alpha, as a Sigma1 membership atom over the codes of alpha and theta.
Formula membership_atom(const Ordinal& alpha, Formula theta);

// True iff theta is numerated in the run; never false, only nullopt ("not within budget").
std::function<std::optional<bool>(Formula)> membership_evaluator(const ASetRun& run);

// Counts per stage, binary tree shape, and descendant-implies-ancestor at skeleton level.
Verdict check_structure(const ASetRun& run);
// Cross-branch pairs are propositionally inconsistent; same-branch pairs are consistent
// whenever the deeper sentence is.
Verdict check_branch_inconsistency(const ASetRun& run);
// Some phi_n (n < budget) is refutable and psi and phi_n is numerated at stage n+1 with an
// unsatisfiable skeleton; undecided when the prefix holds no refutable sentence.
Verdict check_refutable_member(const ASetRun& run);
// Membership atoms are Sigma1 and the evaluator agrees with the run log.
Verdict check_membership(const ASetRun& run);

struct TruePath {
  std::vector<std::uint32_t> nodes;  // one node per stage 0..budget
  std::vector<bool> choices;         // truth value of phi_n
  nlohmann::json to_json() const;
};
// Throws PreconditionError naming the first phi_n that does not evaluate.
TruePath true_path(const ASetRun& run);
Verdict check_true_path(const ASetRun& run);

// The numerated node refuted at skeleton level (with decided atom facts), if any.
std::optional<std::uint32_t> refutable_witness(const ASetRun& run);

}  // namespace ptlab::aset
