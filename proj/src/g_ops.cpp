#include "ptlab/g_ops.hpp"

#include "ptlab/con_iter.hpp"
#include "ptlab/error.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/sexpr.hpp"
#include "ptlab/skeleton.hpp"


namespace ptlab::gops {

namespace {

using aset::ASetRun;
using aset::Node;
namespace m = gl;

std::vector<std::uint32_t> members(const ASetRun& run, std::uint64_t budget) {
  if (budget > run.budget)
    throw PreconditionError("truncation at stage " + std::to_string(budget) + " but the run stops at stage " +
                            std::to_string(run.budget));
  std::vector<std::uint32_t> out;
  for (const Node& n : run.nodes)
    if (n.stage <= budget) out.push_back(n.id);
  return out;
}

std::uint32_t member_id(const ASetRun& run, Formula theta, std::uint64_t budget) {
  auto id = run.find(theta);
  if (!id || run.nodes[*id].stage > budget)
    throw PreconditionError("sentence is not numerated by stage " + std::to_string(budget) + ": " + print(theta));
  return *id;
}

// The truncation with a given consistency statement per member.
Formula truncate_with(const ASetRun& run, Formula phi, std::uint64_t budget,
                      const std::function<Formula(Formula)>& con) {
  if (!phi.is_sentence()) throw PreconditionError("truncation: phi is not a sentence");
  std::vector<Formula> parts;
  for (std::uint32_t id : members(run, budget)) {
    Formula theta = run.nodes[id].sentence;
    Formula guard = conj(aset::membership_atom(run.alpha, theta), provable(implies(phi, theta)));
    parts.push_back(implies(guard, con(theta)));
  }
  return conj_all(parts);
}

// An atom and its box, for a true Sigma1 sentence.
void inject(std::vector<m::Modal>& premises, Formula sigma1_true) {
  m::Modal s = skeleton(sigma1_true);
  premises.push_back(s);
  premises.push_back(m::box(s));
}

std::string truncation_note(std::uint64_t budget) {
  return "quantifier over A restricted to members numerated by stage " + std::to_string(budget) +
         "; Sigma1-completeness premises injected for true membership atoms";
}

Verdict gl_verdict(std::string claim, const std::vector<m::Modal>& premises, m::Modal goal, const gl::GlOptions& opts,
                   std::uint64_t budget) {
  Verdict v = gl::gl_entails(premises, goal, opts).verdict(std::move(claim));
  v.notes.push_back(truncation_note(budget));
  return v;
}

// Decided facts for the decidable atoms in f's skeleton.
std::vector<m::Modal> facts_for(Formula f) {
  SkeletonAtoms atoms;
  skeleton(f, &atoms);
  return decided_atom_facts(atoms);
}

void append(std::vector<m::Modal>& to, const std::vector<m::Modal>& from) { to.insert(to.end(), from.begin(), from.end()); }

void note_witness(Verdict& v, std::uint32_t node) {
  if (!v.witness) v.witness = nlohmann::json::object();
  (*v.witness)["refutable_member"] = node;
}

bool propositionally_unsat(m::Modal f) { return !m::sat_check(m::abstract_boxes(f)).satisfiable; }

}  // namespace

Formula sentence_p() {
  static const Formula p = parse_formula("(forall x (le x (* x (s (s (z))))))");
  return p;
}

Formula sentence_q() {
  static const Formula q = parse_formula("(forall x (le x (* x (s (s (s (z)))))))");
  return q;
}

Formula con_alpha(const Ordinal& alpha, Formula theta) {
  if (alpha.is_finite()) return coniter::unfold_finite(alpha, theta);
  return coniter::con_iter(alpha, theta).rendered;
}

GOperator make_g(std::shared_ptr<const ASetRun> run) {
  GOperator op;
  op.alpha = run->alpha;
  op.run = std::move(run);
  // Con*(a, v1) with v1 standing for theta; the pr template reads (sent phi) -> (sent theta).
  Formula con = substitute(coniter::con_star().result, 0, numeral(ordinal::encode(op.alpha)));
  Formula mem = membership(EnumeratorId::ASet, {numeral(ordinal::encode(op.alpha)), free_var(1)});
  Formula pr = provable(parse_formula("(imp (sent (v 1)) (sent (v 0)))"), {free_var(1), free_var(0)});
  op.rendered_template = forall_over(1, implies(conj(mem, pr), con));
  return op;
}

Formula apply_g(const GOperator& op, Formula phi) {
  if (!phi.is_sentence()) throw PreconditionError("apply_g: phi is not a sentence");
  return substitute(op.rendered_template, 0, numeral(godel_encode(phi)));
}

Formula apply_g0(Formula phi) {
  if (!phi.is_sentence()) throw PreconditionError("apply_g0: phi is not a sentence");
  Formula mem = membership(EnumeratorId::ASet, {numeral(ordinal::encode(Ordinal())), free_var(0)});
  Formula pr = provable(parse_formula("(imp (sent (v 1)) (sent (v 0)))"), {free_var(0), numeral(godel_encode(phi))});
  Formula con = neg(provable(parse_formula("(not (sent (v 0)))"), {free_var(0)}));
  return forall_over(0, implies(conj(mem, pr), con));
}

Formula truncate_g(const GOperator& op, Formula phi, std::uint64_t budget) {
  return truncate_with(*op.run, phi, budget, [&](Formula t) { return con_alpha(op.alpha, t); });
}

Formula truncate_g0(const ASetRun& run, Formula phi, std::uint64_t budget) {
  if (!run.alpha.is_zero()) throw PreconditionError("g0 needs an A_0 run");
  return truncate_with(run, phi, budget, [](Formula t) { return consistency(t); });
}

Verdict verify_thm41_dir1(const GOperator& op, Formula theta, std::uint64_t budget, const gl::GlOptions& opts) {
  const std::string name = "g(theta) and Con^" + op.alpha.str() + "(theta) agree for a member theta";
  member_id(*op.run, theta, budget);
  if (!op.alpha.is_finite())
    return undecided(name, "alpha " + op.alpha.str() + " is not finite; Con^alpha has no finite unfolding",
                     "skeleton-level (GL)");
  m::Modal trunc = skeleton(truncate_g(op, theta, budget));
  m::Modal con = skeleton(con_alpha(op.alpha, theta));
  std::vector<m::Modal> premises;
  inject(premises, aset::membership_atom(op.alpha, theta));
  append(premises, facts_for(theta));

  std::vector<m::Modal> pa = premises;
  pa.push_back(trunc);
  Verdict a = gl_verdict("truncate_g(theta) + membership premises |- Con^a(theta)", pa, con, opts, budget);
  Verdict b = gl_verdict("Con^a(theta) |- truncate_g(theta)", {con}, trunc, opts, budget);
  return combine(name, {a, b}, "skeleton-level (GL)");
}

Verdict verify_thm41_dir2_forward(const GOperator& op, Formula psi, std::uint64_t budget, const gl::GlOptions& opts) {
  const std::string name = "phi and Con(phi) |- g(phi) for phi = psi and Con^" + op.alpha.str() + "(psi)";
  const ASetRun& run = *op.run;
  std::uint32_t pid = member_id(run, psi, budget);
  if (!op.alpha.is_finite())
    return undecided(name, "alpha " + op.alpha.str() + " is not finite", "skeleton-level (GL)");
  Formula phi = conj(psi, con_alpha(op.alpha, psi));
  m::Modal sphi = skeleton(phi);

  std::vector<m::Modal> premises;
  std::size_t implied = 0, excluded = 0, below = 0;
  for (std::uint32_t id : members(run, budget)) {
    m::Modal st = skeleton(run.nodes[id].sentence);
    if (run.ancestor_or_self(id, pid)) {
      premises.push_back(m::box(m::mimp(sphi, st)));
      ++implied;
    } else if (!run.ancestor_or_self(pid, id)) {
      // Other branch: the premise is justified by a propositional refutation.
      if (!propositionally_unsat(m::mand(sphi, st)))
        return undecided(name, "cross-branch member " + std::to_string(id) + " is not refuted propositionally",
                         "skeleton-level (GL)");
      premises.push_back(m::box(m::mnot(m::mand(sphi, st))));
      ++excluded;
    } else {
      ++below;
    }
  }
  premises.push_back(sphi);
  premises.push_back(m::dia(sphi));
  Formula trunc = truncate_g(op, phi, budget);
  append(premises, facts_for(trunc));
  Verdict v = gl_verdict(name, premises, skeleton(trunc), opts, budget);
  v.notes.push_back("premises: " + std::to_string(implied) + " ancestors implied, " + std::to_string(excluded) +
                    " other-branch members excluded; " + std::to_string(below) + " descendants left to GL");
  return v;
}

Verdict verify_thm41_dir2_converse(const GOperator& op, Formula psi, std::uint64_t budget, const gl::GlOptions& opts) {
  const std::string name = "not Con(phi) |- not g(phi) for phi = psi and Con^" + op.alpha.str() + "(psi)";
  const ASetRun& run = *op.run;
  member_id(run, psi, budget);
  if (!op.alpha.is_finite())
    return undecided(name, "alpha " + op.alpha.str() + " is not finite", "skeleton-level (GL)");
  auto witness = aset::refutable_witness(run);
  if (!witness || run.nodes[*witness].stage > budget)
    return undecided(name, "no refutable member numerated by stage " + std::to_string(budget), "skeleton-level (GL)");
  Formula bot_member = run.nodes[*witness].sentence;
  Formula phi = conj(psi, con_alpha(op.alpha, psi));
  Formula trunc = truncate_g(op, phi, budget);

  std::vector<m::Modal> premises{m::box(m::mnot(skeleton(phi)))};
  inject(premises, aset::membership_atom(op.alpha, bot_member));
  premises.push_back(m::box(m::mnot(skeleton(bot_member))));
  append(premises, facts_for(trunc));
  Verdict v = gl_verdict(name, premises, m::mnot(skeleton(trunc)), opts, budget);
  note_witness(v, *witness);
  return v;
}

Verdict verify_thm41_dir2(const GOperator& op, Formula psi, std::uint64_t budget, const gl::GlOptions& opts) {
  return combine("g(phi) and Con(phi) agree for phi = psi and Con^" + op.alpha.str() + "(psi)",
                 {verify_thm41_dir2_forward(op, psi, budget, opts), verify_thm41_dir2_converse(op, psi, budget, opts)},
                 "skeleton-level (GL)");
}

Verdict verify_prop51(const ASetRun& run, std::uint64_t budget, const gl::GlOptions& opts) {
  const std::string name = "Con(phi) <-> g0(phi)";
  if (!run.alpha.is_zero()) throw PreconditionError("verify_prop51 needs an A_0 run");
  Formula P = sentence_p();
  m::Modal p = skeleton(P);
  Formula trunc = truncate_g0(run, P, budget);
  m::Modal st = skeleton(trunc);
  std::vector<m::Modal> facts = facts_for(trunc);

  std::vector<m::Modal> lr_prem = facts;
  lr_prem.push_back(m::dia(p));
  Verdict lr = gl_verdict("Con(p) |- truncate_g0(p)", lr_prem, st, opts, budget);

  auto witness = aset::refutable_witness(run);
  Verdict rl, via;
  if (!witness || run.nodes[*witness].stage > budget) {
    rl = undecided("not Con(p) |- not truncate_g0(p)", "no refutable member numerated by stage " +
                                                           std::to_string(budget), "skeleton-level (GL)");
    via = rl;
  } else {
    Formula bot_member = run.nodes[*witness].sentence;
    m::Modal sb = skeleton(bot_member);
    std::vector<m::Modal> prem = facts;
    inject(prem, aset::membership_atom(run.alpha, bot_member));
    prem.push_back(m::box(m::mnot(sb)));
    std::vector<m::Modal> via_prem = prem;
    via_prem.push_back(m::box(m::mnot(p)));
    via = gl_verdict("[]~p |- [](p -> theta_bot) & []~theta_bot", via_prem,
                     m::mand(m::box(m::mimp(p, sb)), m::box(m::mnot(sb))), opts, budget);
    prem.push_back(m::box(m::mnot(p)));
    rl = gl_verdict("not Con(p) |- not truncate_g0(p)", prem, m::mnot(st), opts, budget);
    note_witness(rl, *witness);
  }
  return combine(name, {lr, rl, via}, "skeleton-level (GL)");
}

Verdict verify_collapse(const ASetRun& run, std::uint64_t budget, const gl::GlOptions& opts) {
  Ordinal next = run.alpha.successor();
  const std::string name = "not Con^" + next.str() + "(p) |- not /\\(Pr(p -> theta) -> Con^" + next.str() +
                           "(theta)) over A_" + run.alpha.str();
  if (!run.alpha.is_finite()) return undecided(name, "alpha is not finite", "skeleton-level (GL)");
  Formula P = sentence_p();
  Formula trunc = truncate_with(run, P, budget, [&](Formula t) { return coniter::unfold_finite(next, t); });
  auto witness = aset::refutable_witness(run);
  if (!witness || run.nodes[*witness].stage > budget)
    return undecided(name, "no refutable member numerated by stage " + std::to_string(budget), "skeleton-level (GL)");
  Formula bot_member = run.nodes[*witness].sentence;
  std::vector<m::Modal> prem = facts_for(trunc);
  inject(prem, aset::membership_atom(run.alpha, bot_member));
  prem.push_back(m::box(m::mnot(skeleton(bot_member))));
  prem.push_back(m::mnot(skeleton(coniter::unfold_finite(next, P))));
  Verdict v = gl_verdict(name, prem, m::mnot(skeleton(trunc)), opts, budget);
  note_witness(v, *witness);
  return v;
}

Verdict check_g_monotone(const GOperator& op, std::uint64_t budget, const gl::GlOptions& opts) {
  const std::string name = "g is monotone conjunct by conjunct";
  if (!op.alpha.is_finite()) return undecided(name, "alpha is not finite", "skeleton-level (GL)");
  Formula P = sentence_p(), Q = sentence_q();
  m::Modal hyp = m::box(m::mimp(skeleton(P), skeleton(Q)));
  std::vector<Verdict> parts;
  for (std::uint32_t id : members(*op.run, budget)) {
    Formula theta = op.run->nodes[id].sentence;
    Formula con = con_alpha(op.alpha, theta);
    Formula mem = aset::membership_atom(op.alpha, theta);
    Formula cp = implies(conj(mem, provable(implies(P, theta))), con);
    Formula cq = implies(conj(mem, provable(implies(Q, theta))), con);
    parts.push_back(gl_verdict("node " + std::to_string(id), {hyp}, m::mimp(skeleton(cp), skeleton(cq)), opts, budget));
  }
  return combine(name, std::move(parts), "skeleton-level (GL)");
}

Verdict check_g0_weakening(const ASetRun& run, const gl::GlOptions& opts) {
  std::vector<Verdict> parts;
  for (std::uint64_t n = 0; n < run.budget; ++n) {
    m::Modal big = skeleton(truncate_g0(run, sentence_p(), n + 1));
    m::Modal small = skeleton(truncate_g0(run, sentence_p(), n));
    parts.push_back(gl_verdict("stage " + std::to_string(n + 1) + " truncation entails stage " + std::to_string(n),
                               {big}, small, opts, n + 1));
  }
  return combine("g0 truncations weaken as the stage grows", std::move(parts), "skeleton-level (GL)");
}

ConsistencyOracle skeleton_oracle() {
  return [](Formula phi) {
    std::vector<m::Modal> parts;
    for (m::Modal f : facts_for(phi))
      if (f.box_free()) parts.push_back(f);
    parts.push_back(skeleton(phi));
    return propositionally_unsat(m::mand_all(parts)) ? Consistency::Inconsistent : Consistency::Unknown;
  };
}

Formula apply_g0_star(Formula phi, const ASetRun& run, std::uint64_t budget, const ConsistencyOracle& oracle) {
  if (!run.alpha.is_zero()) throw PreconditionError("g0* needs an A_0 run");
  if (!phi.is_sentence()) throw PreconditionError("apply_g0_star: phi is not a sentence");
  switch (oracle(phi)) {
    case Consistency::Inconsistent:
      return bot();
    case Consistency::Unknown:
      throw OracleRequired("g0*: consistency of " + print(phi) + " is not decided by the oracle");
    case Consistency::Consistent:
      break;
  }
  m::Modal s = skeleton(phi);
  std::vector<Formula> parts;
  for (std::uint32_t id : members(run, budget)) {
    Formula zeta = run.nodes[id].sentence;
    if (propositionally_unsat(m::mand(s, m::mnot(skeleton(zeta))))) parts.push_back(consistency(zeta));
  }
  return conj_all(parts);
}

}  // namespace ptlab::gops
