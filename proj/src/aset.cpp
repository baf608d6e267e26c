#include "ptlab/aset.hpp"

#include "ptlab/classify.hpp"
#include "ptlab/con_iter.hpp"
#include "ptlab/error.hpp"
#include "ptlab/evaluate.hpp"
#include "ptlab/sexpr.hpp"
#include "ptlab/skeleton.hpp"

#include <algorithm>
#include <unordered_set>

namespace ptlab::aset {

Enumeration::Enumeration(std::vector<Formula> prefix) : prefix_(std::move(prefix)) {
  for (Formula f : prefix_)
    if (!f.is_sentence()) throw PreconditionError("enumeration: prefix entry is not a sentence: " + print(f));
}

Formula Enumeration::at(std::size_t n) {
  if (n < prefix_.size()) return prefix_[n];
  std::size_t k = n - prefix_.size();
  while (cache_.size() <= k) {
    Formula f = rest_.next();
    if (std::find(prefix_.begin(), prefix_.end(), f) == prefix_.end()) cache_.push_back(f);
  }
  return cache_[k];
}

std::uint64_t Enumeration::digest(std::size_t n) {
  std::string all;
  for (std::size_t i = 0; i < n; ++i) {
    all += print(at(i));
    all += '\n';
  }
  return hash_string(all);
}

std::size_t ASetRun::numerated_through(std::uint64_t stage) const { return (std::size_t{2} << stage) - 1; }

std::vector<std::uint32_t> ASetRun::stage_nodes(std::uint64_t stage) const {
  std::vector<std::uint32_t> out;
  for (const Node& n : nodes)
    if (n.stage == stage) out.push_back(n.id);
  return out;
}

bool ASetRun::ancestor_or_self(std::uint32_t a, std::uint32_t b) const {
  for (std::int64_t x = b; x >= 0; x = nodes[static_cast<std::size_t>(x)].parent)
    if (x == a) return true;
  return false;
}

bool ASetRun::same_branch(std::uint32_t a, std::uint32_t b) const {
  return ancestor_or_self(a, b) || ancestor_or_self(b, a);
}

std::optional<std::uint32_t> ASetRun::find(Formula sentence) const {
  if (auto it = index_.find(sentence); it != index_.end()) return it->second;
  return std::nullopt;
}

nlohmann::json ASetRun::events_json() const {
  nlohmann::json events = nlohmann::json::array();
  for (const Node& n : nodes) {
    events.push_back({{"stage", n.stage},
                      {"node_id", n.id},
                      {"parent_id", n.parent < 0 ? nlohmann::json(nullptr) : nlohmann::json(n.parent)},
                      {"polarity", n.polarity > 0 ? "+" : n.polarity < 0 ? "-" : "root"},
                      {"formula_ref", n.id}});
  }
  return events;
}

std::string ASetRun::formulas_sexp() const {
  std::string out;
  for (const Node& n : nodes) {
    out += print(n.sentence);
    out += '\n';
  }
  return out;
}

nlohmann::json ASetRun::summary_json() const {
  nlohmann::json per_stage = nlohmann::json::array();
  for (std::uint64_t s = 0; s <= budget; ++s)
    per_stage.push_back({{"stage", s},
                         {"numerated", stage_nodes(s).size()},
                         {"cumulative", numerated_through(s)},
                         {"active", active_after[s].size()}});
  std::vector<std::string> ph;
  for (Formula f : phis) ph.push_back(print(f));
  return {{"alpha", alpha.str()},
          {"budget", budget},
          {"con_form", con_form == ConForm::Unfolded ? "unfolded" : "diagonal"},
          {"enumeration_digest", enumeration_digest},
          {"phis", ph},
          {"stages", per_stage}};
}

namespace {

Formula con_next(const ASetRun& run, Formula theta) {
  Ordinal next = run.alpha.successor();
  if (run.con_form == ConForm::Unfolded) return coniter::unfold_finite(next, theta);
  return coniter::con_iter(next, theta).rendered;
}

}  // namespace

ASetRun run_enumeration(ASetConfig config) {
  if (config.budget >= 40 || (std::size_t{2} << config.budget) - 1 > config.max_nodes)
    throw ResourceError("aset: budget " + std::to_string(config.budget) + " needs more than " +
                        std::to_string(config.max_nodes) + " nodes");
  ASetRun run;
  run.alpha = config.alpha;
  run.budget = config.budget;
  run.con_form = config.con_form;
  if (run.con_form == ConForm::Auto) run.con_form = config.alpha.is_finite() ? ConForm::Unfolded : ConForm::Diagonal;
  if (run.con_form == ConForm::Unfolded && !config.alpha.is_finite())
    throw PreconditionError("aset: unfolded Con^{a+1} needs a finite alpha");
  for (std::uint64_t n = 0; n < config.budget; ++n) run.phis.push_back(config.enumeration.at(n));
  run.enumeration_digest = config.enumeration.digest(config.budget);

  auto add = [&](std::int64_t parent, std::uint32_t stage, int polarity, Formula sentence) {
    Node n;
    n.id = static_cast<std::uint32_t>(run.nodes.size());
    n.parent = parent;
    n.stage = stage;
    n.polarity = polarity;
    n.sentence = sentence;
    n.active = conj(sentence, con_next(run, sentence));
    if (parent >= 0) run.nodes[static_cast<std::size_t>(parent)].children[polarity > 0 ? 0 : 1] = n.id;
    run.index_.emplace(sentence, n.id);
    run.nodes.push_back(n);
    return n.id;
  };

  add(-1, 0, 0, top());
  run.active_after.push_back({0});
  for (std::uint32_t stage = 1; stage <= config.budget; ++stage) {
    Formula phi = run.phis[stage - 1];
    std::vector<std::uint32_t> next;
    for (std::uint32_t a : run.active_after.back()) {
      Formula psi = run.nodes[a].active;
      next.push_back(add(a, stage, +1, conj(psi, phi)));
      next.push_back(add(a, stage, -1, conj(psi, neg(phi))));
    }
    run.active_after.push_back(std::move(next));
  }
  return run;
}

Formula membership_atom(const Ordinal& alpha, Formula theta) {
  return membership(EnumeratorId::ASet, {numeral(ordinal::encode(alpha)), numeral(godel_encode(theta))});
}

std::function<std::optional<bool>(Formula)> membership_evaluator(const ASetRun& run) {
  BigNat alpha_code = ordinal::encode(run.alpha);
  return [&run, alpha_code](Formula atom) -> std::optional<bool> {
    if (atom.kind() != FormulaKind::Membership || atom.index() != static_cast<std::uint32_t>(EnumeratorId::ASet))
      return std::nullopt;
    if (eval_term(atom.term(0)) != alpha_code) return std::nullopt;
    auto theta = try_godel_decode(eval_term(atom.term(1)));
    if (!theta || !run.find(*theta)) return std::nullopt;
    return true;
  };
}

namespace {

Verdict leaf(std::string claim, bool ok, std::string note = {}, std::string scope = "run log") {
  Verdict v;
  v.claim = std::move(claim);
  v.scope = std::move(scope);
  v.outcome = ok ? Outcome::Established : Outcome::Refuted;
  if (!ok && !note.empty()) v.notes.push_back(std::move(note));
  return v;
}

bool unsat(gl::Modal f) { return !gl::sat_check(gl::abstract_boxes(f)).satisfiable; }

std::vector<gl::Modal> skeletons(const ASetRun& run, SkeletonAtoms* atoms = nullptr) {
  std::vector<gl::Modal> out;
  out.reserve(run.nodes.size());
  for (const Node& n : run.nodes) out.push_back(skeleton(n.sentence, atoms));
  return out;
}

std::vector<gl::Modal> literal_facts(const SkeletonAtoms& atoms) {
  std::vector<gl::Modal> out;
  for (gl::Modal m : decided_atom_facts(atoms))
    if (m.box_free()) out.push_back(m);
  return out;
}

}  // namespace

Verdict check_structure(const ASetRun& run) {
  std::vector<Verdict> parts;

  bool counts = run.nodes.size() == run.numerated_through(run.budget);
  std::string why;
  for (std::uint64_t s = 0; s <= run.budget && counts; ++s) {
    std::size_t here = run.stage_nodes(s).size();
    std::size_t want = s == 0 ? 1 : std::size_t{1} << s;
    std::size_t cumulative = 0;
    for (const Node& n : run.nodes) cumulative += n.stage <= s;
    if (here != want || cumulative != run.numerated_through(s) || run.active_after[s].size() != std::size_t{1} << s) {
      counts = false;
      why = "stage " + std::to_string(s) + " has " + std::to_string(here) + " numerated";
    }
  }
  parts.push_back(leaf("cumulative numerated through stage n is 2^{n+1}-1, active 2^n", counts, why));

  bool root_ok = run.nodes[0].sentence == top() && run.nodes[0].parent < 0;
  bool shape = root_ok;
  for (const Node& n : run.nodes) {
    if (n.id != 0 && (n.parent < 0 || run.nodes[static_cast<std::size_t>(n.parent)].stage + 1 != n.stage)) shape = false;
    bool expanded = n.stage < run.budget;
    if (expanded != (n.children[0] >= 0 && n.children[1] >= 0)) shape = false;
    if (!expanded && (n.children[0] >= 0 || n.children[1] >= 0)) shape = false;
  }
  parts.push_back(leaf("binary tree rooted at top", shape, "tree shape violated"));

  // Each child is psi and (not) phi_n for psi the parent's active sentence.
  bool staged = true;
  for (const Node& n : run.nodes) {
    if (n.parent < 0) continue;
    const Node& p = run.nodes[static_cast<std::size_t>(n.parent)];
    Formula phi = run.phis[n.stage - 1];
    if (n.sentence != conj(p.active, n.polarity > 0 ? phi : neg(phi))) staged = false;
  }
  parts.push_back(leaf("children follow the staged rule", staged, "unexpected child sentence"));

  std::vector<gl::Modal> sk = skeletons(run);
  std::size_t bad = 0;
  for (const Node& n : run.nodes) {
    if (n.parent < 0) continue;
    if (!unsat(gl::mand(sk[n.id], gl::mnot(sk[static_cast<std::size_t>(n.parent)])))) ++bad;
  }
  parts.push_back(leaf("every child skeleton propositionally entails its parent skeleton", bad == 0,
                       std::to_string(bad) + " edges fail", "skeleton-level (SAT)"));

  bool carries = true;
  for (const Node& n : run.nodes) {
    if (n.parent < 0) continue;
    const Node& p = run.nodes[static_cast<std::size_t>(n.parent)];
    if (n.sentence.sub(0) != p.active) carries = false;
  }
  parts.push_back(leaf("immediate descendants carry the parent's Con^{a+1} conjunct", carries));
  return combine("A_" + run.alpha.str() + " structure at budget " + std::to_string(run.budget), std::move(parts));
}

Verdict check_branch_inconsistency(const ASetRun& run) {
  std::vector<gl::Modal> sk = skeletons(run);
  std::vector<char> node_sat(sk.size());
  for (std::size_t i = 0; i < sk.size(); ++i) node_sat[i] = !unsat(sk[i]);

  std::size_t cross = 0, cross_bad = 0, same = 0, same_sat = 0, same_bad = 0;
  nlohmann::json failures = nlohmann::json::array();
  for (std::uint32_t a = 0; a < sk.size(); ++a)
    for (std::uint32_t b = a + 1; b < sk.size(); ++b) {
      bool joint_sat = !unsat(gl::mand(sk[a], sk[b]));
      if (run.same_branch(a, b)) {
        ++same;
        std::uint32_t deeper = run.nodes[a].stage >= run.nodes[b].stage ? a : b;
        if (joint_sat) ++same_sat;
        if (joint_sat != static_cast<bool>(node_sat[deeper])) {
          ++same_bad;
          failures.push_back({{"pair", {a, b}}, {"kind", "same-branch"}});
        }
      } else {
        ++cross;
        if (joint_sat) {
          ++cross_bad;
          failures.push_back({{"pair", {a, b}}, {"kind", "cross-branch"}});
        }
      }
    }
  Verdict c = leaf("all " + std::to_string(cross) + " cross-branch pairs are jointly unsatisfiable", cross_bad == 0,
                   std::to_string(cross_bad) + " satisfiable", "skeleton-level (SAT)");
  Verdict s = leaf("same-branch pairs are satisfiable whenever the deeper sentence is (" + std::to_string(same_sat) +
                       " of " + std::to_string(same) + " satisfiable)",
                   same_bad == 0, std::to_string(same_bad) + " mismatches", "skeleton-level (SAT)");
  Verdict v = combine("cross-branch inconsistency in A_" + run.alpha.str(), {c, s}, "skeleton-level (SAT)");
  v.witness = nlohmann::json{{"cross_pairs", cross}, {"same_pairs", same}, {"same_satisfiable", same_sat},
                             {"failures", failures}};
  return v;
}

std::optional<std::uint32_t> refutable_witness(const ASetRun& run) {
  for (std::uint64_t n = 0; n < run.phis.size(); ++n) {
    SkeletonAtoms atoms;
    gl::Modal s = skeleton(run.phis[n], &atoms);
    std::vector<gl::Modal> fs = literal_facts(atoms);
    fs.push_back(s);
    if (!unsat(gl::mand_all(fs))) continue;
    for (std::uint32_t id : run.stage_nodes(n + 1)) {
      const Node& node = run.nodes[id];
      if (node.polarity <= 0) continue;
      SkeletonAtoms node_atoms;
      gl::Modal ns = skeleton(node.sentence, &node_atoms);
      std::vector<gl::Modal> nfs = literal_facts(node_atoms);
      nfs.push_back(ns);
      if (unsat(gl::mand_all(nfs))) return id;
    }
  }
  return std::nullopt;
}

Verdict check_refutable_member(const ASetRun& run) {
  const std::string claim = "A_" + run.alpha.str() + " has a refutable member";
  auto w = refutable_witness(run);
  if (!w) return undecided(claim, "no refutable sentence among phi_0..phi_" + std::to_string(run.budget) + "-1",
                           "skeleton-level (SAT)");
  Verdict v = leaf(claim, true, {}, "skeleton-level (SAT)");
  const Node& n = run.nodes[*w];
  v.witness = nlohmann::json{{"node_id", n.id}, {"stage", n.stage}, {"phi_index", n.stage - 1}};
  return v;
}

Verdict check_membership(const ASetRun& run) {
  auto eval = membership_evaluator(run);
  std::vector<Verdict> parts;
  bool sigma_ok = true, pi_ok = true, eval_ok = true;
  for (const Node& n : run.nodes) {
    Formula m = membership_atom(run.alpha, n.sentence);
    if (classify(m) != sigma(1)) sigma_ok = false;
    if (classify(neg(m)) != pi(1)) pi_ok = false;
    if (eval(m) != std::optional<bool>(true)) eval_ok = false;
  }
  parts.push_back(leaf("membership atoms are Sigma1", sigma_ok));
  parts.push_back(leaf("negated membership atoms are Pi1", pi_ok));
  parts.push_back(leaf("evaluator answers true for every numerated sentence", eval_ok));

  // Sentences of the next stage are not yet numerated, and the evaluator never says false.
  bool unknown_ok = true;
  for (std::uint32_t a : run.active_after.back()) {
    Formula next = conj(run.nodes[a].active, top());
    if (eval(membership_atom(run.alpha, next)).has_value()) unknown_ok = false;
  }
  if (eval(membership_atom(run.alpha.successor(), top())).has_value()) unknown_ok = false;
  parts.push_back(leaf("non-members are reported as not within budget", unknown_ok));
  return combine("A_" + run.alpha.str() + " membership atoms", std::move(parts));
}

nlohmann::json TruePath::to_json() const {
  return {{"nodes", nodes}, {"choices", choices}};
}

TruePath true_path(const ASetRun& run) {
  TruePath p;
  std::uint32_t cur = 0;
  p.nodes.push_back(cur);
  for (std::size_t n = 0; n < run.phis.size(); ++n) {
    auto v = eval_sentence(run.phis[n]);
    if (!v) throw PreconditionError("true_path: phi_" + std::to_string(n) + " does not evaluate: " + print(run.phis[n]));
    p.choices.push_back(*v);
    cur = static_cast<std::uint32_t>(run.nodes[cur].children[*v ? 0 : 1]);
    p.nodes.push_back(cur);
  }
  return p;
}

Verdict check_true_path(const ASetRun& run) {
  const std::string claim = "one active sentence per stage lies on the true path";
  TruePath p;
  try {
    p = true_path(run);
  } catch (const PreconditionError& e) {
    return undecided(claim, e.what(), "standard-model evaluation");
  }
  bool ok = p.nodes.size() == run.budget + 1;
  for (std::uint64_t s = 0; s <= run.budget && ok; ++s) {
    std::size_t on_path = 0;
    for (std::uint32_t a : run.active_after[s]) on_path += std::count(p.nodes.begin(), p.nodes.end(), a);
    if (on_path != 1 || run.nodes[p.nodes[s]].stage != s) ok = false;
    if (s > 0) {
      // the sibling is off the path
      const Node& par = run.nodes[static_cast<std::size_t>(run.nodes[p.nodes[s]].parent)];
      auto other = static_cast<std::uint32_t>(par.children[0] == p.nodes[s] ? par.children[1] : par.children[0]);
      if (std::count(p.nodes.begin(), p.nodes.end(), other) != 0) ok = false;
    }
  }
  Verdict v = leaf(claim, ok, "path violates uniqueness", "standard-model evaluation");
  v.witness = p.to_json();
  return v;
}

}  // namespace ptlab::aset
