#include "ptlab/suite.hpp"

#include "ptlab/aset.hpp"
#include "ptlab/classify.hpp"
#include "ptlab/con_iter.hpp"
#include "ptlab/diagonal.hpp"
#include "ptlab/error.hpp"
#include "ptlab/evaluate.hpp"
#include "ptlab/g_ops.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/sample.hpp"
#include "ptlab/sample_modal.hpp"
#include "ptlab/sexpr.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <functional>
#include <map>
#include <memory>

namespace ptlab::suite {

namespace {

using aset::ASetRun;
using ordinal::Ordinal;

Verdict expect(std::string claim, bool ok, std::string scope, nlohmann::json witness = nullptr,
               std::string note = {}) {
  Verdict v;
  v.claim = std::move(claim);
  v.scope = std::move(scope);
  v.outcome = ok ? Outcome::Established : Outcome::Refuted;
  if (!witness.is_null()) v.witness = std::move(witness);
  if (!note.empty()) v.notes.push_back(std::move(note));
  return v;
}

std::uint64_t budget_or(const SuiteConfig& c, std::uint64_t d) { return c.budget.value_or(d); }

// Distinct universal sentences whose skeletons are independent atoms.
std::vector<Formula> independent(std::uint64_t n, std::vector<Formula> head = {}) {
  for (std::uint64_t k = 0; k < n; ++k) head.push_back(forall(le(numeral(k), plus(bound_var(0), numeral(k)))));
  return head;
}

std::shared_ptr<const ASetRun> make_run(const Ordinal& alpha, std::uint64_t budget, std::vector<Formula> prefix) {
  aset::ASetConfig c;
  c.alpha = alpha;
  c.budget = budget;
  c.enumeration = aset::Enumeration(std::move(prefix));
  return std::make_shared<const ASetRun>(aset::run_enumeration(c));
}

std::vector<Verdict> gl_lob(const SuiteConfig& c) {
  std::vector<Verdict> out;
  gl::Modal lob = gl::parse_modal("box(box p -> p) -> box p");
  out.push_back(gl::gl_prove(lob, c.gl).verdict("GL |- " + gl::to_text(lob)));

  std::mt19937_64 rng(c.seed);
  std::size_t premise_provable = 0, failures = 0;
  nlohmann::json failing = nlohmann::json::array();
  for (int i = 0; i < 500; ++i) {
    gl::Modal f = sample::random_modal(rng, 4);
    gl::LobCheck lc = gl::lob_rule_check(f, c.gl);
    premise_provable += lc.premise.outcome == Outcome::Established;
    if (!lc.passes()) {
      ++failures;
      failing.push_back(gl::to_text(f));
    }
  }
  out.push_back(expect("Loeb rule: |- []f -> f implies |- f on 500 seeded formulas", failures == 0, "GL",
                       {{"formulas", 500}, {"premise_provable", premise_provable}, {"counterexamples", failing}}));
  return out;
}

std::vector<Verdict> godel2(const SuiteConfig& c) {
  gl::Modal f = gl::parse_modal("~box bot");
  gl::GlResult r = gl::gl_prove(f, c.gl);
  bool ok = r.outcome == Outcome::Refuted && r.countermodel && r.countermodel->worlds == 1 &&
            r.countermodel->transitive_irreflexive() && !r.countermodel->holds(f);
  nlohmann::json w = r.countermodel ? r.countermodel->to_json() : nlohmann::json(nullptr);
  return {expect("~[]bot is refuted with a one-world countermodel", ok, "skeleton-level (GL)",
                 {{"outcome", to_string(r.outcome)}, {"countermodel", w}},
                 "a skeleton refutation, not a claim about T")};
}

std::vector<Verdict> monotone_finite(const SuiteConfig& c) {
  std::vector<Verdict> out;
  for (std::uint64_t n = 0; n <= budget_or(c, 6); ++n)
    for (bool boxed : {false, true}) out.push_back(coniter::check_monotone_finite(n, boxed, c.gl));
  return out;
}

std::vector<Formula> sampled_sentences(std::uint64_t seed, std::size_t n) {
  sample::Gen g(seed);
  g.free_vars = 0;
  std::vector<Formula> out;
  while (out.size() < n) {
    Formula f = g.closed(3);
    if (f.is_sentence()) out.push_back(f);
  }
  return out;
}

std::vector<Verdict> con_base(const SuiteConfig& c) {
  std::vector<Verdict> out;
  std::vector<Formula> phis = sampled_sentences(c.seed, 10);
  std::vector<Verdict> base;
  for (Formula phi : phis) base.push_back(coniter::check_base_cases(phi, c.gl));
  out.push_back(combine("Con^0 and Con^1 base cases on 10 sampled sentences", std::move(base)));

  for (const char* a : {"0", "1", "2", "w", "w+1", "w*2"}) {
    Ordinal alpha = Ordinal::parse(a);
    nlohmann::json bad = nlohmann::json::array();
    for (Formula phi : phis)
      if (classify(coniter::con_iter(alpha, phi).rendered) != pi(1)) bad.push_back(print(phi));
    out.push_back(expect("Con*(" + alpha.str() + ", phi) is Pi1 on 10 sampled sentences", bad.empty(),
                         "syntactic classification", {{"not_pi1", bad}}));
  }
  for (const char* a : {"2", "w+1"}) out.push_back(coniter::check_unfold_once(coniter::con_iter(Ordinal::parse(a), phis[0])));
  return out;
}

std::vector<Verdict> diagonal_suite(const SuiteConfig& c) {
  std::vector<Verdict> out;
  const diagonal::FixedPointCertificate& cs = coniter::con_star();
  out.push_back(diagonal::replay(cs));
  out.push_back(diagonal::replay(cs.to_json()));

  sample::Gen g(c.seed);
  g.free_vars = 1;
  std::size_t done = 0, replayed = 0;
  nlohmann::json failing = nlohmann::json::array();
  while (done < 100) {
    Formula t = g.formula(3);
    if (t.loose() != 0 || substitute(t, 0, zero()) == t) continue;
    diagonal::FixedPointCertificate cert = diagonal::fixed_point(t, 0);
    bool ok = diagonal::replay(cert).established() && diagonal::replay(cert.to_json()).established() &&
              eval_term(cert.diagonal_term) == godel_encode(cert.result);
    if (ok)
      ++replayed;
    else
      failing.push_back(print(t));
    ++done;
  }
  out.push_back(expect("fixed point certificates replay byte-exactly for 100 seeded templates", replayed == done,
                       "certificate replay", {{"templates", done}, {"replayed", replayed}, {"failing", failing}}));
  return out;
}

std::vector<Formula> decidable_prefix(std::uint64_t n) {
  std::vector<Formula> out;
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(le(numeral((k * 7) % 5), numeral((k * 3) % 5)));
  return out;
}

std::vector<Verdict> aset_lemmas(const SuiteConfig& c) {
  std::uint64_t b = budget_or(c, 5);
  std::vector<Verdict> out;
  for (std::uint64_t a = 0; a <= 2; ++a) {
    Ordinal alpha = Ordinal::finite(a);
    std::string at = "A_" + alpha.str() + " at budget " + std::to_string(b);
    auto run = make_run(alpha, b, independent(b));
    std::vector<Verdict> parts{aset::check_structure(*run), aset::check_branch_inconsistency(*run),
                               aset::check_membership(*run)};
    const nlohmann::json& w = *parts[1].witness;
    parts.push_back(expect("every same-branch pair is satisfiable", w.at("same_satisfiable") == w.at("same_pairs"),
                           "propositional (SAT)"));
    auto with_bot = make_run(alpha, b, independent(b, {bot()}));
    parts.push_back(aset::check_refutable_member(*with_bot));
    auto decided = make_run(alpha, b, decidable_prefix(b));
    parts.push_back(aset::check_true_path(*decided));
    out.push_back(combine(at, std::move(parts)));
  }
  return out;
}

std::vector<Verdict> thm41_dir1(const SuiteConfig& c) {
  std::uint64_t b = budget_or(c, 3);
  if (b < 2) throw PreconditionError("thm41-dir1 needs budget >= 2 for a stage-2 member");
  std::vector<Verdict> out;
  for (std::uint64_t a : {1, 2}) {
    auto op = gops::make_g(make_run(Ordinal::finite(a), b, independent(b)));
    for (std::uint32_t id : {0U, 1U, 3U}) {
      Verdict v = gops::verify_thm41_dir1(op, op.run->nodes[id].sentence, b, c.gl);
      v.claim += " (alpha " + std::to_string(a) + ", node " + std::to_string(id) + ", stage " +
                 std::to_string(op.run->nodes[id].stage) + ")";
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Verdict> thm41_dir2(const SuiteConfig& c) {
  std::uint64_t b = budget_or(c, 2);
  if (b < 2) throw PreconditionError("thm41-dir2 needs budget >= 2 for a stage-2 member");
  std::vector<Verdict> out;
  for (std::uint64_t a : {1, 2}) {
    auto op = gops::make_g(make_run(Ordinal::finite(a), b, independent(b)));
    auto opb = gops::make_g(make_run(Ordinal::finite(a), b, independent(b, {bot()})));
    for (std::uint32_t id : {0U, 3U}) {
      Verdict v = gops::verify_thm41_dir2_forward(op, op.run->nodes[id].sentence, b, c.gl);
      v.claim += " (alpha " + std::to_string(a) + ", node " + std::to_string(id) + ")";
      out.push_back(std::move(v));
    }
    // Below the negative bot branch: node 5 is the first stage-2 member consistent with not bot.
    for (std::uint32_t id : {0U, 5U}) {
      Verdict v = gops::verify_thm41_dir2_converse(opb, opb.run->nodes[id].sentence, b, c.gl);
      v.claim += " (alpha " + std::to_string(a) + ", bot in the prefix, node " + std::to_string(id) + ")";
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Verdict> prop51(const SuiteConfig& c) {
  std::uint64_t top_budget = budget_or(c, 4);
  std::vector<Verdict> out;
  for (std::uint64_t b = 1; b <= top_budget; ++b) {
    auto run = make_run(Ordinal(), b, independent(b, {bot()}));
    Verdict v = gops::verify_prop51(*run, b, c.gl);
    v.claim += " at budget " + std::to_string(b);
    out.push_back(std::move(v));
  }
  std::uint64_t b = std::min<std::uint64_t>(top_budget, 2);
  out.push_back(gops::verify_collapse(*make_run(Ordinal(), b, independent(b, {bot()})), b, c.gl));

  Verdict lifted = gops::verify_collapse(*make_run(Ordinal::finite(1), b, independent(b, {bot()})), b, c.gl);
  bool refuted = lifted.outcome == Outcome::Refuted && lifted.witness && lifted.witness->contains("countermodel");
  Verdict v;
  v.claim = "the right-to-left argument fails for Con^2 over A_1 (expected refutation with countermodel)";
  v.scope = "skeleton-level (GL)";
  v.outcome = refuted ? Outcome::Established
                      : (lifted.outcome == Outcome::Undecided ? Outcome::Undecided : Outcome::Refuted);
  v.parts.push_back(std::move(lifted));
  out.push_back(std::move(v));
  return out;
}

using SuiteFn = std::function<std::vector<Verdict>(const SuiteConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"gl-lob", gl_lob},         {"godel2", godel2},         {"monotone-finite", monotone_finite},
      {"con-base", con_base},     {"diagonal", diagonal_suite}, {"aset-lemmas", aset_lemmas},
      {"thm41-dir1", thm41_dir1}, {"thm41-dir2", thm41_dir2}, {"prop51", prop51},
  };
  return r;
}

}  // namespace

std::size_t SuiteReport::count(Outcome o) const {
  std::size_t n = 0;
  for (const Verdict& v : checks) n += v.outcome == o;
  return n;
}

bool SuiteReport::passed(bool undecided_fails) const {
  return count(Outcome::Refuted) == 0 && (!undecided_fails || count(Outcome::Undecided) == 0);
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const Verdict& v : checks) cs.push_back(v.to_json());
  return {{"suite", suite},
          {"config", config},
          {"summary",
           {{"checks", checks.size()},
            {"established", count(Outcome::Established)},
            {"refuted", count(Outcome::Refuted)},
            {"undecided", count(Outcome::Undecided)}}},
          {"checks", cs}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  SuiteReport r;
  r.suite = name;
  r.config = {{"seed", config.seed},
              {"budget", config.budget ? nlohmann::json(*config.budget) : nlohmann::json(nullptr)},
              {"undecided", config.undecided_fails ? "fail" : "warn"},
              {"gl_budget", config.gl.max_sat_calls ? config.gl.max_sat_calls : gl::default_budget()}};
  if (name == "all") {
    // Budgets differ per suite; an explicit one would be wrong for most of them.
    SuiteConfig each = config;
    each.budget.reset();
    for (const auto& [id, fn] : registry()) r.checks.push_back(combine(id, fn(each)));
    return r;
  }
  for (const auto& [id, fn] : registry())
    if (id == name) {
      r.checks = fn(config);
      return r;
    }
  throw PreconditionError("unknown suite: " + name);
}

std::string fnv_hex(std::string_view s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_string(s)));
  return buf;
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::add_file(const std::string& name, std::string_view contents) {
  digests.emplace_back(name, fnv_hex(contents));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json d = nlohmann::json::object();
  for (const auto& [name, hex] : digests) d[name] = hex;
  return {{"tool_version", tool_version}, {"config", config}, {"digests", d}, {"timestamp", timestamp}};
}

}  // namespace ptlab::suite
