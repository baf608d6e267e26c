#include "ptlab/con_iter.hpp"

#include "ptlab/classify.hpp"
#include "ptlab/error.hpp"
#include "ptlab/evaluate.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/sexpr.hpp"
#include "ptlab/skeleton.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace ptlab::coniter {

namespace {

constexpr const char* kTemplate =
    "(forall b (imp (datom ord-lt b (v 0))"
    " (not (pr (not (and (sent (v 1)) (sent (v 0))))"
    " (fn sub (fn sub (v 2) (z) b) (num 1) (v 1)) (v 1)))))";

Formula body_at(const ConIterSentence& c, const Ordinal& beta) {
  return open_binder(c.rendered.sub(0), numeral(ordinal::encode(beta)));
}

}  // namespace

Formula con_star_template() {
  static const Formula t = parse_formula(kTemplate);
  return t;
}

const diagonal::FixedPointCertificate& con_star() {
  static const diagonal::FixedPointCertificate c = diagonal::fixed_point_2var(con_star_template(), 2, {0, 1});
  return c;
}

nlohmann::json ConIterSentence::to_json() const {
  nlohmann::json j = {{"alpha", alpha.str()}, {"base", print(base)}, {"rendered", print(rendered)},
                      {"class", classify(rendered).str()}};
  if (unfold_depth) j["unfold_depth"] = *unfold_depth;
  return j;
}

ConIterSentence con_iter(const Ordinal& alpha, Formula phi) {
  if (!phi.is_sentence()) throw PreconditionError("con_iter: phi is not a sentence");
  std::array<BigNat, 2> values{ordinal::encode(alpha), godel_encode(phi)};
  ConIterSentence c;
  c.alpha = alpha;
  c.base = phi;
  c.rendered = diagonal::instantiate(con_star(), values);
  if (alpha.is_finite()) c.unfold_depth = alpha.finite_value();
  return c;
}

Formula unfold_once(const ConIterSentence& c, std::size_t bound) {
  std::vector<Formula> parts;
  for (const Ordinal& beta : ordinal::predecessors_below(c.alpha, bound)) {
    Formula body = body_at(c, beta);
    parts.push_back(neg(provable(instantiate(body.sub(1).sub(0)))));
  }
  return conj_all(parts);
}

Verdict check_unfold_once(const ConIterSentence& c, std::size_t bound) {
  std::vector<Verdict> parts;
  for (const Ordinal& beta : ordinal::predecessors_below(c.alpha, bound)) {
    Verdict v;
    v.claim = "body at " + beta.str() + " is Con(phi and Con*(" + beta.str() + ", phi))";
    v.scope = "syntactic identity";
    Formula body = body_at(c, beta);
    Formula guard = body.sub(0);
    auto holds = eval_sentence(guard);
    Formula got = neg(provable(instantiate(body.sub(1).sub(0))));
    Formula want = consistency(conj(c.base, con_iter(beta, c.base).rendered));
    if (!holds || !*holds) {
      v.outcome = Outcome::Refuted;
      v.notes.push_back("ord-lt guard does not evaluate to true");
    } else if (print(got) != print(want)) {
      v.outcome = Outcome::Refuted;
      v.notes.push_back("evaluated body differs");
    } else {
      v.outcome = Outcome::Established;
    }
    parts.push_back(std::move(v));
  }
  return combine("Con*(" + c.alpha.str() + ", phi) unfolds once", std::move(parts), "syntactic identity");
}

Formula unfold_finite(const Ordinal& alpha, Formula phi) {
  if (!alpha.is_finite()) throw PreconditionError("unfold_finite: " + alpha.str() + " is not finite");
  return unfold_finite(alpha.finite_value(), phi);
}

Formula unfold_finite(std::uint64_t n, Formula phi) {
  if (!phi.is_sentence()) throw PreconditionError("unfold_finite: phi is not a sentence");
  Formula acc = top();
  for (std::uint64_t k = 0; k < n; ++k) {
    Formula part = consistency(conj(phi, acc));
    acc = k == 0 ? part : conj(acc, part);
  }
  return acc;
}

gl::Modal con_modal(std::uint64_t n, gl::Modal a) {
  gl::Modal acc = gl::mtop();
  for (std::uint64_t k = 0; k < n; ++k) {
    gl::Modal part = gl::mnot(gl::box(gl::mnot(gl::mand(a, acc))));
    acc = k == 0 ? part : gl::mand(acc, part);
  }
  return acc;
}

Verdict check_monotone_finite(std::uint64_t n, bool boxed, const gl::GlOptions& opts) {
  gl::Modal p = gl::atom("p"), q = gl::atom("q");
  gl::Modal step = gl::mimp(con_modal(n, p), con_modal(n, q));
  if (boxed) step = gl::box(step);
  gl::Modal f = gl::mimp(gl::box(gl::mimp(p, q)), step);
  std::string claim = "GL |- " + to_text(f);
  return gl::gl_prove(f, opts).verdict(claim);
}

Verdict check_base_cases(Formula phi, const gl::GlOptions& opts) {
  std::vector<Verdict> parts;
  auto syntactic = [&](std::string claim, bool ok, std::string note) {
    Verdict v;
    v.claim = std::move(claim);
    v.scope = "syntactic identity";
    v.outcome = ok ? Outcome::Established : Outcome::Refuted;
    if (!ok) v.notes.push_back(std::move(note));
    parts.push_back(std::move(v));
  };

  syntactic("unfold_finite(0, phi) is the empty conjunction", unfold_finite(0, phi) == top(), "not top");
  syntactic("Con*(0, phi) unfolds to the empty conjunction", unfold_once(con_iter(Ordinal(), phi)) == top(),
            "predecessors below 0 found");

  gl::Modal a = skeleton(phi);
  gl::Modal con1 = skeleton(unfold_finite(1, phi));
  gl::Modal f = gl::miff(con1, gl::dia(a));
  parts.push_back(gl::gl_prove(f, opts).verdict("GL |- " + to_text(f)));

  ConIterSentence c1 = con_iter(Ordinal::finite(1), phi);
  Formula direct = consistency(conj(phi, con_iter(Ordinal(), phi).rendered));
  syntactic("skeleton of Con*(1, phi) unfolded once equals skeleton of Con(phi and Con^0(phi))",
            skeleton(unfold_once(c1)) == skeleton(direct), "skeletons differ");
  return combine("Con^0 and Con^1 base cases", std::move(parts));
}

}  // namespace ptlab::coniter
