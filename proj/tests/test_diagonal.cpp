#include "ptlab/sample.hpp"
#include "ptlab/diagonal.hpp"
#include "ptlab/error.hpp"
#include "ptlab/evaluate.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/sexpr.hpp"
#include "ptlab/skeleton.hpp"

#include <doctest.h>

using namespace ptlab;
using namespace ptlab::diagonal;
namespace gl = ptlab::gl;

namespace {

Formula f(const char* s) { return parse_formula(s); }

}  // namespace

TEST_CASE("skeleton of consistency statements") {
  CHECK(skeleton(f("(not (pr (bot)))")) == gl::parse_modal("~box bot"));

  Formula phi = f("(forall x (= (+ x (z)) x))");
  SkeletonAtoms atoms;
  gl::Modal s = skeleton(conj(phi, consistency(phi)), &atoms);
  gl::Modal a = gl::atom(skeleton_atom_name(phi));
  CHECK(s == gl::mand(a, gl::dia(a)));
  REQUIRE(atoms.by_name.size() == 1);
  CHECK(atoms.by_name.begin()->second == phi);

  // A template with closed arguments is read as the sentence it quotes.
  Formula quoted = f("(pr (imp (sent (v 0)) (sent (v 1))) (num 16) (num 17))");
  CHECK(skeleton(quoted) == gl::parse_modal("box (top -> bot)"));
  // An open argument leaves the atom opaque.
  Formula open = f("(forall x (pr (sent (v 0)) x))");
  CHECK(skeleton(open).kind() == gl::MKind::Atom);
}

TEST_CASE("skeleton is a boolean homomorphism") {
  sample::Gen g(11);
  for (int i = 0; i < 300; ++i) {
    Formula x = g.closed(3), y = g.closed(3);
    CHECK(skeleton(conj(x, y)) == gl::mand(skeleton(x), skeleton(y)));
    CHECK(skeleton(disj(x, y)) == gl::mor(skeleton(x), skeleton(y)));
    CHECK(skeleton(implies(x, y)) == gl::mimp(skeleton(x), skeleton(y)));
    CHECK(skeleton(neg(x)) == gl::mnot(skeleton(x)));
  }
}

TEST_CASE("decided atom facts") {
  SkeletonAtoms atoms;
  skeleton(f("(and (= (z) (s (z))) (and (le (z) (num 3)) (forall x (= x x))))"), &atoms);
  auto facts = decided_atom_facts(atoms);
  REQUIRE(facts.size() == 4);
  gl::Modal false_eq = gl::atom(skeleton_atom_name(f("(= (z) (s (z)))")));
  gl::Modal true_le = gl::atom(skeleton_atom_name(f("(le (z) (num 3))")));
  int seen = 0;
  for (gl::Modal m : facts) {
    if (m == gl::mnot(false_eq) || m == gl::box(gl::mnot(false_eq))) ++seen;
    if (m == true_le || m == gl::box(true_le)) ++seen;
  }
  CHECK(seen == 4);
}

TEST_CASE("Goedel sentence") {
  FixedPointCertificate c = fixed_point(f("(not (pr (sent (v 0)) (v 0)))"), 0);
  CHECK(replay(c).established());
  Formula gamma = c.result;
  CHECK(gamma.is_sentence());
  // The provability atom of gamma quotes gamma itself.
  REQUIRE(gamma.kind() == FormulaKind::Not);
  CHECK(instantiate(gamma.sub(0)) == gamma);
  // The self-reference is cut at the inner occurrence.
  CHECK(skeleton(gamma) == gl::mnot(gl::box(gl::atom(skeleton_atom_name(gamma)))));
}

TEST_CASE("fixed point of x = x") {
  FixedPointCertificate c = fixed_point(f("(= (v 0) (v 0))"), 0);
  CHECK(replay(c).established());
  REQUIRE(c.result.kind() == FormulaKind::Eq);
  CHECK(eval_term(c.result.term(0)) == godel_encode(c.result));
  CHECK(eval_term(c.result.term(1)) == godel_encode(c.result));
  CHECK(eval_sentence(c.result) == std::optional<bool>(true));
}

TEST_CASE("fixed point preconditions") {
  CHECK_THROWS_AS(fixed_point(f("(= (z) (z))"), 0), PreconditionError);
  CHECK_THROWS_AS(fixed_point(f("(= (v 0) (v 1))"), 0), PreconditionError);
  // A hole mentioned only inside a quoted template does not occur.
  CHECK_THROWS_AS(fixed_point(f("(pr (= (v 0) (v 0)) (z))"), 0), PreconditionError);
  CHECK_THROWS_AS(fixed_point_2var(f("(= (v 0) (v 1))"), 0, {2}), PreconditionError);
  CHECK_NOTHROW(fixed_point_2var(f("(= (v 0) (v 1))"), 0, {1}));
}

TEST_CASE("certificates replay from JSON and catch tampering") {
  FixedPointCertificate c = fixed_point(f("(imp (le (v 0) (num 5)) (pr (sent (v 0)) (v 0)))"), 0);
  nlohmann::json j = c.to_json();
  CHECK(replay(j).established());
  REQUIRE(j["trace"].size() == 6);
  CHECK(j["trace"][0]["step"] == "substitute");
  CHECK(j["trace"][1]["step"] == "encode");
  CHECK(j["trace"][2]["step"] == "numeral");

  nlohmann::json bad = j;
  bad["result_code"] = to_decimal(c.result_code + 1);
  CHECK(replay(bad).outcome == Outcome::Refuted);
  bad = j;
  bad["core"] = "(top)";
  CHECK(replay(bad).outcome == Outcome::Refuted);
  bad = j;
  bad["result"] = print(fixed_point(f("(= (v 0) (v 0))"), 0).result);
  CHECK(replay(bad).outcome == Outcome::Refuted);
}

TEST_CASE("random templates replay") {
  sample::Gen g(2024);
  g.free_vars = 1;
  int done = 0;
  while (done < 100) {
    Formula t = g.formula(3);
    if (t.loose() != 0 || substitute(t, 0, zero()) == t) continue;
    FixedPointCertificate c = fixed_point(t, 0);
    Verdict v = replay(c);
    CHECK_MESSAGE(v.established(), print(t));
    CHECK(replay(c.to_json()).established());
    // Independent path: the evaluator computes the diagonal term.
    CHECK(eval_term(c.diagonal_term) == godel_encode(c.result));
    ++done;
  }
}

TEST_CASE("parametrized fixed point") {
  FixedPointCertificate c = fixed_point_2var(f("(imp (= (v 0) (v 1)) (pr (sent (v 0)) (v 2)))"), 2, {0, 1});
  CHECK(replay(c).established());
  std::array<BigNat, 2> vals{7, 9};
  CHECK(replay_instance(c, vals).established());
  Formula inst = diagonal::instantiate(c, vals);
  CHECK(inst.is_sentence());
}
