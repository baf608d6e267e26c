#include "ptlab/sample_modal.hpp"
#include "oracles.hpp"
#include "ptlab/error.hpp"
#include "ptlab/gl.hpp"

#include <doctest.h>

using namespace ptlab;
using namespace ptlab::gl;

namespace {

Modal m(const char* s) { return parse_modal(s); }

}  // namespace

TEST_CASE("modal syntax round trip") {
  for (const char* s : {"box (box p -> p) -> box p", "~box bot", "p & q | r -> s", "box ~(p & ~box q)",
                        "(p -> q) -> r", "top", "~~p"}) {
    Modal f = m(s);
    CHECK(parse_modal(to_text(f)) == f);
  }
  CHECK(m("dia p") == mnot(box(mnot(atom("p")))));
  CHECK(m("[]p <-> <>p") == miff(box(atom("p")), dia(atom("p"))));
  CHECK(m("p -> q -> r") == mimp(atom("p"), mimp(atom("q"), atom("r"))));
  CHECK_THROWS_AS(m("p &"), ParseError);
  CHECK_THROWS_AS(m("P"), ParseError);
}

TEST_CASE("Loeb axiom") {
  auto r = gl_prove(m("box(box p -> p) -> box p"));
  REQUIRE(r.outcome == Outcome::Established);
  REQUIRE(r.proof);
  CHECK(check_proof(*r.proof));
  CHECK(oracle::gl_valid_by_types(m("box(box p -> p) -> box p")));
}

TEST_CASE("consistency is not provable") {
  auto r = gl_prove(m("~box bot"));
  REQUIRE(r.outcome == Outcome::Refuted);
  REQUIRE(r.countermodel);
  CHECK(r.countermodel->worlds == 1);
  CHECK(r.countermodel->transitive_irreflexive());
  CHECK_FALSE(r.countermodel->holds(m("~box bot")));
}

TEST_CASE("monotonicity of consistency") {
  Modal f = m("box(p -> q) -> (~box~p -> ~box~q)");
  CHECK(gl_prove(f).outcome == Outcome::Established);
  CHECK_FALSE(oracle::falsifiable_small(f, 3));
  CHECK(oracle::gl_valid_by_types(f));
}

TEST_CASE("entailment examples") {
  std::vector<Modal> prem{m("box ~p")};
  CHECK(gl_entails(prem, m("box(p -> q)")).outcome == Outcome::Established);
  CHECK(gl_entails({}, mtop()).outcome == Outcome::Established);
  std::vector<Modal> prem2{m("a"), m("box a")};
  auto r = gl_entails(prem2, m("~box~a"));
  CHECK(r.outcome == Outcome::Refuted);
  REQUIRE(r.countermodel);
  CHECK(r.countermodel->holds(m("a & box a")));
  CHECK_FALSE(r.countermodel->holds(m("~box~a")));
}

TEST_CASE("textbook GL facts") {
  CHECK(gl_prove(m("box p -> box box p")).outcome == Outcome::Established);
  CHECK(gl_prove(m("box p -> p")).outcome == Outcome::Refuted);
  CHECK(gl_prove(m("box(~box bot) -> box bot")).outcome == Outcome::Established);
  CHECK(gl_prove(m("~box bot -> ~box ~box bot")).outcome == Outcome::Established);
  CHECK(gl_prove(m("box(p <-> ~box p) -> box(p <-> ~box bot)")).outcome == Outcome::Established);
  CHECK(gl_prove(m("dia top")).outcome == Outcome::Refuted);
}

TEST_CASE("Loeb rule check") {
  CHECK(lob_rule_check(mtop()).premise.outcome == Outcome::Established);
  CHECK(lob_rule_check(mtop()).conclusion.outcome == Outcome::Established);
  auto lc = lob_rule_check(m("box bot -> bot"));
  CHECK(lc.premise.outcome == Outcome::Refuted);
  CHECK(lc.passes());
  std::mt19937_64 rng(500);
  for (int i = 0; i < 500; ++i) CHECK(lob_rule_check(sample::random_modal(rng, 4)).passes());
}

TEST_CASE("prover agrees with the type oracle on random formulas") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 3000; ++i) {
    Modal f = sample::random_modal(rng, 5);
    auto r = gl_prove(f);
    REQUIRE(r.outcome != Outcome::Undecided);
    auto cm = oracle::TypeOracle(f).countermodel();
    CHECK((r.outcome == Outcome::Established) == !cm.has_value());
    if (cm) {
      CHECK(cm->transitive_irreflexive());
      CHECK_FALSE(cm->holds(f));
    }
    if (r.countermodel) {
      CHECK(r.countermodel->transitive_irreflexive());
      CHECK_FALSE(r.countermodel->holds(f));
    }
  }
}

TEST_CASE("small-frame brute force never contradicts a proof") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    Modal f = sample::random_modal(rng, 4, 2);
    if (gl_prove(f).outcome == Outcome::Established) CHECK_FALSE(oracle::falsifiable_small(f, 3));
  }
}

TEST_CASE("necessitation closure") {
  std::mt19937_64 rng(29);
  int proved = 0;
  for (int i = 0; i < 2000 && proved < 100; ++i) {
    Modal f = sample::random_modal(rng, 4);
    if (gl_prove(f).outcome != Outcome::Established) continue;
    ++proved;
    CHECK(gl_prove(box(f)).outcome == Outcome::Established);
  }
  CHECK(proved > 10);
}

TEST_CASE("proof objects are rejected when tampered") {
  auto r = gl_prove(m("box(box p -> p) -> box p"));
  REQUIRE(r.proof);
  GlProof p = *r.proof;
  p.formula = m("box p -> p");
  CHECK_FALSE(check_proof(p));
}

TEST_CASE("budget exhaustion is reported, not guessed") {
  GlOptions o;
  o.max_sat_calls = 1;
  auto r = gl_prove(m("box(box p -> p) -> box p"), o);
  CHECK(r.outcome == Outcome::Undecided);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("sat_check") {
  CHECK_FALSE(sat_check(m("a & ~a")).satisfiable);
  CHECK_FALSE(sat_check(m("(a & b) & (a & ~b)")).satisfiable);
  auto r = sat_check(m("a & ~b"));
  CHECK(r.satisfiable);
  CHECK(r.model == std::vector<std::pair<std::string, bool>>{{"a", true}, {"b", false}});
  CHECK_THROWS_AS(sat_check(m("box a")), PreconditionError);
  Modal abs = abstract_boxes(m("box a & ~box a"));
  CHECK(abs.box_free());
  CHECK_FALSE(sat_check(abs).satisfiable);
}

TEST_CASE("sat_check agrees with truth tables over four atoms") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 5000; ++i) {
    Modal f = sample::random_box_free(rng, 1 + static_cast<int>(i % 6), 4);
    auto r = sat_check(f);
    CHECK(r.satisfiable == oracle::satisfiable_by_table(f));
  }
}
