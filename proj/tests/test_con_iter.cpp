#include "ptlab/sample.hpp"
#include "ptlab/classify.hpp"
#include "ptlab/con_iter.hpp"
#include "ptlab/error.hpp"
#include "ptlab/evaluate.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/sexpr.hpp"
#include "ptlab/skeleton.hpp"

#include <doctest.h>

using namespace ptlab;
using namespace ptlab::coniter;
using ordinal::Ordinal;
namespace gl = ptlab::gl;

namespace {

Formula f(const char* s) { return parse_formula(s); }

std::vector<Formula> sample_sentences(int n) {
  sample::Gen g(77);
  std::vector<Formula> out{f("(= (z) (z))"), f("(bot)")};
  while (static_cast<int>(out.size()) < n) out.push_back(g.closed(3));
  return out;
}

}  // namespace

TEST_CASE("Con* template is a replayable fixed point") {
  CHECK(classify(forall_over(0, forall_over(1, forall_over(2, con_star_template())))) == pi(1));
  CHECK(diagonal::replay(con_star()).established());
  CHECK(diagonal::replay(con_star().to_json()).established());
  std::array<BigNat, 2> vals{ordinal::encode(Ordinal::finite(2)), godel_encode(f("(= (z) (z))"))};
  CHECK(diagonal::replay_instance(con_star(), vals).established());
}

TEST_CASE("Con^a is Pi1") {
  CHECK(classify(con_iter(Ordinal::omega(), f("(= (z) (z))")).rendered) == pi(1));
  for (const char* a : {"0", "1", "2", "w", "w+1", "w*2"})
    for (Formula phi : sample_sentences(10)) {
      ConIterSentence c = con_iter(Ordinal::parse(a), phi);
      CHECK(c.rendered.is_sentence());
      CHECK(classify(c.rendered) == pi(1));
    }
  CHECK_THROWS_AS(con_iter(Ordinal(), f("(= (v 0) (z))")), PreconditionError);
}

TEST_CASE("Con^0 has no witnesses") {
  ConIterSentence c = con_iter(Ordinal(), f("(top)"));
  CHECK(unfold_once(c) == top());
  // The guard ord-lt(b, code 0) fails on every tested b.
  for (std::uint64_t b = 0; b < 4096; ++b) {
    Formula guard = open_binder(c.rendered.sub(0), numeral(b)).sub(0);
    REQUIRE(eval_sentence(guard) == std::optional<bool>(false));
  }
}

TEST_CASE("unfolding the fixed point once") {
  Formula phi = f("(forall x (le (z) x))");
  for (const char* a : {"1", "2", "3", "w", "w+1", "w*2", "w^w"}) {
    ConIterSentence c = con_iter(Ordinal::parse(a), phi);
    Verdict v = check_unfold_once(c, 4);
    CHECK_MESSAGE(v.established(), a);
  }
  // Con^1 unfolded once is literally Con(phi and Con^0(phi)).
  ConIterSentence c1 = con_iter(Ordinal::finite(1), phi);
  CHECK(unfold_once(c1) == consistency(conj(phi, con_iter(Ordinal(), phi).rendered)));
}

TEST_CASE("finite unfoldings") {
  Formula phi = f("(forall x (le (z) x))");
  gl::Modal a = skeleton(phi);
  CHECK(unfold_finite(0, phi) == top());
  CHECK(unfold_finite(1, phi) == consistency(conj(phi, top())));
  CHECK(skeleton(unfold_finite(2, phi)) ==
        gl::mand(gl::dia(gl::mand(a, gl::mtop())), gl::dia(gl::mand(a, gl::dia(gl::mand(a, gl::mtop()))))));
  CHECK_THROWS_AS(unfold_finite(Ordinal::omega(), phi), PreconditionError);
  CHECK(unfold_finite(Ordinal::finite(3), phi) == unfold_finite(3, phi));

  for (std::uint64_t n = 0; n <= 8; ++n) {
    CHECK(skeleton(unfold_finite(n, phi)) == con_modal(n, a));
    CHECK(classify(unfold_finite(n, phi)) == (n == 0 ? delta(0) : pi(1)));
  }

  // Shared structure: each extra level adds a constant number of distinct nodes.
  std::vector<std::size_t> sizes;
  for (std::uint64_t n = 1; n <= 40; ++n) sizes.push_back(dag_size(unfold_finite(n, phi)));
  for (std::size_t i = 2; i < sizes.size(); ++i) CHECK(sizes[i] - sizes[i - 1] == sizes[1] - sizes[0]);
  CHECK(tree_size(unfold_finite(20, phi)) > 100000);
}

TEST_CASE("Con^1 is Con in GL") {
  gl::Modal a = gl::atom("a");
  gl::Modal f1 = gl::miff(con_modal(1, a), gl::dia(a));
  CHECK(gl::gl_prove(f1).outcome == Outcome::Established);
  CHECK(check_base_cases(f("(forall x (le (z) x))")).established());
  CHECK(check_base_cases(f("(= (z) (s (z)))")).established());
}

TEST_CASE("iterates weaken downward") {
  gl::Modal a = gl::atom("a");
  for (std::uint64_t n = 0; n < 5; ++n) {
    CHECK(gl::gl_prove(gl::mimp(con_modal(n + 1, a), con_modal(n, a))).outcome == Outcome::Established);
    // and strictly: Con^n does not give Con^{n+1}
    CHECK(gl::gl_prove(gl::mimp(con_modal(n, a), con_modal(n + 1, a))).outcome == Outcome::Refuted);
  }
}

TEST_CASE("finite monotonicity") {
  for (std::uint64_t n = 0; n <= 4; ++n) {
    CHECK(check_monotone_finite(n, false).established());
    CHECK(check_monotone_finite(n, true).established());
  }
  gl::Modal f0 = gl::parse_modal("box (p -> q) -> (top -> top)");
  CHECK(check_monotone_finite(0).claim == "GL |- " + gl::to_text(f0));
}
