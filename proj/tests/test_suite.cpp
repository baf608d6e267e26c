#include "ptlab/error.hpp"
#include "ptlab/suite.hpp"

#include <doctest.h>

using namespace ptlab;
using namespace ptlab::suite;

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(names.size() == 10);
  CHECK(names.back() == "all");
  CHECK_THROWS_AS(run_suite("no-such-suite"), PreconditionError);
}

TEST_CASE("small suites pass and reports are stable") {
  for (const char* s : {"gl-lob", "godel2", "monotone-finite", "con-base", "prop51"}) {
    SuiteReport a = run_suite(s), b = run_suite(s);
    CHECK_MESSAGE(a.passed(true), s);
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.to_json()["summary"]["checks"] == a.checks.size());
  }
  SuiteConfig c;
  c.budget = 2;
  CHECK(run_suite("monotone-finite", c).checks.size() == 6);
  c.budget = 1;
  CHECK_THROWS_AS(run_suite("thm41-dir2", c), PreconditionError);
}

TEST_CASE("seed changes sampled checks only") {
  SuiteConfig a, b;
  b.seed = 99;
  auto ja = run_suite("gl-lob", a).to_json(), jb = run_suite("gl-lob", b).to_json();
  CHECK(ja["checks"][0] == jb["checks"][0]);
  CHECK(ja["config"]["seed"] != jb["config"]["seed"]);
}

TEST_CASE("undecided counts as failure only when asked") {
  SuiteReport r;
  Verdict v;
  v.claim = "x";
  r.checks.push_back(v);
  CHECK_FALSE(r.passed(true));
  CHECK(r.passed(false));
  r.checks.back().outcome = Outcome::Refuted;
  CHECK_FALSE(r.passed(false));
}

TEST_CASE("manifest") {
  RunManifest m;
  m.add_file("a.json", "{}");
  m.timestamp = "2026-01-01T00:00:00Z";
  auto j = m.to_json();
  CHECK(j["digests"]["a.json"] == fnv_hex("{}"));
  CHECK(j["digests"]["a.json"].get<std::string>().size() == 16);
  CHECK(fnv_hex("") == "cbf29ce484222325");
  CHECK(utc_timestamp().size() == 20);
}
