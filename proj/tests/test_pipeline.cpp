#include "doctest.h"
#include "pcabel/error.hpp"
#include "pcabel/export.hpp"
#include "pcabel/pipeline.hpp"

using namespace pcabel;

namespace {

const char* kGolden = "0->012 1->112002 2->";

PipelineConfig light_check(std::size_t depth) {
  PipelineConfig c;
  c.check = true;
  c.check_depth = depth;
  c.policy = oracle::StabilityPolicy{1000, 8, 1};
  return c;
}

PipelineConfig no_check() {
  PipelineConfig c;
  c.check = false;
  return c;
}

}  // namespace

TEST_CASE("golden pipeline artifacts") {
  std::vector<std::string> stages;
  auto config = no_check();
  config.on_stage = [&](const std::string& s) { stages.push_back(s); };
  auto r = run_pipeline(parse_morphism(kGolden), 0, config);
  CHECK(stages == std::vector<std::string>{"validate", "uniformize", "periodicity", "certify", "cuts", "prefix",
                                           "profile", "dfao", "describe"});
  CHECK(r.eigenvalue == 3);
  CHECK(r.g.to_string() == "0->01 1->1100");
  CHECK(r.presentation_letters == 9);
  CHECK(r.presentation.uniform.domain().size() == 7);
  CHECK(r.word_aperiodic);
  REQUIRE(r.certificate);
  CHECK(r.certificate->C == 2);
  CHECK(r.description.compact() == "135(377)^w");
  CHECK(r.profile.vectors.size() == 10);
  CHECK(r.checks.empty());

  REQUIRE(r.dfao);
  CHECK(dfao_from_json(to_json(*r.dfao)) == *r.dfao);
  REQUIRE(r.cuts);
  CHECK(equivalent(automaton_from_json(to_json(*r.cuts)), *r.cuts));
}

TEST_CASE("reports are deterministic") {
  auto f = parse_morphism(kGolden);
  auto a = run_pipeline(f, 0, no_check());
  auto b = run_pipeline(f, 0, no_check());
  CHECK(a.to_json() == b.to_json());
  CHECK(to_walnut(*a.dfao) == to_walnut(*b.dfao));
  CHECK(to_dot(*a.cuts) == to_dot(*b.cuts));
}

TEST_CASE("oracle checks pass on small inputs") {
  auto tm = run_pipeline(parse_morphism("0->01 1->10"), 0, light_check(500));
  CHECK(tm.description.compact() == "1(23)^w");
  CHECK(tm.checks.size() == 3);

  // seed 1 of the golden morphism; only agreement with the oracle is asserted
  auto other = run_pipeline(parse_morphism(kGolden), 1, light_check(1000));
  CHECK(other.seed == 1);
  CHECK(other.checks.size() == 3);
}

TEST_CASE("degenerate path") {
  auto aa = run_pipeline(parse_morphism("a->aa"), 0, light_check(2000));
  CHECK(aa.degenerate());
  CHECK_FALSE(aa.dfao);
  CHECK(aa.description.compact() == "(1)^w");
  CHECK(aa.checks.size() == 1);

  auto ab = run_pipeline(parse_morphism("a->ab b->ab"), 0, light_check(2000));
  CHECK(ab.degenerate());
  REQUIRE(ab.word_period);
  CHECK(ab.word_period->period == 2);
  CHECK(ab.description.compact() == "(12)^w");

  auto mortal = run_pipeline(parse_morphism("a->abc b->abc c->"), 0, light_check(2000));
  CHECK(mortal.degenerate());
  CHECK(mortal.f.domain().size() == 3);
}

TEST_CASE("stage errors keep their kind") {
  auto expect_stage = [](const char* spec, Letter a, ErrorKind kind, const char* stage) {
    try {
      run_pipeline(parse_morphism(spec), a, no_check());
      FAIL("expected an error for " << spec);
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
      CHECK(std::string(e.what()).rfind(std::string("stage ") + stage, 0) == 0);
    }
  };
  expect_stage("0->01 1->0", 0, ErrorKind::kInput, "validate");
  expect_stage("0->00 1->11", 0, ErrorKind::kInput, "validate");
  expect_stage(kGolden, 2, ErrorKind::kInput, "validate");

  auto tight = no_check();
  tight.certify.c_max = 1;
  try {
    run_pipeline(parse_morphism(kGolden), 0, tight);
    FAIL("expected inconclusive certification");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInconclusive);
    CHECK(std::string(e.what()).rfind("stage certify", 0) == 0);
  }
}
