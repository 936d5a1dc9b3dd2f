#include "doctest.h"
#include "detvar/commands.hpp"
#include "detvar/worked_examples.hpp"

using namespace detvar;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    parse_state_text(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("exact state files round-trip") {
  for (int which : {1, 2, 3}) {
    const ExactState s = build_example(which);
    const StateFile f = parse_state(state_to_json(s));
    REQUIRE(f.exact());
    const auto& back = std::get<ExactState>(f.state);
    CHECK(density_of(back) == density_of(s));
    CHECK(back.label == s.label);
  }
}

TEST_CASE("floating scalars and density-only files give approx states") {
  const StateFile f = parse_state_text(R"({"m":1,"n":2,"ensemble":[{"weight":1,"vector":[0.6,{"re":0,"im":0.8}]}]})");
  CHECK_FALSE(f.exact());
  const StateFile d = parse_state_text(
      R"({"m":2,"n":2,"density":[["1/4",0,0,0],[0,"1/4",0,0],[0,0,"1/4",0],[0,0,0,"1/4"]]})");
  CHECK_FALSE(d.exact());
  const Json report = analyze_state(d, "x");
  CHECK(report["mode"] == "approx");
  CHECK(report["varieties"][0]["verdict"]["tag"] == "Empty");
}

TEST_CASE("parse errors name the offending field") {
  CHECK(parse_error_of(R"({"n":2,"ensemble":[]})").find("'m'") != std::string::npos);
  CHECK(parse_error_of(R"({"m":1,"n":2,"ensemble":[{"weight":"1","vector":[1]}]})").find("ensemble[0].vector") !=
        std::string::npos);
  CHECK(parse_error_of(R"({"m":1,"n":1,"ensemble":[{"weight":"1","vector":[{"re":"1/0"}]}]})")
            .find("ensemble[0].vector[0].re") != std::string::npos);
  CHECK(parse_error_of(R"({"m":1,"n":1,"ensemble":[{"weight":{"re":"1","im":"1"},"vector":[1]}]})")
            .find("weight") != std::string::npos);
  CHECK(parse_error_of(R"({"m":1,"n":1,"ensemble":[],"density":[]})").find("exactly one") != std::string::npos);
  CHECK_FALSE(parse_error_of("{not json").empty());
  CHECK_THROWS_AS(parse_state_text(R"({"m":1,"n":1,"ensemble":[{"weight":"1/2","vector":["1"]}]})"), Error);
}

TEST_CASE("digest is 64-bit FNV-1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("witness survives serialization bit for bit") {
  const Variety v = build_variety(build_example(2));
  const auto verdict = linearity_decide(v);
  REQUIRE(verdict.witness);
  const Json text = Json::parse(to_json(*verdict.witness).dump());
  const Witness w = witness_from_json(text);
  CHECK(w.point == verdict.witness->point);
  CHECK(w.probe == verdict.witness->probe);
  CHECK(w.residual == verdict.witness->residual);
  const auto check = recheck_witness(v, w);
  CHECK(check.valid);
  CHECK(check.probe_residual == w.residual);
}

TEST_CASE("polynomials survive serialization") {
  const auto g = essential_generator(build_variety(build_example(2, 3, 3, "1/2")));
  REQUIRE(g);
  CHECK(poly_from_json(Json::parse(to_json(*g).dump()), "p") == *g);
}

TEST_CASE("analysis reports are deterministic") {
  StateFile f;
  f.state = build_example(2);
  const std::string a = analyze_state(f, "d").dump();
  const std::string b = analyze_state(f, "d").dump();
  CHECK(a == b);
  const Json j = Json::parse(a);
  CHECK(j["schema"] == "detvar/1");
  CHECK(j["conclusion"] == "entangled");
  CHECK_FALSE(j.contains("runtime_seconds"));
}

TEST_CASE("compare rejects mismatched dimensions and maps exit codes") {
  StateFile a, b;
  a.state = build_example(1, 2, 2);
  b.state = build_example(1, 3, 3);
  try {
    compare_states(a, b);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
    CHECK(exit_code_for(e.code()) == 2);
  }
  CHECK(exit_code_for(ErrorCode::InconsistentRepresentations) == 3);
  CHECK(exit_code_for(ErrorCode::SamplingExhausted) == 4);

  const Json same = compare_states(b, b);
  CHECK(same["spectra"]["all_equal"] == true);
  CHECK(same["lu_comparison"] == "NotDistinguished");
}

TEST_CASE("property suite on small dimensions") {
  const PropertySummary s = property_suite(2, 2, 6, 3);
  CHECK(s.all_pass());
  CHECK(s.covariance.passed == 6);
  CHECK(s.separable.nonlinear == 0);
}
