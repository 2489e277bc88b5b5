#include <doctest.h>

#include <cfloat>
#include <string>

#include "mcforge/cli/report.hpp"
#include "mcforge/cli/resolve.hpp"
#include "mcforge/cli/runner.hpp"
#include "mcforge/cli/scenario.hpp"

using namespace mcforge;
using namespace mcforge::cli;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_scenario(text, "s.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal scenario gets defaults") {
  const Scenario s = parse_scenario(R"({"kind": "prelie", "fixture": "so3", "suite": ["jacobi"]})");
  CHECK(s.kind == Kind::prelie);
  CHECK(s.fixture_name == "so3");
  CHECK_FALSE(s.inline_fixture.has_value());
  CHECK(s.seed == 1);
  CHECK(s.points == default_points(Kind::prelie));
  CHECK(s.tolerance("jacobi") == 1e-10);
  CHECK(s.numerics.quad_order == 32);
  CHECK(resolve_algebra(s).name() == "so3");
}

TEST_CASE("overrides") {
  const Scenario s = parse_scenario(R"({"kind": "poisson", "fixture": "so3_dual", "suite": ["realization"],
    "tolerances": {"realization": 0.5}, "sample": {"seed": 42, "points": 3}})");
  CHECK(s.tolerance("realization") == 0.5);
  CHECK(s.tolerance("jacobiator") == 1e-10);
  CHECK(s.seed == 42);
  CHECK(s.points == 3);
}

TEST_CASE("validation errors name the offending field") {
  CHECK(contains(config_error(R"({"kind": "prelie", "fixture": "so3", "suite": ["jacobi"], "extra": 1})"),
                 "unknown key \"extra\""));
  CHECK(contains(config_error(R"({"kind": "prelie", "fixture": "so3", "suite": ["jacobi"],
                                  "sample": {"seed": 1, "count": 2}})"),
                 "unknown key \"count\""));
  const std::string misspelled = config_error(R"({"kind": "prelie", "fixture": "so3", "suite": ["jacoby"]})");
  CHECK(contains(misspelled, "unknown suite \"jacoby\""));
  for (const auto& name : suite_names(Kind::prelie)) CHECK(contains(misspelled, name));
  CHECK(contains(config_error(R"({"kind": "lie", "fixture": "so3", "suite": ["jacobi"]})"), "valid kinds"));
  CHECK(contains(config_error(R"({"kind": "prelie", "fixture": "so3", "suite": []})"), "suite"));
  CHECK(contains(config_error(R"({"kind": "prelie", "fixture": "so3", "suite": ["jacobi", "jacobi"]})"),
                 "duplicate"));
  CHECK(contains(config_error(R"({"kind": "prelie", "fixture": "so3", "suite": ["jacobi"],
                                  "tolerances": {"realization": 1}})"),
                 "realization"));
  CHECK(contains(config_error(R"({"kind": "prelie", "fixture": "so4", "suite": ["jacobi"]})"), "unknown algebra"));
  CHECK(contains(config_error(R"({"kind": "prelie", "suite": ["jacobi"]})"), "fixture"));
}

TEST_CASE("parse errors carry line and column") {
  const std::string msg = config_error("{\"kind\": \"prelie\",\n  \"fixture\": }");
  CHECK(contains(msg, "s.json"));
  CHECK(contains(msg, "line 2, column 14"));
}

TEST_CASE("inline fixtures") {
  const Scenario lie = parse_scenario(R"({"kind": "prelie", "suite": ["jacobi"],
    "fixture": {"dim": 3, "coefficients": {"3,1,2": "1", "1,2,3": "1", "2,1,3": "-1"}}})");
  const prelie::PreLieAlgebra alg = resolve_algebra(lie);
  CHECK(alg.constants().data() == prelie::so3().constants().data());

  const Scenario np = parse_scenario(R"({"kind": "poisson", "suite": ["jacobiator"],
    "fixture": {"dim": 3, "coefficients": {"1,2": "x1", "1,3": "-1"}}})");
  const poisson::BivectorField bv = resolve_bivector(np);
  const Vector x = Vector::Constant(3, 0.4);
  CHECK(bv(x) == poisson::nonpoisson_r3()(x));

  const Scenario tan = parse_scenario(R"({"kind": "algebroid", "suite": ["mc_defect"],
    "fixture": {"dim": 2, "box": 5, "anchor": {"1,1": "1", "2,2": "1"}}})");
  const auto f = resolve_algebroid(tan);
  CHECK(f.algebroid.rank() == 2);
  CHECK(f.algebroid.anchor(Vector::Zero(2)) == Matrix::Identity(2, 2));

  CHECK(contains(config_error(R"({"kind": "poisson", "suite": ["jacobiator"],
    "fixture": {"dim": 3, "coefficients": {"2,1": "x1"}}})"),
                 "i < j"));
  CHECK(contains(config_error(R"({"kind": "poisson", "suite": ["jacobiator"],
    "fixture": {"dim": 3, "coefficients": {"1,2": "x1 * * x2"}}})"),
                 "fixture.coefficients.1,2"));
}

TEST_CASE("records and summary") {
  const CheckRecord ok = make_record("a", {0.0}, Vector::Ones(2), Vector::Ones(2), 0.0);
  CHECK(ok.pass);
  CHECK(ok.residual == 0.0);
  const CheckRecord bad = make_record("b", {}, Vector::Ones(1), Vector::Zero(1), 0.5);
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual == 1.0);
  const CheckRecord err = error_record("c", {1.0}, 1e-3, "boom");
  CHECK_FALSE(err.pass);
  CHECK(err.residual == DBL_MAX);
  Report r;
  r.checks = {ok, bad, err};
  CHECK(r.summary().pass == 1);
  CHECK(r.summary().fail == 2);
  CHECK(r.summary().max_residual == DBL_MAX);
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("emission") {
  Report empty;
  const auto json = nlohmann::json::parse(emit(empty, Format::json));
  CHECK(json["checks"].empty());
  CHECK(json["summary"]["pass"] == 0);
  CHECK(json["summary"]["fail"] == 0);
  const std::string table = emit(empty, Format::table);
  CHECK(contains(table, "0 pass"));

  Report mixed;
  mixed.checks = {make_record("good", {0.5}, Vector::Ones(1), Vector::Ones(1), 1e-6),
                  make_record("bad", {0.5}, Vector::Ones(1), Vector::Zero(1), 1e-6)};
  const std::string t = emit(mixed, Format::table);
  CHECK(contains(t, "FAIL"));
  CHECK(contains(t, "pass"));
  const auto j = nlohmann::json::parse(emit(mixed, Format::json));
  REQUIRE(j["checks"].size() == 2);
  for (const auto& c : j["checks"])
    CHECK(c["pass"].get<bool>() == (c["residual"].get<double>() <= c["tolerance"].get<double>()));
  CHECK(j["summary"]["fail"] == 1);
}

TEST_CASE("run: outcomes and determinism") {
  const Scenario so3 = parse_scenario(R"({"kind": "prelie", "fixture": "so3",
    "suite": ["derivative_identity", "integral_identity"], "sample": {"points": 4}})");
  const Report r = run(so3);
  CHECK(r.all_pass());
  CHECK(r.checks.size() == 8);
  CHECK(emit(r, Format::json) == emit(run(so3, {4}), Format::json));

  const Report broken = run(parse_scenario(R"({"kind": "prelie", "fixture": "broken_bracket", "suite": ["jacobi"]})"));
  CHECK_FALSE(broken.all_pass());

  const Report np = run(parse_scenario(R"({"kind": "poisson", "fixture": "nonpoisson_r3",
    "suite": ["realization"], "sample": {"points": 3}})"));
  CHECK_FALSE(np.all_pass());
  for (const auto& c : np.checks) CHECK(c.residual > c.tolerance);

  const Report cot = run(parse_scenario(R"j({"kind": "algebroid", "fixture": "cotangent(nonpoisson_r3)",
    "suite": ["connection_independence"], "sample": {"points": 2}})j"));
  REQUIRE_FALSE(cot.checks.empty());
  for (const auto& c : cot.checks) {
    CHECK_FALSE(c.pass);
    CHECK(contains(c.reason, "anchored"));
  }
}
