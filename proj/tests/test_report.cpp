#include <algorithm>
#include <sstream>

#include "axtherm/errors.hpp"
#include "axtherm/report.hpp"
#include "doctest.h"

using namespace axtherm;

namespace {

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

SuiteConfig quick(std::set<std::string> suites) {
  SuiteConfig c;
  c.suites = std::move(suites);
  c.seed = 77;
  c.samples = {{"axioms", 40}, {"grid", 7}, {"pmm2_attempts", 100}};
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  const SuiteConfig c = parse_config(R"({
    "model": {"kind": "two_level_spin", "n_spins": 40},
    "suites": ["axioms", "zb"], "seed": 9,
    "tolerances": {"ly_residual": 1e-5}, "samples": {"axioms": 50},
    "mutation": "noisy_work"})");
  CHECK(c.model.kind == ModelKind::two_level_spin);
  CHECK(c.model.spin.n_spins == 40);
  CHECK(c.selected("zb"));
  CHECK_FALSE(c.selected("ly"));
  CHECK(c.seed == 9);
  CHECK(c.tolerance("ly_residual") == 1e-5);
  CHECK(c.tolerance("lambda") == 1e-9);
  CHECK(c.sample_count("axioms") == 50);
  CHECK(c.mutation == Mutation::noisy_work);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("{\"seed\": 1,"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"suites": ["bogus"]})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"lambda": -1}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"unknown": 1}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"samples": {"axioms": 0}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"seed": -3})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"model": {"kind": "ideal_gas", "n": -1}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_config(R"({"extra": 1})"), ParseError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("tolerance overrides") {
  SuiteConfig c;
  apply_tolerance_override(c, "zb_residual=2e-6");
  CHECK(c.tolerance("zb_residual") == 2e-6);
  CHECK_THROWS_AS(apply_tolerance_override(c, "zb_residual"), ParseError);
  CHECK_THROWS_AS(apply_tolerance_override(c, "zb_residual=0"), ParseError);
  CHECK_THROWS_AS(apply_tolerance_override(c, "zb_residual=abc"), ParseError);
  CHECK_THROWS_AS(apply_tolerance_override(c, "nope=1"), ParseError);
}

TEST_CASE("config echo parses back to the same config") {
  SuiteConfig c = quick({"axioms"});
  c.mutation = Mutation::break_scaling;
  const SuiteConfig back = parse_config(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("reports record the seed and the tolerances used") {
  const Report r = run(quick({"axioms", "ly"}));
  CHECK(r.seed == 77);
  CHECK(r.config_json.find("\"ly_residual\"") != std::string::npos);
  const CheckResult* ly = r.find("ly.reconstruction");
  REQUIRE(ly);
  CHECK(ly->tolerance_used == 1e-6);
  CHECK(r.passed());
}

TEST_CASE("json round trip, csv rows and text witnesses") {
  SuiteConfig c = quick({"axioms"});
  c.mutation = Mutation::break_splitting;
  Report r = run(c);
  CHECK_FALSE(r.passed());
  r.wall_time_seconds = 0.25;
  CHECK(report_from_json(emit(r, ReportFormat::json)) == r);

  const std::string csv = emit(r, ReportFormat::csv);
  CHECK(count_lines(csv) == r.checks.size() + 1);

  const std::string text = emit(r, ReportFormat::text);
  for (const CheckResult& check : r.checks) {
    if (!check.failed()) continue;
    for (const Witness& w : check.witnesses) {
      CHECK(text.find(w.note) != std::string::npos);
    }
  }
  CHECK(text.find("witness: [ideal_gas(") != std::string::npos);
  CHECK(text.find("FAIL") != std::string::npos);
  CHECK_THROWS_AS(report_from_json("{\"schema\": \"report_v0\"}"), ParseError);
}

TEST_CASE("splitting mutant fails exactly the splitting check") {
  SuiteConfig c = quick({"axioms", "energy", "zb", "theorems"});
  c.mutation = Mutation::break_splitting;
  const Report r = run(c);
  CHECK(failing_checks(r.checks) == std::set<std::string>{"axioms.splitting"});
}

TEST_CASE("identical configs give identical reports") {
  const SuiteConfig c = quick({"axioms", "zb", "theorems"});
  CHECK(emit(run(c), ReportFormat::json) == emit(run(c), ReportFormat::json));
  SuiteConfig other = c;
  other.seed = 78;
  CHECK(emit(run(other), ReportFormat::json) != emit(run(c), ReportFormat::json));
}

TEST_CASE("fixture models run the axiom suite only") {
  SuiteConfig c;
  FinitePreorderFixture f = spin_discrete_fixture(8);
  c.model.kind = ModelKind::fixture;
  c.model.fixture = f;
  c.suites = {"axioms", "ly"};
  const Report r = run(c);
  CHECK(r.passed());
  REQUIRE(r.find("ly.suite"));
  CHECK(r.find("ly.suite")->status == CheckStatus::not_applicable);
}
