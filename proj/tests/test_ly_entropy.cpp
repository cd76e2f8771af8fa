#include <cmath>

#include "axtherm/errors.hpp"
#include "axtherm/ly_entropy.hpp"
#include "axtherm/model_catalog.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace axtherm;

namespace {

struct Bracket {
  std::shared_ptr<const IdealGasModel> gas = ideal_gas();
  InducedRelation rel{gas};
  State like = gas->make_state(3000, 0.02);
  double base = gas->oracle_entropy(like);
  State at(double offset) const {
    return *gas->equilibrium_with_entropy(like, base + offset);
  }
};

std::vector<double> oracle_on(const IdealGasModel& gas,
                              const std::vector<State>& states) {
  std::vector<double> out;
  for (const State& s : states) {
    const double n = s.coords[2];
    out.push_back(oracle::gas_entropy(s.coords[0], s.coords[1], n));
    CHECK(gas.oracle_entropy(s) == doctest::Approx(out.back()).epsilon(1e-13));
  }
  return out;
}

}  // namespace

TEST_CASE("lambda at the reference states and in between") {
  Bracket b;
  const ReferencePair refs = make_reference_pair(b.rel, b.at(0.0), b.at(1.0));
  CHECK(find_lambda(b.rel, refs.x0, refs) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(find_lambda(b.rel, refs.x1, refs) == doctest::Approx(1.0).epsilon(1e-9));
  // lambda = (S(X) - S0) / (S1 - S0) from the closed form.
  for (double s : {0.25, 0.5, 0.9}) {
    CHECK(std::abs(find_lambda(b.rel, b.at(s), refs) - s) <= 1e-9);
  }
}

TEST_CASE("lambda errors") {
  Bracket b;
  const ReferencePair refs = make_reference_pair(b.rel, b.at(0.0), b.at(1.0));
  CHECK_THROWS_AS(find_lambda(b.rel, b.at(1.5), refs), DomainError);
  CHECK_THROWS_AS(find_lambda(b.rel, b.at(-0.5), refs), DomainError);
  CHECK_THROWS_AS(make_reference_pair(b.rel, b.at(1.0), b.at(0.0)), Error);

  InducedRelation spin(two_level_spin());
  const auto m = two_level_spin();
  const ReferencePair srefs{m->make_state(1e-21), m->make_state(30e-21)};
  CHECK_THROWS_AS(find_lambda(spin, m->make_state(10e-21), srefs),
                  CapabilityError);
}

TEST_CASE("entropy table arithmetic") {
  Bracket b;
  const ReferencePair refs =
      make_reference_pair(b.rel, b.at(0.0), b.at(1.0), 0.0, 2.0);
  const EntropyTable t =
      entropy_ly(b.rel, refs, {refs.x0, refs.x1, b.at(0.5), b.at(3.0)});
  REQUIRE(t.entries.size() == 4);
  CHECK(*t.entries[0].value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(*t.entries[1].value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*t.entries[2].value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(t.entries[3].value);
  CHECK(t.applicable() == 3);
}

TEST_CASE("grid reconstruction matches the closed form") {
  const auto gas = ideal_gas();
  InducedRelation rel(gas);
  const std::vector<State> grid = gas->grid(21, 21);
  const ReferencePair refs = select_reference_pair(rel, grid);
  const EntropyTable t = entropy_ly(rel, refs, grid);
  REQUIRE(t.applicable() == grid.size());
  const oracle::Fit fit = oracle::fit(t.values(), oracle_on(*gas, grid));
  CHECK(fit.a > 0);
  CHECK(fit.max_residual < 1e-6);
  // The oracle fit's slope is the entropy span of the reference pair.
  CHECK(fit.a == doctest::Approx(gas->oracle_entropy(refs.x1) -
                                 gas->oracle_entropy(refs.x0))
                     .epsilon(1e-8));
}

TEST_CASE("calibration constants") {
  EntropyTable t0;
  EntropyTable t1;
  for (double v : {1.0, 2.0, 4.0}) {
    t0.entries.push_back({State{}, v, ""});
    t1.entries.push_back({State{}, v + 5.0, ""});
  }
  std::vector<CalibrationConstraint> cs;
  for (std::size_t i = 0; i < 3; ++i) {
    cs.push_back({{{1, i, 1.0}, {0, i, -1.0}}, 0.0, "same state"});
  }
  const Calibration cal = calibrate_multispace({t0, t1}, cs);
  CHECK(cal.constants[0].first == 1.0);
  CHECK(cal.constants[0].second == 0.0);
  CHECK(cal.constants[1].first == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cal.constants[1].second == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(cal.max_residual < 1e-12);

  const Calibration single = calibrate_multispace({t0}, {});
  CHECK(single.constants[0] == std::pair(1.0, 0.0));
}

TEST_CASE("underdetermined calibration names the missing constants") {
  EntropyTable t0, t1;
  t0.entries.push_back({State{}, 1.0, ""});
  t1.entries.push_back({State{}, 1.0, ""});
  std::vector<CalibrationConstraint> cs{{{{1, 0, 1.0}, {0, 0, -1.0}}, 0.0, ""}};
  try {
    calibrate_multispace({t0, t1}, cs);
    FAIL("expected rank deficiency");
  } catch (const RankDeficiencyError& e) {
    CHECK(std::string(e.what()).find("[1]") != std::string::npos);
  }
}

TEST_CASE("extensive calibration against a scaled copy") {
  const auto gas = ideal_gas();
  InducedRelation rel(gas);
  const std::vector<State> grid = gas->grid(5, 5);
  const ReferencePair refs = select_reference_pair(rel, grid);
  std::vector<State> doubled;
  for (const State& s : grid) doubled.push_back(rel.scale(s, 2.0));
  const ReferencePair refs2 =
      make_reference_pair(rel, rel.scale(refs.x0, 2.0), rel.scale(refs.x1, 2.0));
  const EntropyTable t0 = entropy_ly(rel, refs, grid);
  const EntropyTable t1 = entropy_ly(rel, refs2, doubled);
  std::vector<CalibrationConstraint> cs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cs.push_back({{{1, i, 1.0}, {0, i, -2.0}}, 0.0, ""});
  }
  const Calibration cal = calibrate_multispace({t0, t1}, cs);
  CHECK(cal.max_residual < 1e-9);
  CHECK(cal.constants[1].first == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("sandwich bounds") {
  Bracket b;
  EntropyTable gamma;
  for (double s : {1.0, 1.4, 1.6, 2.0}) {
    const State x = b.at(s);
    gamma.entries.push_back({x, b.gas->oracle_entropy(x), ""});
  }
  const State eq = gamma.entries[1].state;
  const Sandwich same = sandwich_bounds(b.rel, eq, gamma);
  CHECK(*same.lower == *gamma.entries[1].value);
  CHECK(*same.upper == *gamma.entries[1].value);

  // Nonequilibrium state at base + 1.5 J/K.
  const State top = b.at(1.8);
  const State x = b.gas->make_state(top.coords[0], top.coords[1], 1.0, 0.3);
  CHECK(b.gas->oracle_entropy(x) == doctest::Approx(b.base + 1.5));
  const Sandwich s = sandwich_bounds(b.rel, x, gamma);
  CHECK(*s.lower == doctest::Approx(b.base + 1.4));
  CHECK(*s.upper == doctest::Approx(b.base + 1.6));

  for (double v : {1.45, 1.55}) {
    const State y = b.at(v);
    gamma.entries.push_back({y, b.gas->oracle_entropy(y), ""});
  }
  const Sandwich finer = sandwich_bounds(b.rel, x, gamma);
  CHECK(*finer.upper - *finer.lower < *s.upper - *s.lower);

  const State low = b.gas->make_state(top.coords[0], top.coords[1], 1.0, 1.5);
  const Sandwich below = sandwich_bounds(b.rel, low, gamma);
  CHECK_FALSE(below.lower);
  CHECK_FALSE(below.complete());
}

TEST_CASE("affine matching") {
  const std::vector<double> g{1.0, 2.0, 5.0, 7.5};
  const AffineFit same = affine_match(g, g);
  CHECK(same.a == doctest::Approx(1.0));
  CHECK(same.b == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.max_residual < 1e-12);

  std::vector<double> f;
  for (double v : g) f.push_back(2 * v + 3);
  const AffineFit inv = affine_match(f, g);
  CHECK(inv.a == doctest::Approx(0.5));
  CHECK(inv.b == doctest::Approx(-1.5));
  CHECK(inv.max_residual < 1e-12);

  CHECK_THROWS_AS(affine_match({1, 1, 1}, {1, 2, 3}), DegenerateError);
  CHECK_THROWS_AS(affine_match({1, 2}, {1, 2}), DomainError);
  const AffineFit off = offset_match({1, 2, 3}, {4, 5, 6});
  CHECK(off.a == 1.0);
  CHECK(off.b == doctest::Approx(3.0));
}
