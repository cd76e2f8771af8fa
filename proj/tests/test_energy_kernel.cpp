#include <cmath>

#include "axtherm/axiom_suite.hpp"
#include "axtherm/energy_kernel.hpp"
#include "axtherm/errors.hpp"
#include "axtherm/model_catalog.hpp"
#include "doctest.h"

using namespace axtherm;

namespace {

State labelled(double x) {
  State s;
  s.space_id = {"toy", 1.0};
  s.coords = {x};
  s.energy = x;
  return s;
}

PolygonalLeg leg(const State& from, const State& to, double work,
                 LegDirection dir) {
  PolygonalLeg l;
  l.process.kind = ProcessKind::weight;
  l.process.initial = from;
  l.process.final = to;
  l.process.work_done = work;
  l.direction = dir;
  return l;
}

// A1 -> A3 along with W = 5, then A3 <- A2 against with W = 3.
WeightPolygonal two_legs() {
  const State a1 = labelled(1), a2 = labelled(2), a3 = labelled(3);
  WeightPolygonal p;
  p.start = a1;
  p.end = a2;
  p.legs = {leg(a1, a3, 5.0, LegDirection::along),
            leg(a2, a3, 3.0, LegDirection::against)};
  return p;
}

}  // namespace

TEST_CASE("polygonal work follows the sign convention") {
  CHECK(polygonal_work(two_legs()) == 2.0);
  CHECK(polygonal_work(reversed(two_legs())) == -2.0);

  WeightPolygonal single;
  single.start = labelled(1);
  single.end = labelled(2);
  single.legs = {leg(labelled(1), labelled(2), 7.0, LegDirection::along)};
  CHECK(polygonal_work(single) == 7.0);
}

TEST_CASE("broken polygonal chains are rejected") {
  WeightPolygonal p = two_legs();
  p.legs[1].process.final = labelled(4);
  CHECK_THROWS_AS(polygonal_work(p), StructuralError);

  WeightPolygonal q = two_legs();
  q.legs[0].process.final.parts[0].separable = false;
  q.legs[1].process.final.parts[0].separable = false;
  CHECK_THROWS_AS(validate(q), StructuralError);
}

TEST_CASE("energy from a polygonal") {
  const State ref = labelled(0), target = labelled(1);
  WeightPolygonal p;
  p.start = ref;
  p.end = target;
  p.legs = {leg(ref, target, -10.0, LegDirection::along)};
  CHECK(energy_of(target, ref, 0.0, p) == 10.0);
  CHECK(energy_of(ref, ref, 4.5, trivial_polygonal(ref)) == 4.5);
  CHECK_THROWS_AS(energy_of(labelled(7), ref, 0.0, p), DomainError);
}

TEST_CASE("engine polygonals reproduce the gas energy function") {
  const auto gas = ideal_gas();
  ProcessEngine engine(gas);
  Rng rng(11);
  int connected = 0;
  for (int i = 0; i < 20; ++i) {
    const State ref = gas->sample_state(rng);
    const State target = gas->sample_like(ref, rng);
    const auto p = engine.random_polygonal(ref, target, rng);
    if (!p) continue;
    ++connected;
    const double e0 = 123.0;
    CHECK(energy_of(target, ref, e0, *p) ==
          doctest::Approx(gas->energy(target) - gas->energy(ref) + e0)
              .epsilon(1e-12));
  }
  CHECK(connected > 10);
}

TEST_CASE("path independence on the gas and under noisy work") {
  const auto gas = ideal_gas();
  ProcessEngine engine(gas);
  Rng rng(3);
  std::vector<StatePair> pairs;
  for (int i = 0; i < 10; ++i) {
    State a = gas->sample_state(rng);
    State b = gas->sample_like(a, rng);
    pairs.emplace_back(a, b);
  }
  const CheckResult ok = check_path_independence(engine, pairs, 5, 9);
  CHECK(ok.passed());
  CHECK(ok.metrics.at("max_spread") < 1e-10);

  ProcessEngine noisy(mutate_model(gas, Mutation::noisy_work));
  const CheckResult bad = check_path_independence(noisy, pairs, 5, 9);
  CHECK(bad.failed());
  REQUIRE_FALSE(bad.witnesses.empty());
  CHECK(bad.witnesses.front().states.size() == 2);
}

TEST_CASE("identical polygonals have zero spread") {
  CHECK(path_spread({two_legs(), two_legs()}) == 0.0);
}

TEST_CASE("energy additivity residual") {
  const State a1 = labelled(0), a2 = labelled(3);
  const State b1 = labelled(10), b2 = labelled(14);
  CHECK(check_energy_additivity({a1, a2}, {b1, b2}) == 0.0);
  CHECK(check_energy_additivity({a1, a1}, {b1, b1}) == 0.0);

  const auto gas = ideal_gas();
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const State x1 = gas->sample_state(rng), x2 = gas->sample_state(rng);
    const State y1 = gas->sample_state(rng), y2 = gas->sample_state(rng);
    CHECK(check_energy_additivity({x1, x2}, {y1, y2}) < kEnergyAdditivityTolerance);
  }
}
