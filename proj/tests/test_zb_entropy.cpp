#include <cmath>

#include "axtherm/axiom_suite.hpp"
#include "axtherm/errors.hpp"
#include "axtherm/zb_entropy.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace axtherm;

namespace {

struct Setup {
  std::shared_ptr<const IdealGasModel> gas = ideal_gas();
  std::shared_ptr<const TwoLevelSpinModel> spin = two_level_spin();
  ProcessEngine engine{std::vector<ModelPtr>{gas, spin}};
  ReferenceReservoir r0;
  State a = gas->make_state(3000, 0.02);
  State with_entropy_offset(double ds) const {
    return *gas->equilibrium_with_entropy(a, gas->oracle_entropy(a) + ds);
  }
};

std::vector<Probe> mixed_probes(const Setup& s, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Probe> out;
  for (int i = 0; i < n; ++i) {
    const ModelSystem& m = i % 2 ? static_cast<const ModelSystem&>(*s.spin)
                                 : static_cast<const ModelSystem&>(*s.gas);
    const State x = m.sample_state(rng);
    out.emplace_back(x, m.sample_like(x, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("reversible standard weight process arithmetic") {
  Setup s;
  CHECK(s.engine.reversible_swp(s.a, s.a, s.r0.reservoir()).delta_E_R == 0.0);
  const auto rec =
      s.engine.reversible_swp(s.a, s.with_entropy_offset(1.0), s.r0.reservoir());
  CHECK(rec.delta_E_R == doctest::Approx(-273.16).epsilon(1e-12));
  CHECK(rec.reversible);
  CHECK(rec.sigma == 0.0);
}

TEST_CASE("reservoir delta of a gas process against the path integral") {
  Setup s;
  const State a1 = s.gas->make_state(3000, 0.02);
  const State a2 = s.gas->make_state(4500, 0.03);
  const Reservoir r = make_reservoir("R", 300.0);
  const double engine = s.engine.reversible_swp(a1, a2, r).delta_E_R;
  const double ds = oracle::gas_entropy(4500, 0.03, 1) - oracle::gas_entropy(3000, 0.02, 1);
  CHECK(engine == doctest::Approx(-300.0 * ds).epsilon(1e-12));
  CHECK(carnot_reservoir_delta(*s.gas, a1, a2, 300.0) ==
        doctest::Approx(engine).epsilon(1e-7));
}

TEST_CASE("irreversible process pays T sigma extra") {
  Setup s;
  const State a2 = s.with_entropy_offset(0.5);
  const Reservoir r = make_reservoir("R", 300.0);
  const double rev = s.engine.reversible_swp(s.a, a2, r).delta_E_R;
  const auto irr = s.engine.irreversible_swp(s.a, a2, r, 0.1);
  CHECK(irr.delta_E_R - rev == doctest::Approx(30.0).epsilon(1e-12));
  CHECK_FALSE(irr.reversible);
  const auto tiny = s.engine.irreversible_swp(s.a, a2, r, 1e-9);
  CHECK(tiny.delta_E_R - rev == doctest::Approx(3e-7).epsilon(1e-3));
  CHECK_THROWS_AS(s.engine.irreversible_swp(s.a, a2, r, 0.0), DomainError);
}

TEST_CASE("temperature measurement") {
  Setup s;
  const Probe p{s.a, s.with_entropy_offset(0.7)};
  CHECK(temperature_of(s.engine, s.r0.reservoir(), s.r0, p) == 273.16);
  CHECK(temperature_of(s.engine, make_reservoir("R", 546.32), s.r0, p) ==
        doctest::Approx(546.32).epsilon(1e-12));
  CHECK_THROWS_AS(temperature_of(s.engine, s.r0.reservoir(), s.r0, {s.a, s.a}),
                  DegenerateError);

  const auto probes = mixed_probes(s, 20, 4);
  CHECK(check_kelvin_gauge(s.engine, s.r0, probes).passed());
  CHECK(check_temperature_measurement(
            s.engine, s.r0, {make_reservoir("R", 546.32)}, probes)
            .passed());

  ProcessEngine wrong(mutate_model(s.gas, Mutation::wrong_reservoir_temperature));
  const std::vector<Probe> gas_only{p};
  CHECK(check_temperature_measurement(wrong, s.r0,
                                      {make_reservoir("R", 546.32)}, gas_only)
            .failed());
}

TEST_CASE("temperature ratio is universal") {
  Setup s;
  const auto probes = mixed_probes(s, 20, 5);
  const Reservoir r1 = make_reservoir("R1", 300.0);
  const Reservoir r2 = make_reservoir("R2", 600.0);
  const CheckResult r = temperature_ratio_independence(s.engine, r1, r2, probes, 0.5);
  CHECK(r.passed());
  CHECK(r.metrics.at("relative_spread") < 1e-9);
  CHECK(r.metrics.at("mean_ratio") == doctest::Approx(0.5).epsilon(1e-12));

  const CheckResult same = temperature_ratio_independence(s.engine, r1, r1, probes, 1.0);
  CHECK(same.passed());

  std::vector<Probe> flipped;
  for (const Probe& p : probes) flipped.emplace_back(p.second, p.first);
  const CheckResult back = temperature_ratio_independence(s.engine, r1, r2, flipped, 0.5);
  CHECK(back.passed());
  CHECK(back.metrics.at("mean_ratio") == doctest::Approx(r.metrics.at("mean_ratio")));
}

TEST_CASE("entropy from reservoir bookkeeping") {
  Setup s;
  const State x = s.with_entropy_offset(1.0);
  const EntropyTable t = entropy_zb(s.engine, s.a, 7.0, s.r0.reservoir(), {s.a, x});
  CHECK(*t.entries[0].value == 7.0);
  CHECK(*t.entries[1].value == doctest::Approx(8.0).epsilon(1e-13));

  const std::vector<State> grid = s.gas->grid(21, 21);
  const EntropyTable g = entropy_zb(s.engine, grid.front(), 0.0, s.r0.reservoir(), grid);
  REQUIRE(g.applicable() == grid.size());
  const double shift = oracle::gas_entropy(grid.front().coords[0], grid.front().coords[1], 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double truth = oracle::gas_entropy(grid[i].coords[0], grid[i].coords[1], 1);
    worst = std::max(worst, std::abs(*g.entries[i].value + shift - truth));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("entropy differences do not depend on the reservoir") {
  Setup s;
  const auto probes = mixed_probes(s, 10, 6);
  const std::vector<Reservoir> rs{make_reservoir("a", 100.0), s.r0.reservoir(),
                                  make_reservoir("b", 1000.0)};
  CHECK(check_reservoir_independence(s.engine, probes, rs).passed());
  CHECK(check_reservoir_independence(s.engine, probes, {rs[0], rs[0]}).passed());
  ProcessEngine wrong(mutate_model(s.gas, Mutation::wrong_reservoir_temperature));
  const std::vector<Probe> gas_only{{s.a, s.with_entropy_offset(0.4)}};
  CHECK(check_reservoir_independence(wrong, gas_only, rs).failed());
}

TEST_CASE("entropy differences add over composites") {
  Setup s;
  const Probe pa{s.a, s.with_entropy_offset(1.0)};
  const Probe pb{s.a, s.with_entropy_offset(2.0)};
  const Reservoir& r = s.r0.reservoir();
  const auto whole = s.engine.reversible_swp(compose_states({pa.first, pb.first}),
                                             compose_states({pa.second, pb.second}), r);
  CHECK(-whole.delta_E_R / r.temperature == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(entropy_additivity_residual(s.engine, pa, pb, r) < 1e-9);
  CHECK(entropy_additivity_residual(s.engine, pa, {s.a, s.a}, r) < 1e-12);

  Rng rng(2);
  std::vector<std::pair<Probe, Probe>> draws;
  for (int i = 0; i < 100; ++i) {
    const State g1 = s.gas->sample_state(rng);
    const State g2 = s.gas->sample_like(g1, rng);
    const State p1 = s.spin->sample_state(rng);
    const State p2 = s.spin->sample_like(p1, rng);
    draws.push_back({{g1, g2}, {p1, p2}});
  }
  CHECK(check_entropy_additivity_zb(s.engine, draws, r).passed());

  ProcessEngine maxed(mutate_model(s.gas, Mutation::composite_max));
  CHECK(entropy_additivity_residual(maxed, pa, pb, r) > 0.5);
}

TEST_CASE("no energy can be extracted from a stable equilibrium state") {
  Setup s;
  ProcessEngine gas(s.gas);
  CHECK(check_pmm2(gas, s.a, 1000, 1).passed());
  const State ne = s.gas->make_state(3000, 0.02, 1.0, 0.5);
  CHECK(check_pmm2(gas, ne, 100, 1).status == CheckStatus::not_applicable);
  ProcessEngine spin(s.spin);
  CHECK(check_pmm2(spin, s.spin->make_state(20e-21), 100, 1).status ==
        CheckStatus::not_applicable);
}

TEST_CASE("reversible process is the cheapest") {
  Setup s;
  const Probe p{s.a, s.with_entropy_offset(0.3)};
  const CheckResult r =
      check_lower_bound(s.engine, p, make_reservoir("R", 300.0), 100, 3);
  CHECK(r.passed());
  CHECK(r.metrics.at("min_gap") > 0.0);
}

TEST_CASE("entropy never decreases along weight processes") {
  Setup s;
  ProcessEngine gas(s.gas);
  Rng rng(12);
  const auto rev = gas.weight_process_of(ProcessFlavor::reversible, s.a, rng);
  const auto stir = gas.weight_process_of(ProcessFlavor::stirring, s.a, rng);
  REQUIRE(rev);
  REQUIRE(stir);
  CHECK(rev->reversible);
  CHECK_FALSE(stir->reversible);
  CHECK(oracle::gas_entropy(stir->final.parts[0].coords[0],
                            stir->final.parts[0].coords[1], 1) >
        oracle::gas_entropy(3000, 0.02, 1));
  CHECK(check_entropy_nondecrease(gas, {*rev, *stir}, s.r0.reservoir()).passed());

  ProcessRecord forged = *stir;
  std::swap(forged.initial, forged.final);
  CHECK(check_entropy_nondecrease(gas, {forged}, s.r0.reservoir()).failed());
}

TEST_CASE("mutual equilibrium of a reservoir and its copy") {
  const Reservoir r = make_reservoir("R", 300.0, 1000.0);
  CHECK(check_mutual_equilibrium(r, make_reservoir("Rd", 300.0, -50.0), 50, 1).passed());
  CHECK(check_mutual_equilibrium(r, r, 50, 1).passed());
  CHECK(check_mutual_equilibrium(r, make_reservoir("Rd", 310.0), 50, 1).status ==
        CheckStatus::not_applicable);
  auto affine = [](double e) { return e / 300.0; };
  auto curved = [](double e) { return std::log(1.0 + e); };
  CHECK(check_mutual_equilibrium(affine, curved, 100.0, {10.0, 50.0, 90.0}).failed());
}

TEST_CASE("interconnection through a weight process") {
  Setup s;
  ProcessEngine gas(s.gas);
  const Reservoir r = make_reservoir("R", 300.0, 500.0);

  const auto zero = interconnect_by_weight_process(gas, s.a, s.a, r);
  CHECK(zero.branch == InterconnectionBranch::zero);
  CHECK(zero.process.reversible);

  const auto neg = interconnect_by_weight_process(gas, s.a, s.with_entropy_offset(1.0), r);
  CHECK(neg.branch == InterconnectionBranch::negative);
  CHECK(neg.bookkeeping_residual <= 1e-12);
  CHECK(neg.reservoir_final.energy == r.energy);
  CHECK(neg.energy_residual <= 1e-12 * 3000);

  const auto pos = interconnect_by_weight_process(gas, s.a, s.with_entropy_offset(-1.0), r);
  CHECK(pos.branch == InterconnectionBranch::positive);
  CHECK(pos.bookkeeping_residual <= 1e-12);

  ProcessEngine spin(s.spin);
  const auto na = interconnect_by_weight_process(
      spin, s.spin->make_state(10e-21), s.spin->make_state(20e-21), r);
  CHECK_FALSE(na.applicable);
  CHECK(check_interconnection(spin, {{s.spin->make_state(10e-21),
                                      s.spin->make_state(20e-21)}},
                              r)
            .status == CheckStatus::not_applicable);
}

TEST_CASE("assumptions follow from comparability") {
  Setup s;
  ProcessEngine gas(s.gas);
  const State ne = s.gas->make_state(3000, 0.02, 1.0, 0.5);
  const State se = s.gas->stable_equilibrium_like(ne);
  CHECK(gas.weight_process(ne, se).has_value());
  CHECK_FALSE(gas.weight_process(se, ne).has_value());
  const auto identity = gas.weight_process(s.a, s.gas->stable_equilibrium_like(s.a));
  REQUIRE(identity);
  CHECK(identity->work_done == 0.0);

  const Reservoir r = make_reservoir("R", 300.0);
  const CheckResult ok = derive_assumptions_from_ch(
      gas, {{ne, s.with_entropy_offset(1.0)}, {s.a, s.with_entropy_offset(-0.2)}}, r,
      true, true);
  CHECK(ok.passed());
  CHECK(ok.metrics.at("max_chain_sigma") < 1e-12);
  CHECK(derive_assumptions_from_ch(gas, {{s.a, s.a}}, r, false, true).status ==
        CheckStatus::not_applicable);
}
