// Acceptance criteria 1-13. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "axtherm/axiom_suite.hpp"
#include "axtherm/caratheodory.hpp"
#include "axtherm/energy_kernel.hpp"
#include "axtherm/errors.hpp"
#include "axtherm/ly_entropy.hpp"
#include "axtherm/report.hpp"
#include "axtherm/zb_entropy.hpp"
#include "oracles.hpp"

using namespace axtherm;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double gas_oracle(const State& s) {
  return oracle::gas_entropy(s.coords[0], s.coords[1], s.coords[2]) - s.coords[3];
}

std::vector<double> column(const EntropyTable& t) {
  std::vector<double> out;
  for (const EntropyEntry& e : t.entries) out.push_back(e.value.value_or(NAN));
  return out;
}

struct Shared {
  std::shared_ptr<const IdealGasModel> gas = ideal_gas();
  std::shared_ptr<const TwoLevelSpinModel> spin = two_level_spin();
  std::vector<State> grid = gas->grid(21, 21);
  std::vector<double> truth;
  EntropyTable ly;
  EntropyTable zb;
  Shared() {
    for (const State& s : grid) truth.push_back(gas_oracle(s));
  }
};

Outcome ly_reconstruction(Shared& sh) {
  Outcome o;
  InducedRelation rel(sh.gas);
  const auto start = std::chrono::steady_clock::now();
  const ReferencePair refs = select_reference_pair(rel, sh.grid);
  sh.ly = entropy_ly(rel, refs, sh.grid, 1e-9);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(sh.ly.applicable() == sh.grid.size(), "grid states outside bracket");
  const oracle::Fit fit = oracle::fit(column(sh.ly), sh.truth);
  o.require(fit.a > 0 && fit.max_residual < 1e-6,
            "affine residual " + num(fit.max_residual));
  o.require(secs < 10.0, "took " + num(secs) + " s");
  o.detail = o.ok ? "residual " + num(fit.max_residual) + " J/K in " + num(secs) + " s"
                  : o.detail;
  return o;
}

Outcome zb_reconstruction(Shared& sh) {
  Outcome o;
  ProcessEngine engine(sh.gas);
  const ReferenceReservoir r0;
  sh.zb = entropy_zb(engine, sh.grid.front(), 0.0, r0.reservoir(), sh.grid);
  const std::vector<double> z = column(sh.zb);
  const double shift = sh.truth.front();
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    worst = std::max(worst, std::abs(z[i] + shift - sh.truth[i]));
  }
  o.require(worst < 1e-6, "offset residual " + num(worst));

  Rng rng(2024);
  const Reservoir r = r0.reservoir();
  double worst_rel = 0.0;
  for (int i = 0; i < 50; ++i) {
    const State a1 = sh.gas->sample_state(rng);
    const State a2 = sh.gas->sample_like(a1, rng);
    const double e = engine.reversible_swp(a1, a2, r).delta_E_R;
    const double c = carnot_reservoir_delta(*sh.gas, a1, a2, r.temperature);
    worst_rel = std::max(worst_rel, std::abs(e - c) / std::max(std::abs(e), 1e-300));
  }
  o.require(worst_rel < 1e-7, "Carnot relative difference " + num(worst_rel));
  if (o.ok) {
    o.detail = "residual " + num(worst) + " J/K, Carnot " + num(worst_rel);
  }
  return o;
}

Outcome cross_construction(Shared& sh) {
  Outcome o;
  const oracle::Fit fit = oracle::fit(column(sh.ly), column(sh.zb));
  o.require(fit.a > 0 && fit.max_residual < 1e-6,
            "affine residual " + num(fit.max_residual));
  if (o.ok) o.detail = "residual " + num(fit.max_residual) + " J/K";
  return o;
}

std::vector<Probe> mixed_probes(const Shared& sh, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Probe> out;
  while (static_cast<int>(out.size()) < n) {
    const bool gas = out.size() % 2 == 0;
    const ModelSystem& m = gas ? static_cast<const ModelSystem&>(*sh.gas)
                               : static_cast<const ModelSystem&>(*sh.spin);
    const State a = m.sample_state(rng);
    const State b = m.sample_like(a, rng);
    if (std::abs(m.oracle_entropy(b) - m.oracle_entropy(a)) >
        1e-6 * m.entropy_unit()) {
      out.emplace_back(a, b);
    }
  }
  return out;
}

Outcome temperature_universality(Shared& sh) {
  Outcome o;
  ProcessEngine engine(std::vector<ModelPtr>{sh.gas, sh.spin});
  const Reservoir r1 = make_reservoir("R'", 300.0);
  const Reservoir r2 = make_reservoir("R''", 600.0);
  double lo = INFINITY, hi = -INFINITY;
  bool positive = true;
  for (const Probe& p : mixed_probes(sh, 20, 31)) {
    const double ratio = engine.reversible_swp(p.first, p.second, r1).delta_E_R /
                         engine.reversible_swp(p.first, p.second, r2).delta_E_R;
    positive = positive && ratio > 0.0;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double spread = (hi - lo) / 0.5;
  o.require(positive, "non-positive ratio");
  o.require(spread < 1e-9, "relative spread " + num(spread));
  o.require(std::abs(lo - 0.5) < 1e-9 && std::abs(hi - 0.5) < 1e-9,
            "ratio range [" + num(lo) + ", " + num(hi) + "]");
  if (o.ok) o.detail = "ratios in [" + num(lo) + ", " + num(hi) + "]";
  return o;
}

Outcome kelvin_gauge(Shared& sh) {
  Outcome o;
  ProcessEngine engine(std::vector<ModelPtr>{sh.gas, sh.spin});
  const ReferenceReservoir r0;
  const auto tp = triple_point_reservoir(1.0e6);
  const Reservoir rt = tp->reservoir(5.0e5);
  double worst = 0.0;
  for (const Probe& p : mixed_probes(sh, 20, 32)) {
    const double t0 = temperature_of(engine, r0.reservoir(), r0, p);
    o.require(t0 == 273.16, "reference measured " + num(t0));
    const double t = temperature_of(engine, rt, r0, p);
    worst = std::max(worst, std::abs(t - 273.16));
  }
  o.require(worst <= 1e-9, "triple point off by " + num(worst) + " K");
  if (o.ok) o.detail = "triple point within " + num(worst) + " K";
  return o;
}

Outcome lower_bound(Shared& sh) {
  Outcome o;
  ProcessEngine engine(sh.gas);
  const Reservoir r = make_reservoir("R", 300.0);
  Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    const State a1 = sh.gas->sample_state(rng);
    const State a2 = sh.gas->sample_like(a1, rng);
    const double ds = gas_oracle(a2) - gas_oracle(a1);
    const double sigma = rng.uniform_open_closed();
    const double rev = engine.reversible_swp(a1, a2, r).delta_E_R;
    const double irr = engine.irreversible_swp(a1, a2, r, sigma).delta_E_R;
    o.require(rev < irr, "reversible not strictly minimal at draw " + std::to_string(i));
    o.require(-irr / r.temperature < ds, "bound violated at draw " + std::to_string(i));
    o.require(std::abs(rev - (-r.temperature * ds)) <= 1e-9 * std::max(1.0, std::abs(rev)),
              "sigma = 0 record differs from the minimum");
  }
  if (o.ok) o.detail = "100 draws";
  return o;
}

Outcome nondecrease(Shared& sh) {
  Outcome o;
  ProcessEngine engine(sh.gas);
  Rng rng(78);
  int rev = 0, irr = 0;
  for (int i = 0; i < 100; ++i) {
    State from = sh.gas->sample_state(rng);
    if (i % 3 == 2) from = *sh.gas->sample_nonequilibrium(rng);
    const ProcessRecord p = engine.random_weight_process(from, rng);
    const double ds = gas_oracle(p.final.parts[0]) - gas_oracle(p.initial.parts[0]);
    const bool zero = std::abs(ds) <= 1e-12;
    o.require(zero == p.reversible, "reversibility flag disagrees, dS = " + num(ds));
    o.require(zero || ds > 0.0, "entropy decreased by " + num(-ds));
    (p.reversible ? rev : irr)++;
  }
  const CheckResult c = check_entropy_nondecrease(
      engine, [&] {
        Rng again(78);
        std::vector<ProcessRecord> recs;
        for (int i = 0; i < 100; ++i) {
          State from = sh.gas->sample_state(again);
          if (i % 3 == 2) from = *sh.gas->sample_nonequilibrium(again);
          recs.push_back(engine.random_weight_process(from, again));
        }
        return recs;
      }(),
      ReferenceReservoir().reservoir());
  o.require(c.passed(), "engine-side check failed");
  o.require(rev > 0 && irr > 0, "draws cover only one kind");
  if (o.ok) o.detail = std::to_string(rev) + " reversible, " + std::to_string(irr) + " irreversible";
  return o;
}

Outcome additivity(Shared& sh) {
  Outcome o;
  ProcessEngine engine(std::vector<ModelPtr>{sh.gas, sh.spin});
  const Reservoir r = ReferenceReservoir().reservoir();
  Rng rng(79);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ModelSystem& ma = *sh.gas;
    const ModelSystem& mb = i % 2 ? static_cast<const ModelSystem&>(*sh.spin)
                                  : static_cast<const ModelSystem&>(*sh.gas);
    const State a1 = ma.sample_state(rng), a2 = ma.sample_like(a1, rng);
    const State b1 = mb.sample_state(rng), b2 = mb.sample_like(b1, rng);
    worst = std::max(worst, entropy_additivity_residual(engine, {a1, a2}, {b1, b2}, r));
  }
  o.require(worst < 1e-9, "residual " + num(worst));
  if (o.ok) o.detail = "residual " + num(worst) + " J/K";
  return o;
}

Outcome axiom_suite(Shared& sh) {
  Outcome o;
  for (const ModelPtr& m : {ModelPtr(sh.gas), ModelPtr(sh.spin)}) {
    InducedRelation rel(m);
    for (const CheckResult& r : run_axiom_suite(rel, {200, 5})) {
      o.require(!r.failed(), m->id() + " " + r.name);
    }
  }
  FiniteRelation fixture(spin_discrete_fixture(40));
  for (const CheckResult& r : run_axiom_suite(fixture, {200, 5})) {
    o.require(!r.failed(), "fixture " + r.name);
  }
  SuiteConfig config;
  config.seed = 5;
  for (const CheckResult& r : run_mutation_matrix(config)) {
    o.require(r.passed(), r.name + (r.witnesses.empty() ? "" : ": " + r.witnesses[0].note));
  }
  if (o.ok) o.detail = "mutation matrix green";
  return o;
}

Outcome caratheodory_loops(Shared& sh) {
  Outcome o;
  const SimpleSystemModel m = ideal_gas_simple_system(*sh.gas);
  Rng rng(80);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    worst = std::max(worst, std::abs(heat_form_integral(m, random_gas_loop(*sh.gas, rng)).value));
  }
  const QuasistaticPath rect = gas_tv_rectangle(*sh.gas, 300, 600, 0.01, 0.02);
  worst = std::max(worst, std::abs(heat_form_integral(m, rect).value));
  const double control = heat_form_integral(m, rect, 2).value;
  o.require(worst < 1e-8, "loop integral " + num(worst));
  o.require(std::abs(control) > 1e-3, "control " + num(control));
  if (o.ok) o.detail = "max loop " + num(worst) + ", control " + num(control);
  return o;
}

Outcome energy_kernel(Shared& sh) {
  Outcome o;
  ProcessEngine engine(sh.gas);
  Rng rng(81);
  std::vector<StatePair> pairs;
  for (int i = 0; i < 10; ++i) {
    const State a = sh.gas->sample_state(rng);
    pairs.emplace_back(a, sh.gas->sample_like(a, rng));
  }
  const CheckResult c = check_path_independence(engine, pairs, 5, 81);
  o.require(c.passed(), "path independence failed");
  o.require(c.metrics.at("connected_pairs") == 10, "not every pair connected");
  o.require(c.metrics.at("max_spread") < 1e-10, "spread " + num(c.metrics.at("max_spread")));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const State a1 = sh.gas->sample_state(rng), a2 = sh.gas->sample_state(rng);
    const State b1 = sh.gas->sample_state(rng), b2 = sh.gas->sample_state(rng);
    worst = std::max(worst, check_energy_additivity({a1, a2}, {b1, b2}));
  }
  o.require(worst < 1e-12, "additivity residual " + num(worst));
  if (o.ok) o.detail = "spread " + num(c.metrics.at("max_spread")) + " J";
  return o;
}

Outcome bridge(Shared& sh) {
  Outcome o;
  ProcessEngine engine(sh.gas);
  const Reservoir r = make_reservoir("R", 300.0, 1.0e4);
  Rng rng(82);
  std::vector<std::pair<State, State>> pairs;
  for (int i = 0; i < 25; ++i) {
    const State a = sh.gas->sample_state(rng);
    pairs.emplace_back(a, sh.gas->sample_like(a, rng));
  }
  double worst = 0.0;
  for (const auto& [a1, a2] : pairs) {
    const InterconnectionOutcome out = interconnect_by_weight_process(engine, a1, a2, r);
    o.require(out.applicable, "gas reported not applicable");
    worst = std::max(worst, std::abs(out.reservoir_final.energy - r.energy));
    const double de = out.process.final.energy() - out.process.initial.energy();
    o.require(std::abs(out.process.work_done + de) <= 1e-12 * std::abs(a1.energy),
              "system energy balance");
  }
  o.require(worst <= 1e-12, "bookkeeping residual " + num(worst));

  ProcessEngine spin(sh.spin);
  const auto na = interconnect_by_weight_process(
      spin, sh.spin->make_state(10e-21), sh.spin->make_state(30e-21), r);
  o.require(!na.applicable, "spin model accepted");

  const CheckResult d = derive_assumptions_from_ch(engine, pairs, r, true, true);
  o.require(d.passed(), "derive_assumptions failed");
  o.require(d.metrics.at("max_chain_sigma") < 1e-12,
            "chain sigma " + num(d.metrics.at("max_chain_sigma")));
  if (o.ok) o.detail = "bookkeeping " + num(worst) + " J";
  return o;
}

Outcome determinism(Shared&) {
  Outcome o;
  SuiteConfig config;
  config.seed = 42;
  const std::string a = emit(run(config), ReportFormat::json);
  const std::string b = emit(run(config), ReportFormat::json);
  o.require(a == b, "reports differ");
  if (o.ok) o.detail = std::to_string(a.size()) + " bytes identical";
  return o;
}

}  // namespace

int main() {
  Shared sh;
  const std::vector<std::pair<const char*, std::function<Outcome(Shared&)>>> criteria{
      {"LY reconstruction", ly_reconstruction},
      {"ZB reconstruction and Carnot agreement", zb_reconstruction},
      {"cross-construction", cross_construction},
      {"temperature universality", temperature_universality},
      {"Kelvin gauge", kelvin_gauge},
      {"reversible lower bound", lower_bound},
      {"entropy nondecrease", nondecrease},
      {"entropy additivity", additivity},
      {"axiom suite and mutation matrix", axiom_suite},
      {"Caratheodory loops", caratheodory_loops},
      {"energy kernel", energy_kernel},
      {"interconnection bridge", bridge},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second(sh);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %2zu  %-40s %s\n", o.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
