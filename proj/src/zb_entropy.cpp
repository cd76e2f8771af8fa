#include "axtherm/zb_entropy.hpp"

#include <algorithm>
#include <cmath>

#include "axtherm/errors.hpp"
#include "axtherm/quadrature.hpp"

namespace axtherm {

using namespace check_names;

namespace {

bool relatively_equal(double a, double b, double tolerance) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tolerance * scale;
}

double measured_delta_s(const ProcessEngine& engine, const CompositeState& a1,
                        const CompositeState& a2, const Reservoir& r) {
  return -engine.reversible_swp(a1, a2, r).delta_E_R / r.temperature;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double temperature_of(const ProcessEngine& engine, const Reservoir& reservoir,
                      const ReferenceReservoir& reference, const Probe& probe) {
  const double d0 =
      engine.reversible_swp(probe.first, probe.second, reference.reservoir())
          .delta_E_R;
  const double floor =
      reference.temperature() * engine.zero_tolerance(probe.first);
  if (std::abs(d0) <= floor) {
    throw DegenerateError(
        "temperature probe has no entropy change; the ratio is 0/0");
  }
  const double d = engine.reversible_swp(probe.first, probe.second, reservoir)
                       .delta_E_R;
  return reference.temperature() * (d / d0);
}

CheckResult check_kelvin_gauge(const ProcessEngine& engine,
                               const ReferenceReservoir& reference,
                               const std::vector<Probe>& probes) {
  CheckResult result;
  result.name = kKelvinGauge;
  result.tolerance_used = 0.0;
  for (const Probe& p : probes) {
    double t = 0.0;
    try {
      t = temperature_of(engine, reference.reservoir(), reference, p);
    } catch (const DegenerateError&) {
      continue;
    }
    ++result.samples_used;
    if (t != kTriplePointTemperature) {
      result.add_failure({{p.first, p.second},
                          "reference reservoir measured at " + fmt(t) + " K"});
    }
  }
  if (result.samples_used == 0) {
    return not_applicable(kKelvinGauge, "no non-degenerate probe");
  }
  return result;
}

CheckResult check_temperature_measurement(
    const ProcessEngine& engine, const ReferenceReservoir& reference,
    const std::vector<Reservoir>& reservoirs,
    const std::vector<Probe>& probes) {
  CheckResult result;
  result.name = kTemperatureMeasurement;
  result.tolerance_used = kTemperatureTolerance;
  double worst = 0.0;
  for (const Reservoir& r : reservoirs) {
    for (const Probe& p : probes) {
      double t = 0.0;
      try {
        t = temperature_of(engine, r, reference, p);
      } catch (const DegenerateError&) {
        continue;
      }
      ++result.samples_used;
      const double rel = std::abs(t - r.temperature) / r.temperature;
      worst = std::max(worst, rel);
      if (!(rel <= kTemperatureTolerance)) {
        result.add_failure({{p.first, p.second},
                            "reservoir '" + r.id + "' declared " +
                                fmt(r.temperature) + " K, measured " +
                                fmt(t) + " K"});
      }
    }
  }
  result.metrics["max_relative_deviation"] = worst;
  if (result.samples_used == 0) {
    return not_applicable(kTemperatureMeasurement, "no non-degenerate probe");
  }
  return result;
}

CheckResult temperature_ratio_independence(const ProcessEngine& engine,
                                           const Reservoir& r1,
                                           const Reservoir& r2,
                                           const std::vector<Probe>& probes,
                                           std::optional<double> expected) {
  CheckResult result;
  result.name = kTemperatureRatio;
  result.tolerance_used = kTemperatureTolerance;
  std::vector<double> ratios;
  std::vector<const Probe*> used;
  int skipped = 0;
  for (const Probe& p : probes) {
    const double d1 = engine.reversible_swp(p.first, p.second, r1).delta_E_R;
    const double d2 = engine.reversible_swp(p.first, p.second, r2).delta_E_R;
    const double floor = r2.temperature * engine.zero_tolerance(p.first);
    if (std::abs(d2) <= floor) {
      ++skipped;
      continue;
    }
    ratios.push_back(d1 / d2);
    used.push_back(&p);
  }
  result.samples_used = static_cast<std::int64_t>(ratios.size());
  if (skipped > 0) {
    result.message = std::to_string(skipped) + " degenerate probe(s) skipped";
  }
  if (ratios.empty()) {
    return not_applicable(kTemperatureRatio, "no non-degenerate probe");
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  const double spread = (*hi - *lo) / std::abs(mean);
  result.metrics["mean_ratio"] = mean;
  result.metrics["relative_spread"] = spread;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] > 0.0)) {
      result.add_failure({{used[i]->first, used[i]->second},
                          "non-positive ratio " + fmt(ratios[i])});
    }
  }
  if (!(spread < kTemperatureTolerance)) {
    const std::size_t i = static_cast<std::size_t>(hi - ratios.begin());
    result.add_failure({{used[i]->first, used[i]->second},
                        "ratio spread " + fmt(spread)});
  }
  if (expected) {
    result.metrics["expected_ratio"] = *expected;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (!relatively_equal(ratios[i], *expected, kTemperatureTolerance)) {
        result.add_failure({{used[i]->first, used[i]->second},
                            "ratio " + fmt(ratios[i]) + ", expected " +
                                fmt(*expected)});
      }
    }
  }
  return result;
}

EntropyTable entropy_zb(const ProcessEngine& engine, const State& a0,
                        double s0, const Reservoir& reservoir,
                        const std::vector<State>& states) {
  EntropyTable table;
  table.space_id = a0.space_id;
  table.entries.reserve(states.size());
  for (const State& x : states) {
    EntropyEntry e;
    e.state = x;
    try {
      const double d = engine.reversible_swp(a0, x, reservoir).delta_E_R;
      e.value = s0 - d / reservoir.temperature;
    } catch (const Error& err) {
      e.note = err.what();
    }
    table.entries.push_back(std::move(e));
  }
  return table;
}

CheckResult check_reservoir_independence(
    const ProcessEngine& engine, const std::vector<Probe>& pairs,
    const std::vector<Reservoir>& reservoirs) {
  if (reservoirs.size() < 2) {
    throw DomainError("reservoir independence needs at least two reservoirs");
  }
  CheckResult result;
  result.name = kReservoirIndependence;
  result.tolerance_used = kTemperatureTolerance;
  double worst = 0.0;
  for (const Probe& p : pairs) {
    std::vector<double> values;
    for (const Reservoir& r : reservoirs) {
      values.push_back(
          engine.reversible_swp(p.first, p.second, r).delta_E_R / r.temperature);
    }
    ++result.samples_used;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double scale = std::max(std::abs(*lo), std::abs(*hi));
    const double floor = engine.zero_tolerance(p.first);
    const double rel = scale > floor ? (*hi - *lo) / scale : 0.0;
    worst = std::max(worst, rel);
    if (!(rel <= kTemperatureTolerance)) {
      result.add_failure({{p.first, p.second},
                          "dE_R/T_R ranges over [" + fmt(*lo) + ", " +
                              fmt(*hi) + "] J/K"});
    }
  }
  result.metrics["max_relative_spread"] = worst;
  return result;
}

double entropy_additivity_residual(const ProcessEngine& engine,
                                   const Probe& pair_a, const Probe& pair_b,
                                   const Reservoir& reservoir) {
  const double ds_a =
      measured_delta_s(engine, pair_a.first, pair_a.second, reservoir);
  const double ds_b =
      measured_delta_s(engine, pair_b.first, pair_b.second, reservoir);
  const double ds_ab = measured_delta_s(
      engine, compose_states({pair_a.first, pair_b.first}),
      compose_states({pair_a.second, pair_b.second}), reservoir);
  return std::abs(ds_ab - ds_a - ds_b);
}

CheckResult check_entropy_additivity_zb(
    const ProcessEngine& engine,
    const std::vector<std::pair<Probe, Probe>>& draws,
    const Reservoir& reservoir) {
  CheckResult result;
  result.name = kEntropyAdditivity;
  result.tolerance_used = kZbAdditivityTolerance;
  double worst = 0.0;
  for (const auto& [a, b] : draws) {
    const double r = entropy_additivity_residual(engine, a, b, reservoir);
    ++result.samples_used;
    worst = std::max(worst, r);
    if (!(r < kZbAdditivityTolerance)) {
      result.add_failure({{a.first, a.second, b.first, b.second},
                          "additivity residual " + fmt(r) + " J/K"});
    }
  }
  result.metrics["max_residual"] = worst;
  return result;
}

CheckResult check_pmm2(const ProcessEngine& engine, const State& ses,
                       int attempts, std::uint64_t seed) {
  if (ses.kind != StateKind::stable_equilibrium) {
    return not_applicable(kPmm2, "initial state is not a stable equilibrium "
                                 "state");
  }
  if (!engine.is_normal(ses)) {
    return not_applicable(kPmm2, "system '" + engine.system_of(ses) +
                                     "' is not normal");
  }
  CheckResult result;
  result.name = kPmm2;
  Rng rng = Rng(seed).fork(kPmm2);
  const double floor = 1e-12 * std::max(1.0, std::abs(ses.energy));
  result.tolerance_used = floor;
  int executed = 0;
  for (int i = 0; i < attempts; ++i) {
    ++result.samples_used;
    const auto record = engine.fixed_region_attempt(ses, rng);
    if (!record) continue;
    ++executed;
    if (record->final.energy() < ses.energy - floor) {
      result.add_failure({{record->initial, record->final},
                          "weight process lowered the energy by " +
                              fmt(ses.energy - record->final.energy()) +
                              " J at fixed regions"});
    }
  }
  result.metrics["executed"] = executed;
  return result;
}

CheckResult check_lower_bound(const ProcessEngine& engine, const Probe& pair,
                              const Reservoir& reservoir, int n_irr,
                              std::uint64_t seed) {
  if (n_irr < 1) throw DomainError("lower bound check needs n_irr >= 1");
  CheckResult result;
  result.name = kLowerBound;
  Rng rng = Rng(seed).fork(kLowerBound);
  const StandardWeightProcessRecord rev =
      engine.reversible_swp(pair.first, pair.second, reservoir);
  const double ds = -rev.delta_E_R / reservoir.temperature;
  // The sigma = 0 record must reproduce the minimum exactly.
  const StandardWeightProcessRecord again =
      engine.reversible_swp(pair.first, pair.second, reservoir);
  if (again.delta_E_R != rev.delta_E_R || again.sigma != 0.0) {
    result.add_failure({{pair.first, pair.second},
                        "reversible record not reproducible"});
  }
  double min_gap = INFINITY;
  for (int i = 0; i < n_irr; ++i) {
    const double sigma = rng.uniform_open_closed();
    const StandardWeightProcessRecord irr =
        engine.irreversible_swp(pair.first, pair.second, reservoir, sigma);
    ++result.samples_used;
    const double gap = irr.delta_E_R - rev.delta_E_R;
    min_gap = std::min(min_gap, gap);
    if (!(gap > 0.0)) {
      result.add_failure({{pair.first, pair.second},
                          "irreversible dE_R not above the reversible one at "
                          "sigma = " + fmt(sigma)});
    }
    if (!(-irr.delta_E_R / reservoir.temperature < ds)) {
      result.add_failure({{pair.first, pair.second},
                          "-dE_R/T_R >= dS at sigma = " + fmt(sigma)});
    }
  }
  result.metrics["min_gap"] = min_gap;
  result.metrics["delta_E_R_rev"] = rev.delta_E_R;
  return result;
}

CheckResult check_entropy_nondecrease(const ProcessEngine& engine,
                                      const std::vector<ProcessRecord>& records,
                                      const Reservoir& reservoir) {
  CheckResult result;
  result.name = kNondecrease;
  int reversible = 0;
  for (const ProcessRecord& rec : records) {
    ++result.samples_used;
    const double zero = engine.zero_tolerance(rec.initial);
    result.tolerance_used = std::max(result.tolerance_used, zero);
    const double ds = measured_delta_s(engine, rec.initial, rec.final, reservoir);
    const bool is_zero = std::abs(ds) < zero;
    if (rec.reversible) ++reversible;
    std::string problem;
    if (ds < -zero) {
      problem = "entropy decreased by " + fmt(-ds) + " J/K";
    } else if (is_zero != rec.reversible) {
      problem = std::string(rec.reversible ? "reversible" : "irreversible") +
                " process with dS = " + fmt(ds) + " J/K";
    }
    if (!problem.empty()) {
      result.add_failure({{rec.initial, rec.final}, problem});
    }
  }
  result.metrics["reversible"] = reversible;
  result.metrics["irreversible"] = static_cast<double>(records.size()) - reversible;
  return result;
}

CheckResult check_mutual_equilibrium(const std::function<double(double)>& s1,
                                     const std::function<double(double)>& s2,
                                     double total_energy,
                                     const std::vector<double>& splits) {
  CheckResult result;
  result.name = kMutualEquilibrium;
  result.tolerance_used = 1e-12;
  if (splits.empty()) return result;
  double lo = INFINITY;
  double hi = -INFINITY;
  double lo_e = 0.0;
  double hi_e = 0.0;
  for (double e1 : splits) {
    const double s = s1(e1) + s2(total_energy - e1);
    ++result.samples_used;
    if (s < lo) lo = s, lo_e = e1;
    if (s > hi) hi = s, hi_e = e1;
  }
  result.metrics["spread"] = hi - lo;
  if (!(hi - lo < 1e-12)) {
    Witness w;
    w.note = "total entropy varies by " + fmt(hi - lo) +
             " J/K between splits E1 = " + fmt(lo_e) + " J and " + fmt(hi_e) +
             " J";
    result.add_failure(std::move(w));
  }
  return result;
}

CheckResult check_mutual_equilibrium(const Reservoir& r, const Reservoir& rd,
                                     int samples, std::uint64_t seed) {
  if (r.temperature != rd.temperature) {
    return not_applicable(kMutualEquilibrium,
                          "reservoirs are not identical copies (temperatures "
                          "differ)");
  }
  Rng rng = Rng(seed).fork(kMutualEquilibrium);
  const double total = r.energy + rd.energy;
  const double span = std::max({std::abs(r.energy), std::abs(rd.energy), 1e3});
  std::vector<double> splits{r.energy};
  for (int i = 1; i < samples; ++i) {
    splits.push_back(r.energy + span * rng.uniform(-1.0, 1.0));
  }
  return check_mutual_equilibrium(
      [&](double e) { return r.entropy_at(e); },
      [&](double e) { return rd.entropy_at(e); }, total, splits);
}

std::string to_string(InterconnectionBranch branch) {
  switch (branch) {
    case InterconnectionBranch::zero:
      return "zero";
    case InterconnectionBranch::negative:
      return "negative";
    case InterconnectionBranch::positive:
      return "positive";
  }
  return "unknown";
}

InterconnectionOutcome interconnect_by_weight_process(
    const ProcessEngine& engine, const State& a1, const State& a2,
    const Reservoir& reservoir) {
  InterconnectionOutcome out;
  out.reservoir_initial = reservoir;
  out.reservoir_final = reservoir;
  if (!engine.is_normal(a1) || !engine.is_normal(a2)) {
    out.applicable = false;
    out.message = "system '" + engine.system_of(a1) +
                  "' is not normal; the reservoir cannot be restored by "
                  "raising the system's energy";
    return out;
  }
  out.swp = engine.reversible_swp(a1, a2, reservoir);
  const double floor = reservoir.temperature * engine.zero_tolerance(a1);
  const double d = out.swp.delta_E_R;
  if (std::abs(d) <= floor) {
    out.branch = InterconnectionBranch::zero;
  } else if (d < 0.0) {
    out.branch = InterconnectionBranch::negative;
  } else {
    // Run the process backwards: A2 -> A1 hands energy to nobody but R.
    out.branch = InterconnectionBranch::positive;
    out.swp = engine.reversible_swp(a2, a1, reservoir);
  }
  // Restore R with a weight process for R alone: the weight raises its
  // energy back, which increases its entropy and is always admitted.
  const Reservoir after = out.swp.reservoir_final;
  const double delta = reservoir.energy - after.energy;
  if (delta < -floor) {
    throw EngineError("reservoir restoration would lower its entropy");
  }
  out.reservoir_final = after.with_energy(reservoir.energy);
  out.restore_work = -delta;
  out.bookkeeping_residual =
      std::abs(out.reservoir_initial.energy - out.reservoir_final.energy);

  out.process.kind = ProcessKind::weight;
  out.process.initial = out.swp.initial;
  out.process.final = out.swp.final;
  out.process.work_done = out.swp.work_done + out.restore_work;
  const double ds = delta / reservoir.temperature;
  out.process.reversible = out.branch == InterconnectionBranch::zero;
  out.process.sigma = out.process.reversible ? 0.0 : ds;
  const double de = out.process.final.energy() - out.process.initial.energy();
  out.energy_residual = std::abs(out.process.work_done + de);
  return out;
}

CheckResult check_interconnection(
    const ProcessEngine& engine,
    const std::vector<std::pair<State, State>>& pairs,
    const Reservoir& reservoir) {
  CheckResult result;
  result.name = kInterconnection;
  result.tolerance_used = kBookkeepingTolerance;
  double worst = 0.0;
  double worst_energy = 0.0;
  int branches[3] = {0, 0, 0};
  for (const auto& [a1, a2] : pairs) {
    const InterconnectionOutcome o =
        interconnect_by_weight_process(engine, a1, a2, reservoir);
    if (!o.applicable) return not_applicable(kInterconnection, o.message);
    ++result.samples_used;
    ++branches[static_cast<int>(o.branch)];
    worst = std::max(worst, o.bookkeeping_residual);
    const double scale = std::max(
        {1.0, std::abs(o.swp.delta_E_R), std::abs(o.process.work_done)});
    worst_energy = std::max(worst_energy, o.energy_residual / scale);
    if (!(o.bookkeeping_residual <= kBookkeepingTolerance)) {
      result.add_failure({{CompositeState(a1), CompositeState(a2)},
                          "reservoir not restored: residual " +
                              fmt(o.bookkeeping_residual) + " J"});
    }
    if (!(o.energy_residual <= 1e-12 * scale)) {
      result.add_failure({{CompositeState(a1), CompositeState(a2)},
                          "net work does not match the energy change"});
    }
    if (!(o.process.sigma >= 0.0)) {
      result.add_failure({{CompositeState(a1), CompositeState(a2)},
                          "net weight process lowers the entropy"});
    }
  }
  result.metrics["max_bookkeeping_residual"] = worst;
  result.metrics["max_relative_energy_residual"] = worst_energy;
  result.metrics["branch_zero"] = branches[0];
  result.metrics["branch_negative"] = branches[1];
  result.metrics["branch_positive"] = branches[2];
  return result;
}

CheckResult derive_assumptions_from_ch(
    const ProcessEngine& engine,
    const std::vector<std::pair<State, State>>& pairs,
    const Reservoir& reservoir, bool comparison_holds, bool axioms_hold) {
  if (!comparison_holds || !axioms_hold) {
    return not_applicable(kDeriveAssumptions,
                          "comparison hypothesis or axioms not established");
  }
  CheckResult result;
  result.name = kDeriveAssumptions;
  result.tolerance_used = kBookkeepingTolerance;
  double worst_sigma = 0.0;
  int skipped = 0;
  for (const auto& [a1, a2] : pairs) {
    ++result.samples_used;
    // (a) the stable equilibrium state of equal energy and regions.
    const State se = engine.stable_equilibrium_like(a1);
    const auto forward = engine.weight_process(a1, se);
    if (!forward) {
      result.add_failure({{CompositeState(a1), CompositeState(se)},
                          "(a) no weight process to the stable equilibrium "
                          "state"});
    } else if (!forward->reversible &&
               engine.weight_process(se, a1).has_value()) {
      result.add_failure({{CompositeState(a1), CompositeState(se)},
                          "(a) stable equilibrium state returns to the "
                          "state"});
    }

    // (b) A1 -> A3se -> A4se -> A2, every leg reversible.
    const auto a3 = engine.isentropic_equilibrium(a1);
    const auto a4 = engine.isentropic_equilibrium(a2);
    if (!a3 || !a4) {
      ++skipped;
      continue;
    }
    const auto leg1 = engine.weight_process(a1, *a3);
    const auto leg3 = engine.weight_process(*a4, a2);
    if (!leg1 || !leg3) {
      result.add_failure({{CompositeState(a1), CompositeState(a2)},
                          "(b) isentropic leg refused"});
      continue;
    }
    const StandardWeightProcessRecord leg2 =
        engine.reversible_swp(*a3, *a4, reservoir);
    const double sigma = leg1->sigma + leg2.sigma + leg3->sigma;
    worst_sigma = std::max(worst_sigma, sigma);
    if (!(sigma < kBookkeepingTolerance) || !leg1->reversible ||
        !leg3->reversible) {
      result.add_failure({{CompositeState(a1), CompositeState(*a3),
                           CompositeState(*a4), CompositeState(a2)},
                          "(b) chain generates " + fmt(sigma) + " J/K"});
    }
  }
  result.metrics["max_chain_sigma"] = worst_sigma;
  result.metrics["skipped"] = skipped;
  return result;
}

double carnot_reservoir_delta(const IdealGasModel& gas, const State& a1,
                              const State& a2, double reservoir_temperature) {
  if (a1.kind != StateKind::stable_equilibrium ||
      a2.kind != StateKind::stable_equilibrium) {
    throw DomainError("quasistatic path needs equilibrium end states");
  }
  const double n = a1.coords.at(2);
  if (std::abs(a2.coords.at(2) - n) > 1e-12 * n) {
    throw DomainError("quasistatic path between different amounts");
  }
  const double u1 = a1.coords[0];
  const double v1 = a1.coords[1];
  const double du = a2.coords[0] - u1;
  const double dv = a2.coords[1] - v1;
  const QuadratureResult q = integrate(
      [&](double s) {
        const State x = gas.make_state(u1 + s * du, v1 + s * dv, n);
        return (du + gas.pressure(x) * dv) / gas.temperature(x);
      },
      0.0, 1.0);
  if (!q.converged()) {
    throw NumericError("Carnot path quadrature did not converge");
  }
  return -reservoir_temperature * q.value;
}

CheckResult check_carnot_agreement(
    const ProcessEngine& engine, const IdealGasModel& gas,
    const std::vector<std::pair<State, State>>& pairs,
    const Reservoir& reservoir) {
  CheckResult result;
  result.name = kCarnotAgreement;
  result.tolerance_used = kCarnotTolerance;
  double worst = 0.0;
  for (const auto& [a1, a2] : pairs) {
    const double engine_delta =
        engine.reversible_swp(a1, a2, reservoir).delta_E_R;
    const double path_delta =
        carnot_reservoir_delta(gas, a1, a2, reservoir.temperature);
    ++result.samples_used;
    const double scale = std::max(std::abs(engine_delta), std::abs(path_delta));
    const double rel = scale > 0.0 ? std::abs(engine_delta - path_delta) / scale
                                   : 0.0;
    worst = std::max(worst, rel);
    if (!(rel < kCarnotTolerance)) {
      result.add_failure({{CompositeState(a1), CompositeState(a2)},
                          "engine " + fmt(engine_delta) + " J vs path " +
                              fmt(path_delta) + " J"});
    }
  }
  result.metrics["max_relative_difference"] = worst;
  return result;
}

}  // namespace axtherm
