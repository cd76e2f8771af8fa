#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axtherm/check_result.hpp"
#include "axtherm/ly_entropy.hpp"
#include "axtherm/model_catalog.hpp"
#include "axtherm/process.hpp"

namespace axtherm {

namespace check_names {
inline constexpr const char* kKelvinGauge = "zb.kelvin_gauge";
inline constexpr const char* kTemperatureMeasurement =
    "zb.temperature_measurement";
inline constexpr const char* kTemperatureRatio = "zb.temperature_ratio";
inline constexpr const char* kReservoirIndependence =
    "zb.reservoir_independence";
inline constexpr const char* kEntropyAdditivity = "zb.entropy_additivity";
inline constexpr const char* kPmm2 = "zb.pmm2";
inline constexpr const char* kLowerBound = "zb.lower_bound";
inline constexpr const char* kNondecrease = "zb.entropy_nondecrease";
inline constexpr const char* kMutualEquilibrium = "zb.mutual_equilibrium";
inline constexpr const char* kInterconnection = "zb.interconnection";
inline constexpr const char* kDeriveAssumptions = "zb.derive_assumptions";
inline constexpr const char* kCarnotAgreement = "zb.carnot_agreement";
}  // namespace check_names

inline constexpr double kTemperatureTolerance = 1e-9;  // relative
inline constexpr double kZbAdditivityTolerance = 1e-9;  // J/K
inline constexpr double kCarnotTolerance = 1e-7;        // relative
inline constexpr double kBookkeepingTolerance = 1e-12;  // J

/// A pair of end states used to probe reservoirs.
using Probe = std::pair<CompositeState, CompositeState>;

/// T_R0 * dE_R / dE_R0 from two reversible standard weight processes.
/// Throws DegenerateError when the probe has no entropy change.
double temperature_of(const ProcessEngine& engine, const Reservoir& reservoir,
                      const ReferenceReservoir& reference, const Probe& probe);

/// temperature_of(R0, R0, probe) must be 273.16 K exactly.
CheckResult check_kelvin_gauge(const ProcessEngine& engine,
                               const ReferenceReservoir& reference,
                               const std::vector<Probe>& probes);

/// Measured temperature equals the declared one within 1e-9 relative.
CheckResult check_temperature_measurement(
    const ProcessEngine& engine, const ReferenceReservoir& reference,
    const std::vector<Reservoir>& reservoirs, const std::vector<Probe>& probes);

/// dE_R1 / dE_R2 is positive and the same for every probe; when
/// `expected` is given the common value must also match it.
CheckResult temperature_ratio_independence(
    const ProcessEngine& engine, const Reservoir& r1, const Reservoir& r2,
    const std::vector<Probe>& probes,
    std::optional<double> expected = std::nullopt);

/// S(X) = S0 - dE_R(A0 -> X) / T_R for every state; engine refusals are
/// recorded per entry.
EntropyTable entropy_zb(const ProcessEngine& engine, const State& a0,
                        double s0, const Reservoir& reservoir,
                        const std::vector<State>& states);

/// dE_R / T_R agrees across reservoirs for every pair.
CheckResult check_reservoir_independence(
    const ProcessEngine& engine, const std::vector<Probe>& pairs,
    const std::vector<Reservoir>& reservoirs);

/// |dS(AB) - dS(A) - dS(B)| measured through standard weight processes.
double entropy_additivity_residual(const ProcessEngine& engine,
                                   const Probe& pair_a, const Probe& pair_b,
                                   const Reservoir& reservoir);

CheckResult check_entropy_additivity_zb(
    const ProcessEngine& engine,
    const std::vector<std::pair<Probe, Probe>>& draws,
    const Reservoir& reservoir);

/// No weight process from a stable equilibrium state of a normal system
/// at fixed regions ends at lower energy.
CheckResult check_pmm2(const ProcessEngine& engine, const State& ses,
                       int attempts, std::uint64_t seed);

/// The reversible dE_R is strictly below every irreversible one.
CheckResult check_lower_bound(const ProcessEngine& engine, const Probe& pair,
                              const Reservoir& reservoir, int n_irr,
                              std::uint64_t seed);

/// dS = 0 iff reversible and dS > 0 iff irreversible, dS measured with
/// reversible standard weight processes against `reservoir`.
CheckResult check_entropy_nondecrease(const ProcessEngine& engine,
                                      const std::vector<ProcessRecord>& records,
                                      const Reservoir& reservoir);

/// Total entropy S1(E1) + S2(E - E1) is constant over `splits`.
CheckResult check_mutual_equilibrium(const std::function<double(double)>& s1,
                                     const std::function<double(double)>& s2,
                                     double total_energy,
                                     const std::vector<double>& splits);

/// Reservoir form: requires equal temperatures (an identical copy) and
/// draws `samples` random splits.
CheckResult check_mutual_equilibrium(const Reservoir& r, const Reservoir& rd,
                                     int samples, std::uint64_t seed);

enum class InterconnectionBranch { zero, negative, positive };

std::string to_string(InterconnectionBranch branch);

struct InterconnectionOutcome {
  bool applicable = true;
  std::string message;
  InterconnectionBranch branch = InterconnectionBranch::zero;
  StandardWeightProcessRecord swp;
  /// Net weight process for the system alone.
  ProcessRecord process;
  Reservoir reservoir_initial;
  Reservoir reservoir_final;
  double restore_work = 0.0;  // work done by R while being restored
  /// |E_R(initial) - E_R(final)|.
  double bookkeeping_residual = 0.0;
  /// |W_net - (E_initial - E_final)| of the system.
  double energy_residual = 0.0;
};

/// A reversible standard weight process followed by a weight process that
/// restores the reservoir, yielding a weight process for A alone (from A1
/// to A2, or from A2 to A1 when the reservoir would have gained energy).
/// Not applicable to systems that are not normal.
InterconnectionOutcome interconnect_by_weight_process(
    const ProcessEngine& engine, const State& a1, const State& a2,
    const Reservoir& reservoir);

CheckResult check_interconnection(const ProcessEngine& engine,
                                  const std::vector<std::pair<State, State>>& pairs,
                                  const Reservoir& reservoir);

/// With comparability and the axioms established: (a) every state reaches
/// the stable equilibrium state of equal energy and regions, not the
/// reverse unless they are equivalent; (b) the chain A1 -> A3se -> A4se ->
/// A2 through isentropic stable equilibrium states is reversible.
CheckResult derive_assumptions_from_ch(const ProcessEngine& engine,
                                       const std::vector<std::pair<State, State>>&
                                           pairs,
                                       const Reservoir& reservoir,
                                       bool comparison_holds,
                                       bool axioms_hold);

/// -T_R * integral of (dU + p dV) / T along the straight (U, V) segment,
/// evaluated from the equation of state alone. Equilibrium states only.
double carnot_reservoir_delta(const IdealGasModel& gas, const State& a1,
                              const State& a2, double reservoir_temperature);

/// Engine reservoir deltas against the path integrator, 1e-7 relative.
CheckResult check_carnot_agreement(const ProcessEngine& engine,
                                   const IdealGasModel& gas,
                                   const std::vector<std::pair<State, State>>& pairs,
                                   const Reservoir& reservoir);

}  // namespace axtherm
