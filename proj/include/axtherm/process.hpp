#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axtherm/core_model.hpp"
#include "axtherm/model_system.hpp"

namespace axtherm {

/// Kelvin-scale temperature assigned to the reference reservoir.
inline constexpr double kTriplePointTemperature = 273.16;

/// Thermal reservoir with an exactly affine constitutive relation
/// S(E) = ref_entropy + (E - ref_energy) / temperature.
struct Reservoir {
  std::string id;
  double temperature = kTriplePointTemperature;  // K
  double energy = 0.0;                           // J
  double ref_energy = 0.0;
  double ref_entropy = 0.0;
  RegionDescriptor region;
  /// Energy range inside which the model is valid; the engine refuses
  /// processes that leave it.
  std::optional<std::pair<double, double>> energy_window;

  double entropy_at(double e) const {
    return ref_entropy + (e - ref_energy) / temperature;
  }
  double entropy() const { return entropy_at(energy); }
  Reservoir with_energy(double e) const {
    Reservoir r = *this;
    r.energy = e;
    return r;
  }
};

/// Throws DomainError unless temperature > 0 and energies are finite.
Reservoir make_reservoir(std::string id, double temperature,
                         double energy = 0.0);

/// The reservoir that fixes the temperature scale (273.16 K exactly).
class ReferenceReservoir {
 public:
  explicit ReferenceReservoir(double energy = 0.0);
  const Reservoir& reservoir() const { return reservoir_; }
  double temperature() const { return reservoir_.temperature; }

 private:
  Reservoir reservoir_;
};

/// Standard weight process for a system A coupled to a reservoir R.
struct StandardWeightProcessRecord {
  CompositeState initial;
  CompositeState final;
  std::string reservoir_id;
  double reservoir_temperature = 0.0;  // declared T^R
  Reservoir reservoir_initial;
  Reservoir reservoir_final;
  double delta_E_R = 0.0;  // J
  double work_done = 0.0;  // by AR on the weight, J
  bool reversible = true;
  double sigma = 0.0;  // J/K
};

enum class LegDirection { along, against };

struct PolygonalLeg {
  ProcessRecord process;  // kind == weight
  LegDirection direction = LegDirection::along;
};

/// Chain of weight processes A1 - A_i1 - ... - A2, each traversed either
/// along or against its execution direction.
struct WeightPolygonal {
  std::vector<PolygonalLeg> legs;
  CompositeState start;
  CompositeState end;
};

/// Sort of weight process drawn by ProcessEngine::random_weight_process.
enum class ProcessFlavor { reversible, stirring, relaxation, generic };

/// Executes processes on behalf of nature.
///
/// Holds the models (and with them the oracle) privately; callers only
/// see executed process records.
class ProcessEngine {
 public:
  explicit ProcessEngine(std::vector<ModelPtr> models);
  explicit ProcessEngine(ModelPtr model);
  virtual ~ProcessEngine() = default;

  // -- declared capabilities ------------------------------------------
  bool is_normal(const CompositeState& state) const;
  bool supports_scaling(const CompositeState& state) const;
  const std::string& system_of(const State& state) const;
  std::optional<EnergyBounds> energy_bounds(const State& state) const;

  /// Threshold below which an entropy change counts as zero.
  double zero_tolerance(const CompositeState& state) const;

  // -- processes --------------------------------------------------------

  /// Weight process for the system alone from `from` to `to`, or nullopt
  /// when nature forbids it (entropy would decrease, or compositions
  /// differ).
  virtual std::optional<ProcessRecord> weight_process(
      const CompositeState& from, const CompositeState& to) const;

  /// Reversible standard weight process. Throws PreconditionError for
  /// non-separable or correlated end states and EngineError when the
  /// reservoir would leave its energy window.
  virtual StandardWeightProcessRecord reversible_swp(
      const CompositeState& a1, const CompositeState& a2,
      const Reservoir& reservoir) const;

  /// Irreversible standard weight process generating `sigma` > 0.
  StandardWeightProcessRecord irreversible_swp(const CompositeState& a1,
                                               const CompositeState& a2,
                                               const Reservoir& reservoir,
                                               double sigma) const;

  /// Polygonal of 1-4 legs through random intermediate states. nullopt
  /// when some leg cannot be executed in either direction.
  std::optional<WeightPolygonal> random_polygonal(const State& from,
                                                  const State& to,
                                                  Rng& rng) const;

  /// Random weight process starting at `from`.
  ProcessRecord random_weight_process(const State& from, Rng& rng) const;
  /// Weight process of a specific flavour; nullopt when the flavour does
  /// not apply at `from` (e.g. stirring a bounded system).
  std::optional<ProcessRecord> weight_process_of(ProcessFlavor flavor,
                                                 const State& from,
                                                 Rng& rng) const;
  /// Random attempt at a weight process ending in the regions of `from`;
  /// nullopt if nature rejects the drawn target.
  std::optional<ProcessRecord> fixed_region_attempt(const State& from,
                                                    Rng& rng) const;

  // -- existence statements (states nature guarantees) -----------------
  State sample_state(const std::string& system, Rng& rng) const;
  State sample_like(const State& like, Rng& rng) const;
  std::optional<State> sample_nonequilibrium(const std::string& system,
                                             Rng& rng) const;
  State stable_equilibrium_like(const State& state) const;
  /// Stable equilibrium state with the regions and entropy of `state`.
  std::optional<State> isentropic_equilibrium(const State& state) const;

 protected:
  const ModelSet& models() const { return models_; }

 private:
  ModelSet models_;
};

}  // namespace axtherm
