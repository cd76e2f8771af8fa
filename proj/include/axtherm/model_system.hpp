#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axtherm/core_model.hpp"

namespace axtherm {

struct Reservoir;

struct EnergyBounds {
  double min = 0.0;
  double max = 0.0;
};

/// A concrete physical model.
///
/// The model plays nature: it knows the ground-truth (oracle) entropy and
/// decides which processes can happen. Entropy constructions never see a
/// ModelSystem; they talk to an AccessibilityRelation or a ProcessEngine.
///
/// The virtual "behaviour hooks" at the bottom default to the physically
/// correct behaviour; mutants override exactly one of them.
class ModelSystem {
 public:
  virtual ~ModelSystem() = default;

  virtual const std::string& id() const = 0;
  virtual std::vector<StateSpace> spaces() const = 0;

  virtual double energy(const State& state) const = 0;
  /// Ground-truth entropy, J/K.
  virtual double oracle_entropy(const State& state) const = 0;
  virtual Composition composition(const State& state) const = 0;

  /// Energy unbounded above and raisable at fixed regions.
  virtual bool is_normal() const = 0;
  virtual std::optional<EnergyBounds> energy_bounds() const = 0;

  virtual bool supports_scaling() const = 0;
  /// tX. Default: CapabilityError.
  virtual State scale_state(const State& state, double t) const;

  /// Natural entropy scale (1 J/K for macroscopic models, k_B for spins).
  virtual double entropy_unit() const { return 1.0; }

  bool owns(const State& state) const { return state.space_id.root == id(); }

  // -- nature-side state generation -----------------------------------

  /// Random equilibrium state of the model's reference space.
  virtual State sample_state(Rng& rng) const = 0;
  /// Random equilibrium state with the same composition as `like`.
  virtual State sample_like(const State& like, Rng& rng) const = 0;
  /// Random state with the same composition and regions as `like`
  /// (equilibrium or not).
  virtual State sample_same_region(const State& like, Rng& rng) const;
  /// Random nonequilibrium state, if the model has any.
  virtual std::optional<State> sample_nonequilibrium(Rng& rng) const;
  /// A different state with the same oracle entropy (reachable reversibly).
  virtual State equal_entropy_partner(const State& state, Rng& rng) const = 0;
  /// The stable equilibrium state with the energy and regions of `state`.
  virtual State stable_equilibrium_like(const State& state) const = 0;
  /// The stable equilibrium state with the regions and composition of
  /// `like` and the given entropy, if one exists.
  virtual std::optional<State> equilibrium_with_entropy(
      const State& like, double entropy) const = 0;
  /// Raise the energy by `delta` > 0 at fixed regions (Postulate-3 style
  /// stirring). Default: CapabilityError.
  virtual State raise_energy(const State& state, double delta) const;

  // -- behaviour hooks --------------------------------------------------

  /// Entropy of a composite whose parts all belong to this model.
  virtual double combine_entropies(std::span<const State> parts,
                                   std::span<const double> entropies) const;
  /// Induced accessibility between entropies: from <= to (+ tolerance).
  virtual bool entropy_order(double from, double to, double tolerance) const;
  /// Whether nature executes a process with entropy change delta_s.
  virtual bool admits_process(double delta_s, double zero_tolerance) const;
  /// Additive disturbance of the work recorded for a polygonal leg.
  virtual double work_perturbation(Rng& rng) const;
  /// Temperature at which nature exchanges energy with `reservoir`.
  virtual double reservoir_temperature(const Reservoir& reservoir) const;
};

using ModelPtr = std::shared_ptr<const ModelSystem>;

/// Dispatches states to the models owning them.
class ModelSet {
 public:
  explicit ModelSet(std::vector<ModelPtr> models);

  const ModelSystem& owner(const State& state) const;
  const ModelSystem& primary() const { return *models_.front(); }
  const std::vector<ModelPtr>& models() const { return models_; }

  double entropy(const CompositeState& state) const;
  Composition composition(const CompositeState& state) const;
  double entropy_unit(const CompositeState& state) const;
  /// The model that supplies behaviour hooks for a composite: the common
  /// owner if all parts share one, otherwise the primary model.
  const ModelSystem& governing(const CompositeState& state) const;
  /// Whether every part has a common owner.
  bool homogeneous(const CompositeState& state) const;

 private:
  std::vector<ModelPtr> models_;
};

/// Default relative tolerance of induced comparisons.
inline constexpr double kRelationTolerance = 1e-12;

/// Accessibility induced from oracle entropy: X < Y iff S(X) <= S(Y), for
/// states with equal composition. States of different composition are
/// incomparable.
class InducedRelation final : public AccessibilityRelation {
 public:
  explicit InducedRelation(std::vector<ModelPtr> models,
                           double relative_tolerance = kRelationTolerance);
  explicit InducedRelation(ModelPtr model,
                           double relative_tolerance = kRelationTolerance);

  bool precedes(const CompositeState& x,
                const CompositeState& y) const override;
  bool finite() const override { return false; }
  std::vector<State> universe() const override { return {}; }
  State sample(Rng& rng) const override;
  State sample_partner(const State& state, Rng& rng) const override;
  std::optional<State> sample_nonequilibrium(Rng& rng) const override;
  bool supports_scaling() const override;
  State scale(const State& state, double t) const override;
  double tolerance() const override { return relative_tolerance_; }
  std::string describe() const override;

  /// Absolute entropy tolerance used when comparing x and y.
  double comparison_tolerance(double sx, double sy,
                              const CompositeState& x) const;

  const ModelSet& models() const { return models_; }

 private:
  ModelSet models_;
  double relative_tolerance_;
};

}  // namespace axtherm
