#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axtherm/core_model.hpp"
#include "axtherm/model_system.hpp"
#include "axtherm/process.hpp"

namespace axtherm {

inline constexpr double kGasConstant = 8.314462618;  // J/(mol K)
inline constexpr double kBoltzmann = 1.380649e-23;   // J/K

// ---------------------------------------------------------------------------
// Ideal gas
// ---------------------------------------------------------------------------

/// Reference point of the entropy gauge: S = nR[c ln(U/(nU*)) +
/// ln(V/(nV*))] + n s*.
struct IdealGasGauge {
  double u_star = 1.0;  // J
  double v_star = 1.0;  // m^3
  double s_star = 0.0;  // J/(mol K)
};

/// Sampling box for the reference amount n. Scaled copies use the box
/// scaled by their amount ratio.
struct IdealGasBox {
  double u_min = 1000.0;
  double u_max = 6000.0;
  double v_min = 0.01;
  double v_max = 0.05;
  double deficit_max = 1.0;  // J/K, largest sampled nonequilibrium deficit
};

struct IdealGasParams {
  std::string id = "ideal_gas";
  double n = 1.0;        // mol
  double c_v_hat = 1.5;  // U = c_v_hat n R T
  IdealGasGauge gauge;
  IdealGasBox box;
};

/// Ideal gas with coordinates (U, V, n, deficit).
///
/// The deficit d >= 0 labels nonequilibrium states: a state with internal
/// unrelaxed structure whose entropy is S_eq(U, V, n) - d. Equilibrium
/// states have d = 0. Every coordinate is extensive.
class IdealGasModel final : public ModelSystem {
 public:
  explicit IdealGasModel(IdealGasParams params = {});

  const IdealGasParams& params() const { return params_; }

  /// Throws DomainError unless U > 0, V > 0, n > 0, deficit >= 0.
  State make_state(double u, double v, double n, double deficit = 0.0) const;
  State make_state(double u, double v) const {
    return make_state(u, v, params_.n);
  }

  /// Equilibrium entropy S_eq(U, V, n), J/K.
  double equilibrium_entropy(double u, double v, double n) const;
  double temperature(const State& state) const;
  double pressure(const State& state) const;

  /// nu x nv grid of equilibrium states spanning the box.
  std::vector<State> grid(std::size_t nu, std::size_t nv) const;

  const std::string& id() const override { return params_.id; }
  std::vector<StateSpace> spaces() const override;
  double energy(const State& state) const override;
  double oracle_entropy(const State& state) const override;
  Composition composition(const State& state) const override;
  bool is_normal() const override { return true; }
  std::optional<EnergyBounds> energy_bounds() const override {
    return std::nullopt;
  }
  bool supports_scaling() const override { return true; }
  State scale_state(const State& state, double t) const override;

  State sample_state(Rng& rng) const override;
  State sample_like(const State& like, Rng& rng) const override;
  State sample_same_region(const State& like, Rng& rng) const override;
  std::optional<State> sample_nonequilibrium(Rng& rng) const override;
  State equal_entropy_partner(const State& state, Rng& rng) const override;
  State stable_equilibrium_like(const State& state) const override;
  std::optional<State> equilibrium_with_entropy(const State& like,
                                                double entropy) const override;
  State raise_energy(const State& state, double delta) const override;

 private:
  struct Coords {
    double u, v, n, deficit;
  };
  Coords unpack(const State& state) const;

  IdealGasParams params_;
};

std::shared_ptr<const IdealGasModel> ideal_gas(double n = 1.0,
                                               double c_v_hat = 1.5,
                                               IdealGasGauge gauge = {});
std::shared_ptr<const IdealGasModel> ideal_gas(IdealGasParams params);

// ---------------------------------------------------------------------------
// Two-level spin system
// ---------------------------------------------------------------------------

struct TwoLevelSpinParams {
  std::string id = "two_level_spin";
  int n_spins = 100;
  double eps = 1e-21;  // J, level spacing
};

/// N independent two-level spins; energy bounded in [0, N eps]. The
/// entropy k_B ln C(N, E/eps) is continued to real E/eps through the
/// Gamma function, so it agrees with the discrete count at integer
/// occupations. Not a normal system; has no scaled copies.
class TwoLevelSpinModel final : public ModelSystem {
 public:
  explicit TwoLevelSpinModel(TwoLevelSpinParams params = {});

  const TwoLevelSpinParams& params() const { return params_; }
  double max_energy() const { return params_.n_spins * params_.eps; }

  /// Throws DomainError outside [0, N eps].
  State make_state(double e) const;
  double entropy_at(double e) const;

  const std::string& id() const override { return params_.id; }
  std::vector<StateSpace> spaces() const override;
  double energy(const State& state) const override;
  double oracle_entropy(const State& state) const override;
  Composition composition(const State& state) const override;
  bool is_normal() const override { return false; }
  std::optional<EnergyBounds> energy_bounds() const override;
  bool supports_scaling() const override { return false; }
  double entropy_unit() const override { return kBoltzmann; }

  State sample_state(Rng& rng) const override;
  State sample_like(const State& like, Rng& rng) const override;
  State equal_entropy_partner(const State& state, Rng& rng) const override;
  State stable_equilibrium_like(const State& state) const override;
  std::optional<State> equilibrium_with_entropy(const State& like,
                                                double entropy) const override;

 private:
  TwoLevelSpinParams params_;
};

std::shared_ptr<const TwoLevelSpinModel> two_level_spin(int n_spins = 100,
                                                        double eps = 1e-21);

// ---------------------------------------------------------------------------
// Triple-point reservoir
// ---------------------------------------------------------------------------

struct TriplePointParams {
  std::string id = "triple_point";
  double window_low = 0.0;     // J
  double window_high = 1.0e6;  // J, latent-heat capacity of the window
  double heat_capacity = 4.0e3;  // J/K, single-phase capacity outside
};

/// Ice / liquid / vapour reservoir. Inside the two-phase window its
/// entropy is exactly affine with slope 1/273.16 K; outside it behaves as
/// a single phase of finite heat capacity.
class TriplePointReservoirModel final : public ModelSystem {
 public:
  explicit TriplePointReservoirModel(TriplePointParams params = {});

  const TriplePointParams& params() const { return params_; }

  State make_state(double e) const;
  double entropy_at(double e) const;
  double temperature_at(double e) const;
  bool in_window(double e) const;
  /// |S(E) - affine extension of the window relation|, J/K.
  double window_deviation(double e) const;
  /// Affine reservoir view, valid inside the window; the engine refuses
  /// processes leaving it.
  Reservoir reservoir(double e) const;

  const std::string& id() const override { return params_.id; }
  std::vector<StateSpace> spaces() const override;
  double energy(const State& state) const override;
  double oracle_entropy(const State& state) const override;
  Composition composition(const State& state) const override;
  bool is_normal() const override { return true; }
  std::optional<EnergyBounds> energy_bounds() const override {
    return std::nullopt;
  }
  bool supports_scaling() const override { return false; }

  State sample_state(Rng& rng) const override;
  State sample_like(const State& like, Rng& rng) const override;
  State equal_entropy_partner(const State& state, Rng& rng) const override;
  State stable_equilibrium_like(const State& state) const override;
  std::optional<State> equilibrium_with_entropy(const State& like,
                                                double entropy) const override;
  State raise_energy(const State& state, double delta) const override;

 private:
  TriplePointParams params_;
};

/// Triple-point reservoir whose window spans `capacity` joules.
std::shared_ptr<const TriplePointReservoirModel> triple_point_reservoir(
    double capacity);

// ---------------------------------------------------------------------------
// Finite preorder fixtures
// ---------------------------------------------------------------------------

struct FinitePreorderFixture {
  std::string name = "fixture";
  std::vector<std::int64_t> states;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  /// Stable-equilibrium subset; when absent every state is equilibrium.
  std::optional<std::vector<std::int64_t>> equilibrium;
};

/// Explicit relation over integer-labelled states. Stored as given:
/// reflexivity and transitivity are checked, never assumed.
class FiniteRelation final : public AccessibilityRelation {
 public:
  explicit FiniteRelation(FinitePreorderFixture fixture);

  const FinitePreorderFixture& fixture() const { return fixture_; }

  /// State for a label; DomainError for unknown labels.
  State state(std::int64_t label) const;
  std::int64_t label_of(const State& state) const;
  bool related(std::int64_t from, std::int64_t to) const;
  bool is_equilibrium(std::int64_t label) const;

  bool precedes(const CompositeState& x,
                const CompositeState& y) const override;
  bool finite() const override { return true; }
  std::vector<State> universe() const override;
  State sample(Rng& rng) const override;
  State sample_partner(const State& state, Rng& rng) const override;
  std::optional<State> sample_nonequilibrium(Rng& rng) const override;
  bool supports_scaling() const override { return false; }
  State scale(const State& state, double t) const override;
  double tolerance() const override { return 0.0; }
  std::string describe() const override;

 private:
  std::size_t index_of(std::int64_t label) const;

  FinitePreorderFixture fixture_;
  std::vector<std::size_t> sorted_index_;  // positions sorted by label
  std::vector<bool> matrix_;
  std::vector<bool> equilibrium_;
};

/// Parses the fixture_v1 JSON format. Syntax errors carry line/column;
/// schema violations name the offending field.
FinitePreorderFixture parse_fixture(const std::string& text);
FinitePreorderFixture load_fixture(const std::filesystem::path& path);
std::string fixture_to_json(const FinitePreorderFixture& fixture);

/// Discrete spin system: states k = 0..N with k < j iff C(N,k) <= C(N,j).
/// Exact integer arithmetic; N <= 60.
FinitePreorderFixture spin_discrete_fixture(int n_spins);

}  // namespace axtherm
