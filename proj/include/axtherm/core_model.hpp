#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axtherm/random.hpp"

namespace axtherm {

/// Per-coordinate tolerance used when two states are compared for equality.
inline constexpr double kStateTolerance = 1e-12;

/// Identifies a state space: the root system it derives from and the
/// scale factor t of the scaled copy (1 for the unscaled space).
struct SpaceId {
  std::string root;
  double scale = 1.0;

  friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

std::string to_string(const SpaceId& id);

/// Opaque descriptor of the regions of space occupied by the constituents.
/// "No net change of the regions" is descriptor equality.
class RegionDescriptor {
 public:
  RegionDescriptor() = default;
  explicit RegionDescriptor(std::string key) : key_(std::move(key)) {}

  const std::string& key() const { return key_; }

  friend bool operator==(const RegionDescriptor&,
                         const RegionDescriptor&) = default;

 private:
  std::string key_;
};

enum class StateKind { equilibrium, stable_equilibrium, nonequilibrium };

std::string to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& name);

struct State {
  SpaceId space_id;
  std::vector<double> coords;
  double energy = 0.0;  // J
  RegionDescriptor region;
  bool separable = true;
  bool uncorrelated = true;
  StateKind kind = StateKind::stable_equilibrium;
};

/// Throws DomainError when the energy is not finite or a stable
/// equilibrium state is flagged non-separable or correlated.
void validate(const State& state);

bool approx_equal(const State& a, const State& b,
                  double tolerance = kStateTolerance);

/// Amount of each constituent, keyed by composition tag.
using Composition = std::map<std::string, double>;

bool same_composition(const Composition& a, const Composition& b,
                      double relative_tolerance = 1e-9);

/// An ordered tuple of states of (possibly different, possibly scaled)
/// systems. Nested composition flattens, so ((X, Y), Z) and (X, (Y, Z))
/// are the same value.
struct CompositeState {
  std::vector<State> parts;

  CompositeState() = default;
  CompositeState(State single) { parts.push_back(std::move(single)); }  // NOLINT
  explicit CompositeState(std::vector<State> states)
      : parts(std::move(states)) {}

  bool empty() const { return parts.empty(); }
  std::size_t size() const { return parts.size(); }

  /// Sum of part energies.
  double energy() const;

  /// Every part separable (and, for the second form, uncorrelated).
  bool separable() const;
  bool separable_and_uncorrelated() const;
};

CompositeState compose_states(std::initializer_list<CompositeState> pieces);
CompositeState compose_states(std::span<const CompositeState> pieces);

bool approx_equal(const CompositeState& a, const CompositeState& b,
                  double tolerance = kStateTolerance);

struct StateSpace {
  SpaceId id;
  std::vector<std::string> coord_names;
  std::string composition_tag;
  bool scalable = false;
  std::optional<SpaceId> parent_id;
  std::vector<StateSpace> factors;  // non-empty for composite spaces

  double scale() const { return id.scale; }
};

/// Composite space of the given factors (flattening composite factors).
/// Throws DomainError on an empty list.
StateSpace compose(std::span<const StateSpace> spaces);

/// The t-scaled copy. Throws DomainError for t <= 0 and CapabilityError
/// when the space does not admit scaled copies.
StateSpace scale(const StateSpace& space, double t);

/// A process that was actually executed by a process engine.
enum class ProcessKind { weight, weight_polygonal, standard_weight };

std::string to_string(ProcessKind kind);

struct ProcessRecord {
  ProcessKind kind = ProcessKind::weight;
  CompositeState initial;
  CompositeState final;
  double work_done = 0.0;  // W^{A->}: work done by the system, J
  std::optional<double> reservoir_delta;  // J
  bool reversible = true;
  double sigma = 0.0;  // entropy generated, J/K
};

/// reversible <=> sigma == 0 and sigma >= 0.
void validate(const ProcessRecord& record);

/// The adiabatic accessibility preorder.
///
/// Implementations answer X < Y queries for (composite) states. Finite
/// relations enumerate their universe; induced relations sample it.
class AccessibilityRelation {
 public:
  virtual ~AccessibilityRelation() = default;

  /// X < Y: Y is reachable from X by a weight process.
  virtual bool precedes(const CompositeState& x,
                        const CompositeState& y) const = 0;

  virtual bool finite() const = 0;

  /// All states of a finite relation; empty for induced relations.
  virtual std::vector<State> universe() const = 0;

  /// A state of the declared (equilibrium) state space.
  virtual State sample(Rng& rng) const = 0;

  /// A state of the same space placed on a comparison boundary with
  /// `state` when the relation can produce one (an adiabatically
  /// equivalent state); otherwise any state.
  virtual State sample_partner(const State& state, Rng& rng) const = 0;

  /// A state of the extended space outside the equilibrium subset, if the
  /// relation has any.
  virtual std::optional<State> sample_nonequilibrium(Rng& rng) const = 0;

  virtual bool supports_scaling() const = 0;

  /// tX. Throws CapabilityError when scaling is unsupported.
  virtual State scale(const State& state, double t) const = 0;

  /// Entropy-like tolerance folded into comparisons (0 for finite).
  virtual double tolerance() const = 0;

  virtual std::string describe() const = 0;
};

/// Scales every part of a composite.
CompositeState scale(const AccessibilityRelation& relation,
                     const CompositeState& state, double t);

enum class Accessibility { forward, backward_only, both, incomparable };

std::string to_string(Accessibility a);

Accessibility accessible(const AccessibilityRelation& relation,
                         const CompositeState& x, const CompositeState& y);

}  // namespace axtherm
