#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axtherm/core_model.hpp"

namespace axtherm {

inline constexpr double kLambdaTolerance = 1e-9;
inline constexpr int kLambdaMaxIterations = 200;

/// X0 << X1 with assigned entropies S0 < S1.
struct ReferencePair {
  State x0;
  State x1;
  double s0 = 0.0;
  double s1 = 1.0;
};

/// Validates X0 << X1 against the relation and S0 < S1.
ReferencePair make_reference_pair(const AccessibilityRelation& rel, State x0,
                                  State x1, double s0 = 0.0, double s1 = 1.0);

/// The least and the greatest state of `states` under the relation.
/// Throws DegenerateError when they are equivalent.
ReferencePair select_reference_pair(const AccessibilityRelation& rel,
                                    const std::vector<State>& states,
                                    double s0 = 0.0, double s1 = 1.0);

struct EntropyEntry {
  State state;
  std::optional<double> value;  // J/K; empty when not applicable
  std::string note;
};

struct EntropyTable {
  SpaceId space_id;
  std::vector<EntropyEntry> entries;
  double a = 1.0;  // calibration S = a * value + b, a > 0
  double b = 0.0;

  /// Calibrated values of the applicable entries, in order.
  std::vector<double> values() const;
  std::size_t applicable() const;
};

/// The composite ((1 - lambda) X0, lambda X1); zero-weight parts dropped.
CompositeState interpolant(const AccessibilityRelation& rel,
                           const ReferencePair& refs, double lambda);

/// lambda with X ~ ((1 - lambda) X0, lambda X1), by bisection on
/// accessibility queries only. Throws CapabilityError without scaled
/// copies, DomainError when X lies outside [X0, X1] or an interpolant is
/// incomparable with X, and NumericError past max_iterations.
double find_lambda(const AccessibilityRelation& rel, const State& x,
                   const ReferencePair& refs, double tolerance = kLambdaTolerance,
                   int max_iterations = kLambdaMaxIterations);

/// S(X) = (1 - lambda) S0 + lambda S1 for every state; states outside the
/// bracket get an empty value and a note.
EntropyTable entropy_ly(const AccessibilityRelation& rel,
                        const ReferencePair& refs,
                        const std::vector<State>& states,
                        double tolerance = kLambdaTolerance);

/// One term of a linear calibration identity. With an entry the term is
/// coefficient * (a_t * value + B_t); without one it is coefficient * B_t.
struct CalibrationTerm {
  std::size_t table = 0;
  std::optional<std::size_t> entry;
  double coefficient = 1.0;
};

/// sum(terms) = rhs.
struct CalibrationConstraint {
  std::vector<CalibrationTerm> terms;
  double rhs = 0.0;
  std::string label;
};

struct Calibration {
  std::vector<std::pair<double, double>> constants;  // (a, B) per table
  double max_residual = 0.0;
};

/// Least-squares constants making the identities hold, with the first
/// table fixed at (1, 0). Throws RankDeficiencyError naming the unknowns
/// left undetermined and DomainError when some a comes out non-positive.
Calibration calibrate_multispace(const std::vector<EntropyTable>& tables,
                                 const std::vector<CalibrationConstraint>&
                                     constraints);

/// Entropy bracket of X from equilibrium states below and above it.
struct Sandwich {
  std::optional<double> lower;
  std::optional<double> upper;
  bool complete() const { return lower.has_value() && upper.has_value(); }
};

/// sup of S over table states below X, inf over states above X.
Sandwich sandwich_bounds(const AccessibilityRelation& rel, const State& x,
                         const EntropyTable& gamma);

struct AffineFit {
  double a = 1.0;
  double b = 0.0;
  double max_residual = 0.0;
};

/// Least squares a, b minimizing |a f + b - g|. Throws DomainError for
/// fewer than 3 points or mismatched sizes, DegenerateError for constant
/// f or g.
AffineFit affine_match(const std::vector<double>& f,
                       const std::vector<double>& g);

/// Best constant shift b in f + b ~ g (a fixed to 1).
AffineFit offset_match(const std::vector<double>& f,
                       const std::vector<double>& g);

}  // namespace axtherm
