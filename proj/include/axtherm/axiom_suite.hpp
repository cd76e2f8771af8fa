#pragma once

#include <string>
#include <vector>

#include "axtherm/check_result.hpp"
#include "axtherm/model_catalog.hpp"

namespace axtherm {

namespace check_names {
inline constexpr const char* kReflexivity = "axioms.reflexivity";
inline constexpr const char* kTransitivity = "axioms.transitivity";
inline constexpr const char* kConsistency = "axioms.consistency";
inline constexpr const char* kScaling = "axioms.scaling_invariance";
inline constexpr const char* kSplitting = "axioms.splitting";
inline constexpr const char* kStability = "axioms.stability";
inline constexpr const char* kComparison = "axioms.comparison";
inline constexpr const char* kN1N2 = "axioms.n1_n2";
inline constexpr const char* kTotalPreorder = "axioms.total_preorder";
}  // namespace check_names

/// Largest universe scanned exhaustively by the O(N^3) transitivity check.
inline constexpr std::size_t kTransitivityCap = 200;

/// 1/2^k for k = 1..20.
std::vector<double> default_eps_sequence();

CheckResult check_reflexivity(const AccessibilityRelation& rel,
                              const SamplingOptions& options = {});

/// Exhaustive for finite relations up to `cap` states, sampled triples
/// otherwise.
CheckResult check_transitivity(const AccessibilityRelation& rel,
                               const SamplingOptions& options = {},
                               std::size_t cap = kTransitivityCap);

/// X < Y and X' < Y' imply (X, X') < (Y, Y'). States are drawn from
/// rel_a and rel_b; the composite question goes to rel_composite.
CheckResult check_consistency(const AccessibilityRelation& rel_a,
                              const AccessibilityRelation& rel_b,
                              const AccessibilityRelation& rel_composite,
                              const SamplingOptions& options = {});

CheckResult check_scaling_invariance(const AccessibilityRelation& rel,
                                     const std::vector<double>& t_samples,
                                     const SamplingOptions& options = {});

/// X ~ (tX, (1-t)X) for t in (0, 1).
CheckResult check_splitting(const AccessibilityRelation& rel, double t,
                            const SamplingOptions& options = {});

/// If (X, eps Z0) < (Y, eps Z1) for every eps of the sequence then X < Y.
/// The finite sequence is a necessary approximation of the limit axiom;
/// its last element is reported as tolerance_used.
CheckResult check_stability(const AccessibilityRelation& rel,
                            const std::vector<double>& eps_sequence,
                            const SamplingOptions& options = {});

CheckResult check_comparison(const AccessibilityRelation& rel,
                             const SamplingOptions& options = {});

/// N1: reflexivity, transitivity, consistency and stability on the extended
/// space (the last two only when the relation composes and scales). N2: every nonequilibrium state lies
/// between two stable equilibrium states. Not applicable when the
/// equilibrium subset is empty.
CheckResult check_n1_n2(const AccessibilityRelation& rel,
                        const SamplingOptions& options = {});

/// Reflexivity, transitivity and comparability together.
CheckResult check_total_preorder(const CheckResult& reflexivity,
                                 const CheckResult& transitivity,
                                 const CheckResult& comparison);

/// Every applicable check above on one relation, in a fixed order.
std::vector<CheckResult> run_axiom_suite(const AccessibilityRelation& rel,
                                         const SamplingOptions& options = {});

// ---------------------------------------------------------------------------
// Mutation testing
// ---------------------------------------------------------------------------

enum class Mutation {
  break_transitivity,
  break_scaling,
  break_splitting,
  composite_max,
  noisy_work,
  wrong_reservoir_temperature,
  strict_only_comparison,
};

std::string to_string(Mutation mutation);
Mutation mutation_from_string(const std::string& name);
std::vector<Mutation> all_mutations();

/// Names of the checks a mutant must fail; every other check of the
/// mutation battery must keep its unmutated status.
std::vector<std::string> targeted_checks(Mutation mutation);

/// A model identical to `model` except for one behaviour. Throws
/// CapabilityError for pairs that make no sense (transitivity on an
/// induced relation, scaling defects on unscalable models).
ModelPtr mutate_model(const ModelPtr& model, Mutation mutation);

/// Fixture mutation; only break_transitivity applies. It removes a pair
/// (x, z) of an equivalence class of at least three states, so the
/// relation stays total. Throws CapabilityError otherwise.
FinitePreorderFixture mutate_fixture(const FinitePreorderFixture& fixture,
                                     Mutation mutation);

}  // namespace axtherm
