#pragma once

#include <cstdint>
#include <functional>

namespace axtherm {

inline constexpr double kQuadratureRelativeTolerance = 1e-10;
inline constexpr unsigned kQuadratureMaxDepth = 15;
/// Hard cap on integrand evaluations for one integral.
inline constexpr std::int64_t kQuadratureMaxEvaluations = 1'000'000;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double l1_norm = 0.0;  // integral of |f|
  std::int64_t evaluations = 0;

  /// Error estimate within the relative target (relative to the L1 norm,
  /// so integrals that cancel to zero are judged sensibly).
  bool converged(double relative_tolerance =
                     kQuadratureRelativeTolerance) const {
    return error_estimate <= relative_tolerance * l1_norm ||
           error_estimate == 0.0;
  }
};

/// Adaptive 15/31-point Gauss-Kronrod over [a, b]. Throws NumericError on
/// a non-finite integrand value or when the evaluation cap is exceeded.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b,
                           double relative_tolerance =
                               kQuadratureRelativeTolerance,
                           unsigned max_depth = kQuadratureMaxDepth);

}  // namespace axtherm
