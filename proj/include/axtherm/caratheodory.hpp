#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "axtherm/check_result.hpp"
#include "axtherm/model_catalog.hpp"
#include "axtherm/quadrature.hpp"

namespace axtherm {

namespace check_names {
inline constexpr const char* kPfaffian = "caratheodory.pfaffian";
inline constexpr const char* kIntegratingFactor =
    "caratheodory.integrating_factor";
inline constexpr const char* kFactorization = "caratheodory.factorization";
inline constexpr const char* kInverseSquareControl =
    "caratheodory.inverse_square_control";
}  // namespace check_names

inline constexpr double kPfaffianTolerance = 1e-8;  // relative
inline constexpr double kLoopTolerance = 1e-8;
inline constexpr double kFactorizationTolerance = 1e-10;

/// Coordinates (xi0, x1, ..., xn): one non-deformation coordinate followed
/// by the deformation coordinates.
using Coords = std::vector<double>;
using ScalarField = std::function<double(const Coords&)>;
using VectorField = std::function<Coords(const Coords&)>;

struct CoordinateBox {
  Coords lo;
  Coords hi;
  bool contains(const Coords& x) const;
};

/// Simple system: U, conjugate forces, and the pair (M, x0) with
/// dU + dW = M dx0 and M = f(tau) alpha(x0).
struct SimpleSystemModel {
  std::vector<std::string> coord_names;
  ScalarField energy;
  VectorField energy_gradient;
  std::vector<ScalarField> forces;  // p_i conjugate to x_i, i = 1..n
  ScalarField m;
  ScalarField x0;
  VectorField x0_gradient;
  ScalarField tau;  // empirical temperature
  std::function<double(double)> f;
  std::function<double(double)> alpha;
  double c = 1.0;
  CoordinateBox box;

  /// T = c f(tau).
  double temperature(const Coords& x) const { return c * f(tau(x)); }
  /// Throws DomainError when the declared pieces do not fit together.
  void validate() const;
};

enum class PathShape { polyline, smooth };

/// Piecewise cubic path through way-points. A polyline uses chord
/// tangents (each segment is a straight line); a smooth path uses
/// Catmull-Rom tangents. Segments are integrated separately so corners
/// never sit inside a quadrature interval.
class QuasistaticPath {
 public:
  QuasistaticPath(std::vector<Coords> waypoints, bool closed,
                  PathShape shape = PathShape::polyline,
                  bool eased = false);

  static QuasistaticPath line(Coords from, Coords to);

  bool closed() const { return closed_; }
  std::size_t segments() const;
  const std::vector<Coords>& waypoints() const { return points_; }

  /// Same geometry traversed with a smoothstep reparameterization.
  QuasistaticPath reparameterized() const;
  QuasistaticPath reversed() const;

  Coords point(std::size_t segment, double s) const;
  Coords derivative(std::size_t segment, double s) const;

 private:
  const Coords& at(std::ptrdiff_t i) const;
  Coords tangent(std::ptrdiff_t i) const;

  std::vector<Coords> points_;
  bool closed_;
  PathShape shape_;
  bool eased_;
};

/// 1-form evaluated at a point along a direction.
using OneForm = std::function<double(const Coords& x, const Coords& dx)>;

struct PathIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
  double l1_norm = 0.0;
  std::int64_t evaluations = 0;
};

/// Integral of the form along the path; every evaluation point must lie
/// inside `box` (DomainError otherwise).
PathIntegral line_integral(const QuasistaticPath& path, const OneForm& form,
                           const CoordinateBox& box);

/// Integral of sum p_i dx_i.
double quasistatic_work(const SimpleSystemModel& m,
                        const QuasistaticPath& path);

/// Integral of (dU + dW) / T^exponent.
PathIntegral heat_form_integral(const SimpleSystemModel& m,
                                const QuasistaticPath& path,
                                int exponent = 1);

/// |int(dU + dW) - int M dx0| within 1e-8 relative on every path.
CheckResult check_pfaffian_form(const SimpleSystemModel& m,
                                const std::vector<QuasistaticPath>& paths);

/// |loop integral of (dU + dW) / T| < 1e-8 on every closed loop.
CheckResult check_integrating_factor(const SimpleSystemModel& m,
                                     const std::vector<QuasistaticPath>& loops);

/// The 1/T^2 loop integral must stay away from zero (> threshold).
CheckResult check_inverse_square_control(const SimpleSystemModel& m,
                                         const QuasistaticPath& loop,
                                         double threshold = 1e-3);

/// M = f(tau) alpha(x0) and M/T = alpha/c on random points of the box.
CheckResult check_factorization(const SimpleSystemModel& m, int samples,
                                std::uint64_t seed);

/// S(x0) = S_ref + integral of alpha/c from x0_ref, and T(coords).
class CaratheodoryEntropy {
 public:
  CaratheodoryEntropy(SimpleSystemModel model, double x0_ref, double s_ref);

  double entropy_of_x0(double x0) const;
  double entropy(const Coords& x) const { return entropy_of_x0(model_.x0(x)); }
  double temperature(const Coords& x) const { return model_.temperature(x); }

 private:
  SimpleSystemModel model_;
  double x0_ref_;
  double s_ref_;
};

CaratheodoryEntropy entropy_caratheodory(const SimpleSystemModel& m,
                                         double x0_ref, double s_ref);

/// Which function plays x0 in the ideal-gas instantiation.
enum class GasX0 { entropy, adiabatic_invariant };

/// Ideal gas in coordinates (U, V) with empirical temperature in degrees
/// Celsius, f(tau) = tau + 273.15 and c = 1. With the adiabatic invariant
/// x0 = U^c V one gets M = nRT/x0 and alpha = nR/x0; with x0 = S, M = T
/// and alpha = 1.
SimpleSystemModel ideal_gas_simple_system(const IdealGasModel& gas,
                                          GasX0 choice = GasX0::adiabatic_invariant);

/// Closed rectangle in (T, V) mapped to (U, V) corners.
QuasistaticPath gas_tv_rectangle(const IdealGasModel& gas, double t_lo,
                                 double t_hi, double v_lo, double v_hi);

/// Random smooth closed loop of 3-6 way-points inside the gas box.
QuasistaticPath random_gas_loop(const IdealGasModel& gas, Rng& rng);

}  // namespace axtherm
