#include "axtherm/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "axtherm/errors.hpp"

namespace axtherm {

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double relative_tolerance,
                           unsigned max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  auto counted = [&](double x) {
    if (++out.evaluations > kQuadratureMaxEvaluations) {
      throw NumericError("quadrature exceeded the evaluation cap");
    }
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw NumericError("quadrature integrand is not finite");
    }
    return y;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  out.value = GK::integrate(counted, a, b, max_depth, relative_tolerance,
                            &out.error_estimate, &out.l1_norm);
  return out;
}

}  // namespace axtherm
