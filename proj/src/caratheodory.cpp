#include "axtherm/caratheodory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "axtherm/errors.hpp"

namespace axtherm {

using namespace check_names;

namespace {

constexpr double kCelsiusOffset = 273.15;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double dot(const Coords& a, const Coords& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// dU + sum p_i dx_i at x along dx.
double heat_form(const SimpleSystemModel& m, const Coords& x, const Coords& dx) {
  double w = dot(m.energy_gradient(x), dx);
  for (std::size_t i = 0; i < m.forces.size(); ++i) {
    w += m.forces[i](x) * dx[i + 1];
  }
  return w;
}

}  // namespace

bool CoordinateBox::contains(const Coords& x) const {
  if (x.size() != lo.size() || x.size() != hi.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
  }
  return true;
}

void SimpleSystemModel::validate() const {
  const std::size_t dim = coord_names.size();
  if (dim < 2) throw DomainError("simple system needs n >= 1");
  if (forces.size() != dim - 1) {
    throw DomainError("simple system needs one force per deformation "
                      "coordinate");
  }
  if (!energy || !energy_gradient || !m || !x0 || !x0_gradient || !tau || !f ||
      !alpha) {
    throw DomainError("simple system has undeclared functions");
  }
  if (!(c > 0.0)) throw DomainError("simple system needs c > 0");
  if (box.lo.size() != dim || box.hi.size() != dim) {
    throw DomainError("coordinate box dimension mismatch");
  }
}

QuasistaticPath::QuasistaticPath(std::vector<Coords> waypoints, bool closed,
                                 PathShape shape, bool eased)
    : points_(std::move(waypoints)),
      closed_(closed),
      shape_(shape),
      eased_(eased) {
  if (closed_ && points_.size() > 1 && points_.front() == points_.back()) {
    points_.pop_back();
  }
  if (points_.size() < 2) throw DomainError("path needs two way-points");
  for (const Coords& p : points_) {
    if (p.size() != points_.front().size()) {
      throw DomainError("way-points of different dimension");
    }
  }
}

QuasistaticPath QuasistaticPath::line(Coords from, Coords to) {
  return QuasistaticPath({std::move(from), std::move(to)}, false);
}

std::size_t QuasistaticPath::segments() const {
  return closed_ ? points_.size() : points_.size() - 1;
}

QuasistaticPath QuasistaticPath::reparameterized() const {
  return QuasistaticPath(points_, closed_, shape_, !eased_);
}

QuasistaticPath QuasistaticPath::reversed() const {
  std::vector<Coords> pts(points_.rbegin(), points_.rend());
  return QuasistaticPath(std::move(pts), closed_, shape_, eased_);
}

const Coords& QuasistaticPath::at(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(points_.size());
  if (closed_) return points_[static_cast<std::size_t>(((i % n) + n) % n)];
  return points_[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, n - 1))];
}

Coords QuasistaticPath::tangent(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(points_.size());
  const Coords& prev = at(i - 1);
  const Coords& next = at(i + 1);
  const bool one_sided = !closed_ && (i == 0 || i == n - 1);
  Coords t(points_.front().size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = one_sided ? (next[k] - prev[k]) : 0.5 * (next[k] - prev[k]);
  }
  return t;
}

Coords QuasistaticPath::point(std::size_t segment, double s) const {
  const auto i = static_cast<std::ptrdiff_t>(segment);
  const Coords& p0 = at(i);
  const Coords& p1 = at(i + 1);
  if (eased_) s = s * s * (3.0 - 2.0 * s);
  Coords out(p0.size());
  if (shape_ == PathShape::polyline) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = p0[k] + s * (p1[k] - p0[k]);
    }
    return out;
  }
  const Coords m0 = tangent(i);
  const Coords m1 = tangent(i + 1);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = h00 * p0[k] + h10 * m0[k] + h01 * p1[k] + h11 * m1[k];
  }
  return out;
}

Coords QuasistaticPath::derivative(std::size_t segment, double s) const {
  const auto i = static_cast<std::ptrdiff_t>(segment);
  const Coords& p0 = at(i);
  const Coords& p1 = at(i + 1);
  double chain = 1.0;
  if (eased_) {
    chain = 6.0 * s * (1.0 - s);
    s = s * s * (3.0 - 2.0 * s);
  }
  Coords out(p0.size());
  if (shape_ == PathShape::polyline) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = chain * (p1[k] - p0[k]);
    }
    return out;
  }
  const Coords m0 = tangent(i);
  const Coords m1 = tangent(i + 1);
  const double s2 = s * s;
  const double d00 = 6 * s2 - 6 * s;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = -6 * s2 + 6 * s;
  const double d11 = 3 * s2 - 2 * s;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = chain * (d00 * p0[k] + d10 * m0[k] + d01 * p1[k] + d11 * m1[k]);
  }
  return out;
}

PathIntegral line_integral(const QuasistaticPath& path, const OneForm& form,
                           const CoordinateBox& box) {
  PathIntegral total;
  for (std::size_t seg = 0; seg < path.segments(); ++seg) {
    const QuadratureResult q = integrate(
        [&](double s) {
          const Coords x = path.point(seg, s);
          if (!box.contains(x)) {
            throw DomainError("path leaves the coordinate box");
          }
          return form(x, path.derivative(seg, s));
        },
        0.0, 1.0);
    total.value += q.value;
    total.error_estimate += q.error_estimate;
    total.l1_norm += q.l1_norm;
    total.evaluations += q.evaluations;
  }
  return total;
}

double quasistatic_work(const SimpleSystemModel& m,
                        const QuasistaticPath& path) {
  m.validate();
  return line_integral(
             path,
             [&](const Coords& x, const Coords& dx) {
               double w = 0.0;
               for (std::size_t i = 0; i < m.forces.size(); ++i) {
                 w += m.forces[i](x) * dx[i + 1];
               }
               return w;
             },
             m.box)
      .value;
}

PathIntegral heat_form_integral(const SimpleSystemModel& m,
                                const QuasistaticPath& path, int exponent) {
  m.validate();
  return line_integral(
      path,
      [&](const Coords& x, const Coords& dx) {
        return heat_form(m, x, dx) / std::pow(m.temperature(x), exponent);
      },
      m.box);
}

CheckResult check_pfaffian_form(const SimpleSystemModel& m,
                                const std::vector<QuasistaticPath>& paths) {
  m.validate();
  CheckResult result;
  result.name = kPfaffian;
  result.tolerance_used = kPfaffianTolerance;
  double worst = 0.0;
  for (const QuasistaticPath& path : paths) {
    const double lhs = heat_form_integral(m, path, 0).value;
    const double rhs =
        line_integral(
            path,
            [&](const Coords& x, const Coords& dx) {
              return m.m(x) * dot(m.x0_gradient(x), dx);
            },
            m.box)
            .value;
    ++result.samples_used;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-12});
    const double rel = std::abs(lhs - rhs) / scale;
    worst = std::max(worst, rel);
    if (!(rel < kPfaffianTolerance)) {
      Witness w;
      w.note = "int(dU + dW) = " + fmt(lhs) + " J, int M dx0 = " + fmt(rhs) +
               " J along path from (" + fmt(path.waypoints().front()[0]) +
               ", " + fmt(path.waypoints().front()[1]) + ")";
      result.add_failure(std::move(w));
    }
  }
  result.metrics["max_relative_residual"] = worst;
  return result;
}

CheckResult check_integrating_factor(
    const SimpleSystemModel& m, const std::vector<QuasistaticPath>& loops) {
  CheckResult result;
  result.name = kIntegratingFactor;
  result.tolerance_used = kLoopTolerance;
  double worst = 0.0;
  for (const QuasistaticPath& loop : loops) {
    if (!loop.closed()) throw DomainError("integrating-factor check needs loops");
    const PathIntegral v = heat_form_integral(m, loop, 1);
    ++result.samples_used;
    worst = std::max(worst, std::abs(v.value));
    if (!(std::abs(v.value) < kLoopTolerance)) {
      Witness w;
      w.note = "loop integral of (dU + dW)/T = " + fmt(v.value) + " J/K";
      result.add_failure(std::move(w));
    }
  }
  result.metrics["max_abs_loop_integral"] = worst;
  return result;
}

CheckResult check_inverse_square_control(const SimpleSystemModel& m,
                                         const QuasistaticPath& loop,
                                         double threshold) {
  CheckResult result;
  result.name = kInverseSquareControl;
  result.tolerance_used = threshold;
  const double v = heat_form_integral(m, loop, 2).value;
  result.samples_used = 1;
  result.metrics["loop_integral"] = v;
  if (!(std::abs(v) > threshold)) {
    Witness w;
    w.note = "1/T^2 loop integral " + fmt(v) + " does not stand out from 0";
    result.add_failure(std::move(w));
  }
  return result;
}

CheckResult check_factorization(const SimpleSystemModel& m, int samples,
                                std::uint64_t seed) {
  m.validate();
  CheckResult result;
  result.name = kFactorization;
  result.tolerance_used = kFactorizationTolerance;
  Rng rng = Rng(seed).fork(kFactorization);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    Coords x(m.box.lo.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] = rng.uniform(m.box.lo[k], m.box.hi[k]);
    }
    const double mv = m.m(x);
    const double a = m.alpha(m.x0(x));
    const double factored = m.f(m.tau(x)) * a;
    const double r1 = std::abs(mv - factored) / std::max(std::abs(mv), 1e-300);
    const double ratio = mv / m.temperature(x);
    const double r2 =
        std::abs(ratio - a / m.c) / std::max(std::abs(ratio), 1e-300);
    ++result.samples_used;
    worst = std::max({worst, r1, r2});
    if (!(r1 < kFactorizationTolerance) || !(r2 < kFactorizationTolerance)) {
      Witness w;
      w.note = "M = " + fmt(mv) + " vs f(tau) alpha(x0) = " + fmt(factored) +
               " at (" + fmt(x[0]) + ", " + fmt(x[1]) + ")";
      result.add_failure(std::move(w));
    }
  }
  result.metrics["max_relative_residual"] = worst;
  return result;
}

CaratheodoryEntropy::CaratheodoryEntropy(SimpleSystemModel model,
                                         double x0_ref, double s_ref)
    : model_(std::move(model)), x0_ref_(x0_ref), s_ref_(s_ref) {
  model_.validate();
}

double CaratheodoryEntropy::entropy_of_x0(double x0) const {
  const QuadratureResult q = integrate(
      [&](double t) { return model_.alpha(t) / model_.c; }, x0_ref_, x0);
  if (!q.converged()) throw NumericError("entropy quadrature did not converge");
  return s_ref_ + q.value;
}

CaratheodoryEntropy entropy_caratheodory(const SimpleSystemModel& m,
                                         double x0_ref, double s_ref) {
  return CaratheodoryEntropy(m, x0_ref, s_ref);
}

SimpleSystemModel ideal_gas_simple_system(const IdealGasModel& gas,
                                          GasX0 choice) {
  const double c_hat = gas.params().c_v_hat;
  const double n = gas.params().n;
  const double nr = n * kGasConstant;
  SimpleSystemModel m;
  m.coord_names = {"U", "V"};
  m.energy = [](const Coords& x) { return x[0]; };
  m.energy_gradient = [](const Coords&) { return Coords{1.0, 0.0}; };
  m.forces = {[c_hat](const Coords& x) { return x[0] / (c_hat * x[1]); }};
  m.tau = [c_hat, nr](const Coords& x) {
    return x[0] / (c_hat * nr) - kCelsiusOffset;
  };
  m.f = [](double tau) { return tau + kCelsiusOffset; };
  m.c = 1.0;
  m.box = CoordinateBox{{1.0, 1e-4}, {1e5, 10.0}};
  if (choice == GasX0::entropy) {
    m.x0 = [gas_copy = IdealGasModel(gas.params()), n](const Coords& x) {
      return gas_copy.equilibrium_entropy(x[0], x[1], n);
    };
    m.x0_gradient = [c_hat, nr](const Coords& x) {
      return Coords{c_hat * nr / x[0], nr / x[1]};
    };
    m.m = [c_hat, nr](const Coords& x) { return x[0] / (c_hat * nr); };
    m.alpha = [](double) { return 1.0; };
  } else {
    m.x0 = [c_hat](const Coords& x) { return std::pow(x[0], c_hat) * x[1]; };
    m.x0_gradient = [c_hat](const Coords& x) {
      return Coords{c_hat * std::pow(x[0], c_hat - 1.0) * x[1],
                    std::pow(x[0], c_hat)};
    };
    m.m = [c_hat](const Coords& x) {
      return x[0] / (c_hat * std::pow(x[0], c_hat) * x[1]);
    };
    m.alpha = [nr](double x0) { return nr / x0; };
  }
  return m;
}

QuasistaticPath gas_tv_rectangle(const IdealGasModel& gas, double t_lo,
                                 double t_hi, double v_lo, double v_hi) {
  const double k = gas.params().c_v_hat * gas.params().n * kGasConstant;
  return QuasistaticPath({{k * t_lo, v_lo},
                          {k * t_hi, v_lo},
                          {k * t_hi, v_hi},
                          {k * t_lo, v_hi}},
                         true);
}

QuasistaticPath random_gas_loop(const IdealGasModel& gas, Rng& rng) {
  const IdealGasBox& b = gas.params().box;
  const std::size_t count = 3 + rng.index(4);
  std::vector<Coords> pts;
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.uniform(b.u_min + 0.2 * (b.u_max - b.u_min),
                                     b.u_max - 0.2 * (b.u_max - b.u_min));
    const double v = rng.uniform(b.v_min + 0.2 * (b.v_max - b.v_min),
                                     b.v_max - 0.2 * (b.v_max - b.v_min));
    pts.push_back({u, v});
  }
  return QuasistaticPath(std::move(pts), true, PathShape::smooth);
}

}  // namespace axtherm
