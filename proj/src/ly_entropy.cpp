#include "axtherm/ly_entropy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "axtherm/errors.hpp"

namespace axtherm {

namespace {

bool strictly_precedes(const AccessibilityRelation& rel, const State& x,
                       const State& y) {
  return accessible(rel, x, y) == Accessibility::forward;
}

}  // namespace

ReferencePair make_reference_pair(const AccessibilityRelation& rel, State x0,
                                  State x1, double s0, double s1) {
  if (!(s0 < s1)) throw DomainError("reference entropies need S0 < S1");
  if (!strictly_precedes(rel, x0, x1)) {
    throw DomainError("reference states need X0 << X1");
  }
  return ReferencePair{std::move(x0), std::move(x1), s0, s1};
}

ReferencePair select_reference_pair(const AccessibilityRelation& rel,
                                    const std::vector<State>& states,
                                    double s0, double s1) {
  if (states.empty()) throw DomainError("no states to choose references from");
  const State* lo = &states.front();
  const State* hi = &states.front();
  for (const State& s : states) {
    if (strictly_precedes(rel, s, *lo)) lo = &s;
    if (strictly_precedes(rel, *hi, s)) hi = &s;
  }
  if (!strictly_precedes(rel, *lo, *hi)) {
    throw DegenerateError("all candidate reference states are equivalent");
  }
  return make_reference_pair(rel, *lo, *hi, s0, s1);
}

std::vector<double> EntropyTable::values() const {
  std::vector<double> out;
  for (const EntropyEntry& e : entries) {
    if (e.value) out.push_back(a * *e.value + b);
  }
  return out;
}

std::size_t EntropyTable::applicable() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(),
                    [](const EntropyEntry& e) { return e.value.has_value(); }));
}

CompositeState interpolant(const AccessibilityRelation& rel,
                           const ReferencePair& refs, double lambda) {
  std::vector<State> parts;
  if (lambda < 1.0) parts.push_back(rel.scale(refs.x0, 1.0 - lambda));
  if (lambda > 0.0) parts.push_back(rel.scale(refs.x1, lambda));
  return CompositeState(std::move(parts));
}

double find_lambda(const AccessibilityRelation& rel, const State& x,
                   const ReferencePair& refs, double tolerance,
                   int max_iterations) {
  if (!rel.supports_scaling()) {
    throw CapabilityError(
        "interpolation needs scaled copies of the reference states");
  }
  if (!(tolerance > 0.0)) throw DomainError("lambda tolerance must be > 0");
  const CompositeState cx(x);
  if (!rel.precedes(CompositeState(refs.x0), cx) ||
      !rel.precedes(cx, CompositeState(refs.x1))) {
    throw DomainError("state lies outside the reference bracket [X0, X1]");
  }
  if (rel.precedes(cx, CompositeState(refs.x0))) return 0.0;
  if (rel.precedes(CompositeState(refs.x1), cx)) return 1.0;

  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * (hi - lo) <= tolerance) return mid;
    const CompositeState c = interpolant(rel, refs, mid);
    const bool below = rel.precedes(c, cx);
    const bool above = rel.precedes(cx, c);
    if (below && above) return mid;
    if (!below && !above) {
      throw DomainError("interpolant incomparable with the state");
    }
    (below ? lo : hi) = mid;
  }
  throw NumericError("lambda bisection did not converge in " +
                     std::to_string(max_iterations) + " iterations");
}

EntropyTable entropy_ly(const AccessibilityRelation& rel,
                        const ReferencePair& refs,
                        const std::vector<State>& states, double tolerance) {
  EntropyTable table;
  table.space_id = refs.x0.space_id;
  table.entries.reserve(states.size());
  for (const State& s : states) {
    EntropyEntry e;
    e.state = s;
    try {
      const double lambda = find_lambda(rel, s, refs, tolerance);
      e.value = (1.0 - lambda) * refs.s0 + lambda * refs.s1;
    } catch (const DomainError& err) {
      e.note = err.what();
    }
    table.entries.push_back(std::move(e));
  }
  return table;
}

Calibration calibrate_multispace(
    const std::vector<EntropyTable>& tables,
    const std::vector<CalibrationConstraint>& constraints) {
  if (tables.empty()) throw DomainError("no tables to calibrate");
  const std::size_t n_tables = tables.size();
  // Unknowns (a_k, B_k) for k >= 1; table 0 is the gauge (1, 0).
  const Eigen::Index n_unknowns = static_cast<Eigen::Index>(2 * (n_tables - 1));
  const Eigen::Index n_rows = static_cast<Eigen::Index>(constraints.size());

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_rows, n_unknowns);
  Eigen::VectorXd rhs(n_rows);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const CalibrationConstraint& c = constraints[static_cast<std::size_t>(r)];
    double fixed = c.rhs;
    for (const CalibrationTerm& t : c.terms) {
      if (t.table >= n_tables) throw DomainError("calibration: bad table index");
      double value = 0.0;
      const bool has_entry = t.entry.has_value();
      if (has_entry) {
        const auto& entries = tables[t.table].entries;
        if (*t.entry >= entries.size() || !entries[*t.entry].value) {
          throw DomainError("calibration: entry " + std::to_string(*t.entry) +
                            " of table " + std::to_string(t.table) +
                            " has no value");
        }
        value = *entries[*t.entry].value;
      }
      if (t.table == 0) {
        fixed -= t.coefficient * value;  // a_0 = 1, B_0 = 0
        continue;
      }
      const Eigen::Index k = static_cast<Eigen::Index>(2 * (t.table - 1));
      if (has_entry) m(r, k) += t.coefficient * value;
      m(r, k + 1) += t.coefficient;
    }
    rhs(r) = fixed;
  }

  Calibration out;
  out.constants.assign(n_tables, {1.0, 0.0});
  if (n_unknowns == 0) {
    for (Eigen::Index r = 0; r < n_rows; ++r) {
      out.max_residual = std::max(out.max_residual, std::abs(rhs(r)));
    }
    return out;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (n_rows == 0 || lu.rank() < n_unknowns) {
    std::string missing;
    const Eigen::MatrixXd kernel =
        n_rows == 0 ? Eigen::MatrixXd::Identity(n_unknowns, n_unknowns)
                    : Eigen::MatrixXd(lu.kernel());
    for (Eigen::Index i = 0; i < n_unknowns; ++i) {
      if (kernel.row(i).cwiseAbs().maxCoeff() > 1e-12) {
        const std::size_t table = static_cast<std::size_t>(i / 2) + 1;
        if (!missing.empty()) missing += ", ";
        missing += (i % 2 == 0 ? "a[" : "B[") + std::to_string(table) + "]";
      }
    }
    throw RankDeficiencyError("calibration underdetermined: no constraint "
                              "fixes " + missing);
  }
  const Eigen::VectorXd x = m.colPivHouseholderQr().solve(rhs);
  for (std::size_t k = 1; k < n_tables; ++k) {
    const Eigen::Index i = static_cast<Eigen::Index>(2 * (k - 1));
    out.constants[k] = {x(i), x(i + 1)};
    if (!(x(i) > 0.0)) {
      throw DomainError("calibration gives non-positive a for table " +
                        std::to_string(k));
    }
  }
  out.max_residual = (m * x - rhs).cwiseAbs().maxCoeff();
  return out;
}

Sandwich sandwich_bounds(const AccessibilityRelation& rel, const State& x,
                         const EntropyTable& gamma) {
  Sandwich s;
  const CompositeState cx(x);
  for (const EntropyEntry& e : gamma.entries) {
    if (!e.value) continue;
    const double v = gamma.a * *e.value + gamma.b;
    const CompositeState g(e.state);
    if (rel.precedes(g, cx)) s.lower = s.lower ? std::max(*s.lower, v) : v;
    if (rel.precedes(cx, g)) s.upper = s.upper ? std::min(*s.upper, v) : v;
  }
  return s;
}

AffineFit affine_match(const std::vector<double>& f,
                       const std::vector<double>& g) {
  if (f.size() != g.size()) throw DomainError("affine_match: size mismatch");
  if (f.size() < 3) throw DomainError("affine_match needs at least 3 points");
  const double n = static_cast<double>(f.size());
  double mf = 0.0;
  double mg = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    mf += f[i];
    mg += g[i];
  }
  mf /= n;
  mg /= n;
  double sff = 0.0;
  double sfg = 0.0;
  double sgg = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sff += (f[i] - mf) * (f[i] - mf);
    sfg += (f[i] - mf) * (g[i] - mg);
    sgg += (g[i] - mg) * (g[i] - mg);
  }
  if (!(sgg > 0.0)) throw DegenerateError("affine_match: constant target");
  if (!(sff > 0.0)) throw DegenerateError("affine_match: constant table");
  AffineFit fit;
  fit.a = sfg / sff;
  fit.b = mg - fit.a * mf;
  for (std::size_t i = 0; i < f.size(); ++i) {
    fit.max_residual =
        std::max(fit.max_residual, std::abs(fit.a * f[i] + fit.b - g[i]));
  }
  return fit;
}

AffineFit offset_match(const std::vector<double>& f,
                       const std::vector<double>& g) {
  if (f.size() != g.size()) throw DomainError("offset_match: size mismatch");
  if (f.empty()) throw DomainError("offset_match: no points");
  AffineFit fit;
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += g[i] - f[i];
  fit.b = sum / static_cast<double>(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(f[i] + fit.b - g[i]));
  }
  return fit;
}

}  // namespace axtherm
