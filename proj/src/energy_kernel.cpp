#include "axtherm/energy_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "axtherm/errors.hpp"

namespace axtherm {

namespace {

const CompositeState& entry_of(const PolygonalLeg& leg) {
  return leg.direction == LegDirection::along ? leg.process.initial
                                              : leg.process.final;
}

const CompositeState& exit_of(const PolygonalLeg& leg) {
  return leg.direction == LegDirection::along ? leg.process.final
                                              : leg.process.initial;
}

// Consecutive legs are produced by the same engine calls, so the shared
// states agree to the coordinate tolerance.
bool same_state(const CompositeState& a, const CompositeState& b) {
  return approx_equal(a, b, kStateTolerance * 1e3);
}

}  // namespace

void validate(const WeightPolygonal& polygonal) {
  const CompositeState* cursor = &polygonal.start;
  for (std::size_t i = 0; i < polygonal.legs.size(); ++i) {
    const PolygonalLeg& leg = polygonal.legs[i];
    if (leg.process.kind != ProcessKind::weight) {
      throw StructuralError("polygonal leg " + std::to_string(i) +
                            " is not a weight process");
    }
    if (!leg.process.initial.separable() || !leg.process.final.separable()) {
      throw StructuralError("polygonal leg " + std::to_string(i) +
                            " has a non-separable end state");
    }
    if (!same_state(*cursor, entry_of(leg))) {
      throw StructuralError("polygonal chain broken at leg " +
                            std::to_string(i));
    }
    cursor = &exit_of(leg);
  }
  if (!polygonal.legs.empty() && !same_state(*cursor, polygonal.end)) {
    throw StructuralError("polygonal chain does not reach its end state");
  }
}

double polygonal_work(const WeightPolygonal& polygonal) {
  validate(polygonal);
  double total = 0.0;
  for (const PolygonalLeg& leg : polygonal.legs) {
    total += leg.direction == LegDirection::along ? leg.process.work_done
                                                  : -leg.process.work_done;
  }
  return total;
}

WeightPolygonal reversed(const WeightPolygonal& polygonal) {
  WeightPolygonal out;
  out.start = polygonal.end;
  out.end = polygonal.start;
  out.legs.assign(polygonal.legs.rbegin(), polygonal.legs.rend());
  for (PolygonalLeg& leg : out.legs) {
    leg.direction = leg.direction == LegDirection::along
                        ? LegDirection::against
                        : LegDirection::along;
  }
  return out;
}

WeightPolygonal trivial_polygonal(const CompositeState& state) {
  WeightPolygonal p;
  p.start = state;
  p.end = state;
  return p;
}

double energy_of(const State& target, const State& ref, double e0,
                 const WeightPolygonal& polygonal) {
  if (!same_state(polygonal.start, CompositeState(ref)) ||
      !same_state(polygonal.end, CompositeState(target))) {
    throw DomainError("polygonal does not connect the reference state to "
                      "the target state");
  }
  return e0 - polygonal_work(polygonal);
}

double path_spread(const std::vector<WeightPolygonal>& polygonals) {
  if (polygonals.empty()) return 0.0;
  double lo = polygonal_work(polygonals.front());
  double hi = lo;
  for (const WeightPolygonal& p : polygonals) {
    const double w = polygonal_work(p);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return hi - lo;
}

CheckResult check_path_independence(const ProcessEngine& engine,
                                    const std::vector<StatePair>& pairs,
                                    int k, std::uint64_t seed) {
  if (k < 2) throw DomainError("path independence needs k >= 2");
  CheckResult result;
  result.name = "energy.path_independence";
  Rng base(seed);
  double worst_spread = 0.0;
  double worst_tolerance = 1e-12;
  int connected = 0;
  int unconnected = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Rng rng = base.fork("pair" + std::to_string(i));
    const auto& [a, b] = pairs[i];
    std::vector<WeightPolygonal> chains;
    for (int attempt = 0; attempt < 8 * k && static_cast<int>(chains.size()) < k;
         ++attempt) {
      if (auto p = engine.random_polygonal(a, b, rng)) {
        chains.push_back(std::move(*p));
      }
    }
    result.samples_used += static_cast<std::int64_t>(chains.size());
    if (static_cast<int>(chains.size()) < k) {
      ++unconnected;
      continue;
    }
    ++connected;
    double max_work = 0.0;
    for (const WeightPolygonal& p : chains) {
      max_work = std::max(max_work, std::abs(polygonal_work(p)));
    }
    const double tolerance = std::max(1e-10 * max_work, 1e-12);
    const double spread = path_spread(chains);
    if (spread > worst_spread) {
      worst_spread = spread;
      worst_tolerance = tolerance;
    }
    if (!(spread < tolerance) && spread > 0.0) {
      result.add_failure(
          {{CompositeState(a), CompositeState(b)},
           "polygonal work spread " + std::to_string(spread) + " J"});
    }
  }
  result.tolerance_used = worst_tolerance;
  result.metrics["max_spread"] = worst_spread;
  result.metrics["connected_pairs"] = connected;
  result.metrics["unconnected_pairs"] = unconnected;
  if (connected == 0 && !pairs.empty()) {
    result.status = CheckStatus::not_applicable;
    result.message = "engine connected none of the pairs";
  } else if (unconnected > 0) {
    result.message = std::to_string(unconnected) +
                     " pair(s) not connected by the engine";
  }
  return result;
}

double check_energy_additivity(const StatePair& a_pair,
                               const StatePair& b_pair) {
  const CompositeState c1 = compose_states({a_pair.first, b_pair.first});
  const CompositeState c2 = compose_states({a_pair.second, b_pair.second});
  // Extended precision keeps the residual free of double rounding at the
  // 1e4 J scale, where one ulp already exceeds 1e-12 J.
  auto total = [](const CompositeState& c) {
    long double sum = 0.0L;
    for (const State& s : c.parts) sum += s.energy;
    return sum;
  };
  const long double d_ab = total(c2) - total(c1);
  const long double d_a =
      static_cast<long double>(a_pair.second.energy) - a_pair.first.energy;
  const long double d_b =
      static_cast<long double>(b_pair.second.energy) - b_pair.first.energy;
  return static_cast<double>(std::abs(d_ab - d_a - d_b));
}

}  // namespace axtherm
