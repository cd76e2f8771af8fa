#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "axtherm/check_result.hpp"
#include "axtherm/process.hpp"

namespace axtherm {

/// Throws StructuralError unless consecutive legs share their intermediate
/// states and every end state is separable.
void validate(const WeightPolygonal& polygonal);

/// Signed work sum: along legs count +W, against legs -W.
double polygonal_work(const WeightPolygonal& polygonal);

/// The same chain traversed from end to start.
WeightPolygonal reversed(const WeightPolygonal& polygonal);

/// Zero-leg polygonal at a state.
WeightPolygonal trivial_polygonal(const CompositeState& state);

/// E(target) = e0 - polygonal_work(p) for a polygonal from ref to target.
/// Throws DomainError when the polygonal does not connect ref to target.
double energy_of(const State& target, const State& ref, double e0,
                 const WeightPolygonal& polygonal);

using StatePair = std::pair<State, State>;

/// Largest minus smallest polygonal work among the given chains.
double path_spread(const std::vector<WeightPolygonal>& polygonals);

/// Generates k random polygonals per pair and compares their work.
/// Pairs the engine cannot connect are recorded, not failed.
CheckResult check_path_independence(const ProcessEngine& engine,
                                    const std::vector<StatePair>& pairs,
                                    int k, std::uint64_t seed);

/// |dE(AB) - dE(A) - dE(B)| with the composite formed by compose_states.
double check_energy_additivity(const StatePair& a_pair,
                               const StatePair& b_pair);

inline constexpr double kEnergyAdditivityTolerance = 1e-12;  // J

}  // namespace axtherm
