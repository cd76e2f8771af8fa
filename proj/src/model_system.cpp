#include "axtherm/model_system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "axtherm/errors.hpp"
#include "axtherm/process.hpp"

namespace axtherm {

State ModelSystem::scale_state(const State& /*state*/, double /*t*/) const {
  throw CapabilityError("model '" + id() + "' does not admit scaled copies");
}

State ModelSystem::sample_same_region(const State& like, Rng& rng) const {
  State s = sample_like(like, rng);
  if (!(s.region == like.region)) {
    throw CapabilityError("model '" + id() +
                          "' cannot sample states at fixed regions");
  }
  return s;
}

std::optional<State> ModelSystem::sample_nonequilibrium(Rng& /*rng*/) const {
  return std::nullopt;
}

State ModelSystem::raise_energy(const State& /*state*/,
                                double /*delta*/) const {
  throw CapabilityError("model '" + id() +
                        "' is not a normal system; its energy cannot be "
                        "raised at fixed regions without bound");
}

double ModelSystem::combine_entropies(std::span<const State> /*parts*/,
                                      std::span<const double> entropies) const {
  return std::accumulate(entropies.begin(), entropies.end(), 0.0);
}

bool ModelSystem::entropy_order(double from, double to,
                                double tolerance) const {
  return from <= to + tolerance;
}

bool ModelSystem::admits_process(double delta_s, double zero_tolerance) const {
  return delta_s >= -zero_tolerance;
}

double ModelSystem::work_perturbation(Rng& /*rng*/) const { return 0.0; }

double ModelSystem::reservoir_temperature(const Reservoir& reservoir) const {
  return reservoir.temperature;
}

ModelSet::ModelSet(std::vector<ModelPtr> models) : models_(std::move(models)) {
  if (models_.empty()) throw DomainError("ModelSet: no models");
  for (const ModelPtr& m : models_) {
    if (!m) throw DomainError("ModelSet: null model");
  }
}

const ModelSystem& ModelSet::owner(const State& state) const {
  for (const ModelPtr& m : models_) {
    if (m->owns(state)) return *m;
  }
  throw DomainError("no model owns state space '" +
                    to_string(state.space_id) + "'");
}

bool ModelSet::homogeneous(const CompositeState& state) const {
  if (state.parts.empty()) return true;
  const std::string& root = state.parts.front().space_id.root;
  return std::all_of(state.parts.begin(), state.parts.end(),
                     [&](const State& s) { return s.space_id.root == root; });
}

const ModelSystem& ModelSet::governing(const CompositeState& state) const {
  if (!state.parts.empty() && homogeneous(state)) {
    return owner(state.parts.front());
  }
  return primary();
}

double ModelSet::entropy(const CompositeState& state) const {
  std::vector<double> values;
  values.reserve(state.parts.size());
  for (const State& s : state.parts) {
    values.push_back(owner(s).oracle_entropy(s));
  }
  if (!state.parts.empty() && homogeneous(state)) {
    return owner(state.parts.front()).combine_entropies(state.parts, values);
  }
  return std::accumulate(values.begin(), values.end(), 0.0);
}

Composition ModelSet::composition(const CompositeState& state) const {
  Composition total;
  for (const State& s : state.parts) {
    for (const auto& [tag, amount] : owner(s).composition(s)) {
      total[tag] += amount;
    }
  }
  return total;
}

double ModelSet::entropy_unit(const CompositeState& state) const {
  double unit = 0.0;
  for (const State& s : state.parts) {
    unit = std::max(unit, owner(s).entropy_unit());
  }
  return unit > 0.0 ? unit : primary().entropy_unit();
}

InducedRelation::InducedRelation(std::vector<ModelPtr> models,
                                 double relative_tolerance)
    : models_(std::move(models)), relative_tolerance_(relative_tolerance) {
  if (!(relative_tolerance_ >= 0.0)) {
    throw DomainError("relation tolerance must be non-negative");
  }
}

InducedRelation::InducedRelation(ModelPtr model, double relative_tolerance)
    : InducedRelation(std::vector<ModelPtr>{std::move(model)},
                      relative_tolerance) {}

double InducedRelation::comparison_tolerance(double sx, double sy,
                                             const CompositeState& x) const {
  const double unit = models_.entropy_unit(x);
  return relative_tolerance_ * std::max({unit, std::abs(sx), std::abs(sy)});
}

bool InducedRelation::precedes(const CompositeState& x,
                               const CompositeState& y) const {
  if (!same_composition(models_.composition(x), models_.composition(y))) {
    return false;
  }
  const double sx = models_.entropy(x);
  const double sy = models_.entropy(y);
  return models_.governing(x).entropy_order(sx, sy,
                                            comparison_tolerance(sx, sy, x));
}

State InducedRelation::sample(Rng& rng) const {
  return models_.primary().sample_state(rng);
}

State InducedRelation::sample_partner(const State& state, Rng& rng) const {
  return models_.owner(state).equal_entropy_partner(state, rng);
}

std::optional<State> InducedRelation::sample_nonequilibrium(Rng& rng) const {
  return models_.primary().sample_nonequilibrium(rng);
}

bool InducedRelation::supports_scaling() const {
  return models_.primary().supports_scaling();
}

State InducedRelation::scale(const State& state, double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("scale factor must be positive and finite");
  }
  return models_.owner(state).scale_state(state, t);
}

std::string InducedRelation::describe() const {
  std::string out = "induced(";
  for (std::size_t i = 0; i < models_.models().size(); ++i) {
    if (i) out += ",";
    out += models_.models()[i]->id();
  }
  return out + ")";
}

}  // namespace axtherm
