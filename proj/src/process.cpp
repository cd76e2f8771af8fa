#include "axtherm/process.hpp"

#include <cmath>
#include <cstdio>

#include "axtherm/errors.hpp"

namespace axtherm {

namespace {

constexpr double kZeroEntropyFactor = 1e-12;

std::string describe_window(const Reservoir& r, double target) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "reservoir '%s' energy %.17g J leaves window [%.17g, %.17g] J",
                r.id.c_str(), target, r.energy_window->first,
                r.energy_window->second);
  return buf;
}

void check_window(const Reservoir& r, double target) {
  if (!r.energy_window) return;
  if (target < r.energy_window->first || target > r.energy_window->second) {
    throw EngineError(describe_window(r, target));
  }
}

}  // namespace

Reservoir make_reservoir(std::string id, double temperature, double energy) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("reservoir temperature must be positive and finite");
  }
  if (!std::isfinite(energy)) {
    throw DomainError("reservoir energy must be finite");
  }
  Reservoir r;
  r.region = RegionDescriptor("reservoir:" + id);
  r.id = std::move(id);
  r.temperature = temperature;
  r.energy = energy;
  return r;
}

ReferenceReservoir::ReferenceReservoir(double energy)
    : reservoir_(make_reservoir("R0", kTriplePointTemperature, energy)) {}

ProcessEngine::ProcessEngine(std::vector<ModelPtr> models)
    : models_(std::move(models)) {}

ProcessEngine::ProcessEngine(ModelPtr model)
    : ProcessEngine(std::vector<ModelPtr>{std::move(model)}) {}

bool ProcessEngine::is_normal(const CompositeState& state) const {
  for (const State& s : state.parts) {
    if (!models_.owner(s).is_normal()) return false;
  }
  return true;
}

bool ProcessEngine::supports_scaling(const CompositeState& state) const {
  for (const State& s : state.parts) {
    if (!models_.owner(s).supports_scaling()) return false;
  }
  return true;
}

const std::string& ProcessEngine::system_of(const State& state) const {
  return models_.owner(state).id();
}

std::optional<EnergyBounds> ProcessEngine::energy_bounds(
    const State& state) const {
  return models_.owner(state).energy_bounds();
}

double ProcessEngine::zero_tolerance(const CompositeState& state) const {
  return kZeroEntropyFactor * models_.entropy_unit(state);
}

std::optional<ProcessRecord> ProcessEngine::weight_process(
    const CompositeState& from, const CompositeState& to) const {
  if (!same_composition(models_.composition(from),
                        models_.composition(to))) {
    return std::nullopt;
  }
  const double delta_s = models_.entropy(to) - models_.entropy(from);
  const double zero = zero_tolerance(from);
  if (!models_.governing(from).admits_process(delta_s, zero)) {
    return std::nullopt;
  }
  ProcessRecord record;
  record.kind = ProcessKind::weight;
  record.initial = from;
  record.final = to;
  record.work_done = from.energy() - to.energy();
  record.reversible = std::abs(delta_s) <= zero;
  record.sigma = record.reversible ? 0.0 : std::abs(delta_s);
  return record;
}

StandardWeightProcessRecord ProcessEngine::reversible_swp(
    const CompositeState& a1, const CompositeState& a2,
    const Reservoir& reservoir) const {
  if (!a1.separable_and_uncorrelated() || !a2.separable_and_uncorrelated()) {
    throw PreconditionError(
        "standard weight process requires separable, uncorrelated end "
        "states");
  }
  if (!same_composition(models_.composition(a1), models_.composition(a2))) {
    throw DomainError(
        "standard weight process between states of different composition");
  }
  const double delta_s = models_.entropy(a2) - models_.entropy(a1);
  const double t_eff = models_.governing(a1).reservoir_temperature(reservoir);
  const double delta = -t_eff * delta_s;
  const double target = reservoir.energy + delta;
  check_window(reservoir, target);

  StandardWeightProcessRecord rec;
  rec.initial = a1;
  rec.final = a2;
  rec.reservoir_id = reservoir.id;
  rec.reservoir_temperature = reservoir.temperature;
  rec.reservoir_initial = reservoir;
  rec.reservoir_final = reservoir.with_energy(target);
  rec.delta_E_R = delta;
  rec.work_done = -((a2.energy() - a1.energy()) + delta);
  rec.reversible = true;
  rec.sigma = 0.0;
  return rec;
}

StandardWeightProcessRecord ProcessEngine::irreversible_swp(
    const CompositeState& a1, const CompositeState& a2,
    const Reservoir& reservoir, double sigma) const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("irreversible process needs sigma > 0");
  }
  // Validate the reversible branch first (preconditions, window).
  StandardWeightProcessRecord rec = reversible_swp(a1, a2, reservoir);
  const double t_eff = models_.governing(a1).reservoir_temperature(reservoir);
  rec.delta_E_R += t_eff * sigma;
  const double target = reservoir.energy + rec.delta_E_R;
  check_window(reservoir, target);
  rec.reservoir_final = reservoir.with_energy(target);
  rec.work_done = -((a2.energy() - a1.energy()) + rec.delta_E_R);
  rec.reversible = false;
  rec.sigma = sigma;
  return rec;
}

std::optional<WeightPolygonal> ProcessEngine::random_polygonal(
    const State& from, const State& to, Rng& rng) const {
  const ModelSystem& model = models_.owner(from);
  const std::size_t legs = 1 + rng.index(4);
  std::vector<State> chain;
  chain.reserve(legs + 1);
  chain.push_back(from);
  for (std::size_t i = 1; i < legs; ++i) {
    chain.push_back(model.sample_like(from, rng));
  }
  chain.push_back(to);

  WeightPolygonal polygonal;
  polygonal.start = from;
  polygonal.end = to;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    PolygonalLeg leg;
    if (auto forward = weight_process(chain[i], chain[i + 1])) {
      leg.process = std::move(*forward);
      leg.direction = LegDirection::along;
    } else if (auto backward = weight_process(chain[i + 1], chain[i])) {
      leg.process = std::move(*backward);
      leg.direction = LegDirection::against;
    } else {
      return std::nullopt;
    }
    leg.process.work_done += model.work_perturbation(rng);
    polygonal.legs.push_back(std::move(leg));
  }
  return polygonal;
}

std::optional<ProcessRecord> ProcessEngine::weight_process_of(
    ProcessFlavor flavor, const State& from, Rng& rng) const {
  const ModelSystem& model = models_.owner(from);
  switch (flavor) {
    case ProcessFlavor::reversible:
      return weight_process(from, model.equal_entropy_partner(from, rng));
    case ProcessFlavor::stirring: {
      if (!model.is_normal()) return std::nullopt;
      const double scale = std::max(std::abs(from.energy), 1.0);
      const double delta = rng.uniform(0.01, 0.5) * scale;
      return weight_process(from, model.raise_energy(from, delta));
    }
    case ProcessFlavor::relaxation:
      if (from.kind != StateKind::nonequilibrium) return std::nullopt;
      return weight_process(from, model.stable_equilibrium_like(from));
    case ProcessFlavor::generic:
      return weight_process(from, model.sample_like(from, rng));
  }
  return std::nullopt;
}

ProcessRecord ProcessEngine::random_weight_process(const State& from,
                                                   Rng& rng) const {
  static constexpr ProcessFlavor kFlavors[] = {
      ProcessFlavor::reversible, ProcessFlavor::stirring,
      ProcessFlavor::relaxation, ProcessFlavor::generic};
  for (int attempt = 0; attempt < 16; ++attempt) {
    const ProcessFlavor flavor = kFlavors[rng.index(4)];
    if (auto record = weight_process_of(flavor, from, rng)) return *record;
  }
  if (auto record = weight_process_of(ProcessFlavor::reversible, from, rng)) {
    return *record;
  }
  throw EngineError("no weight process could be executed from the state");
}

std::optional<ProcessRecord> ProcessEngine::fixed_region_attempt(
    const State& from, Rng& rng) const {
  const ModelSystem& model = models_.owner(from);
  return weight_process(from, model.sample_same_region(from, rng));
}

State ProcessEngine::sample_state(const std::string& system, Rng& rng) const {
  for (const ModelPtr& m : models_.models()) {
    if (m->id() == system) return m->sample_state(rng);
  }
  throw DomainError("engine knows no system '" + system + "'");
}

State ProcessEngine::sample_like(const State& like, Rng& rng) const {
  return models_.owner(like).sample_like(like, rng);
}

std::optional<State> ProcessEngine::sample_nonequilibrium(
    const std::string& system, Rng& rng) const {
  for (const ModelPtr& m : models_.models()) {
    if (m->id() == system) return m->sample_nonequilibrium(rng);
  }
  throw DomainError("engine knows no system '" + system + "'");
}

State ProcessEngine::stable_equilibrium_like(const State& state) const {
  return models_.owner(state).stable_equilibrium_like(state);
}

std::optional<State> ProcessEngine::isentropic_equilibrium(
    const State& state) const {
  const ModelSystem& model = models_.owner(state);
  return model.equilibrium_with_entropy(state, model.oracle_entropy(state));
}

}  // namespace axtherm
