#include "axtherm/model_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "axtherm/errors.hpp"
#include "json_util.hpp"

namespace axtherm {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// IdealGasModel
// ---------------------------------------------------------------------------

IdealGasModel::IdealGasModel(IdealGasParams params)
    : params_(std::move(params)) {
  if (!(params_.n > 0.0)) throw DomainError("ideal gas: n must be positive");
  if (!(params_.c_v_hat > 0.0)) {
    throw DomainError("ideal gas: c_v_hat must be positive");
  }
  if (!(params_.gauge.u_star > 0.0) || !(params_.gauge.v_star > 0.0)) {
    throw DomainError("ideal gas: gauge constants U*, V* must be positive");
  }
  const IdealGasBox& b = params_.box;
  if (!(b.u_min > 0.0 && b.u_max > b.u_min && b.v_min > 0.0 &&
        b.v_max > b.v_min && b.deficit_max > 0.0)) {
    throw DomainError("ideal gas: invalid sampling box");
  }
}

State IdealGasModel::make_state(double u, double v, double n,
                                double deficit) const {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("ideal gas: internal energy must be positive");
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("ideal gas: volume must be positive");
  }
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("ideal gas: amount must be positive");
  }
  if (!(deficit >= 0.0) || !std::isfinite(deficit)) {
    throw DomainError("ideal gas: entropy deficit must be non-negative");
  }
  State s;
  s.space_id = SpaceId{params_.id, n / params_.n};
  s.coords = {u, v, n, deficit};
  s.energy = u;
  s.region = RegionDescriptor(params_.id + ":V=" + format_double(v));
  s.kind = deficit > 0.0 ? StateKind::nonequilibrium
                         : StateKind::stable_equilibrium;
  return s;
}

IdealGasModel::Coords IdealGasModel::unpack(const State& state) const {
  if (!owns(state) || state.coords.size() != 4) {
    throw DomainError("ideal gas '" + params_.id +
                      "': foreign state of space '" +
                      to_string(state.space_id) + "'");
  }
  return {state.coords[0], state.coords[1], state.coords[2], state.coords[3]};
}

double IdealGasModel::equilibrium_entropy(double u, double v, double n) const {
  const IdealGasGauge& g = params_.gauge;
  return n * kGasConstant *
             (params_.c_v_hat * std::log(u / (n * g.u_star)) +
              std::log(v / (n * g.v_star))) +
         n * g.s_star;
}

double IdealGasModel::temperature(const State& state) const {
  const Coords c = unpack(state);
  return c.u / (params_.c_v_hat * c.n * kGasConstant);
}

double IdealGasModel::pressure(const State& state) const {
  const Coords c = unpack(state);
  return c.u / (params_.c_v_hat * c.v);
}

std::vector<State> IdealGasModel::grid(std::size_t nu, std::size_t nv) const {
  if (nu < 2 || nv < 2) throw DomainError("grid needs at least 2x2 points");
  const IdealGasBox& b = params_.box;
  std::vector<State> out;
  out.reserve(nu * nv);
  for (std::size_t i = 0; i < nu; ++i) {
    const double u = b.u_min + (b.u_max - b.u_min) * static_cast<double>(i) /
                                   static_cast<double>(nu - 1);
    for (std::size_t j = 0; j < nv; ++j) {
      const double v = b.v_min + (b.v_max - b.v_min) *
                                     static_cast<double>(j) /
                                     static_cast<double>(nv - 1);
      out.push_back(make_state(u, v));
    }
  }
  return out;
}

std::vector<StateSpace> IdealGasModel::spaces() const {
  StateSpace s;
  s.id = SpaceId{params_.id, 1.0};
  s.coord_names = {"U", "V", "n", "deficit"};
  s.composition_tag = params_.id;
  s.scalable = true;
  return {s};
}

double IdealGasModel::energy(const State& state) const {
  return unpack(state).u;
}

double IdealGasModel::oracle_entropy(const State& state) const {
  const Coords c = unpack(state);
  return equilibrium_entropy(c.u, c.v, c.n) - c.deficit;
}

Composition IdealGasModel::composition(const State& state) const {
  return {{params_.id, unpack(state).n}};
}

State IdealGasModel::scale_state(const State& state, double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("scale factor must be positive and finite");
  }
  const Coords c = unpack(state);
  return make_state(t * c.u, t * c.v, t * c.n, t * c.deficit);
}

State IdealGasModel::sample_state(Rng& rng) const {
  return sample_like(make_state(params_.box.u_min, params_.box.v_min), rng);
}

State IdealGasModel::sample_like(const State& like, Rng& rng) const {
  const Coords c = unpack(like);
  const double r = c.n / params_.n;
  const IdealGasBox& b = params_.box;
  const double u = r * rng.uniform(b.u_min, b.u_max);
  const double v = r * rng.uniform(b.v_min, b.v_max);
  return make_state(u, v, c.n);
}

State IdealGasModel::sample_same_region(const State& like, Rng& rng) const {
  const Coords c = unpack(like);
  const double r = c.n / params_.n;
  const IdealGasBox& b = params_.box;
  const double u = r * rng.uniform(b.u_min, b.u_max);
  const double d = rng.coin() ? 0.0 : r * rng.uniform(0.0, b.deficit_max);
  return make_state(u, c.v, c.n, d);
}

std::optional<State> IdealGasModel::sample_nonequilibrium(Rng& rng) const {
  const IdealGasBox& b = params_.box;
  const double du = 0.1 * (b.u_max - b.u_min);
  const double dv = 0.1 * (b.v_max - b.v_min);
  const double u = rng.uniform(b.u_min + du, b.u_max - du);
  const double v = rng.uniform(b.v_min + dv, b.v_max - dv);
  const double d = b.deficit_max * rng.uniform_open_closed();
  return make_state(u, v, params_.n, d);
}

State IdealGasModel::equal_entropy_partner(const State& state,
                                           Rng& rng) const {
  const Coords c = unpack(state);
  const double r = c.n / params_.n;
  const IdealGasBox& b = params_.box;
  double v = c.v;
  while (v == c.v) v = r * rng.uniform(b.v_min, b.v_max);
  const double u = c.u * std::pow(c.v / v, 1.0 / params_.c_v_hat);
  return make_state(u, v, c.n, c.deficit);
}

State IdealGasModel::stable_equilibrium_like(const State& state) const {
  const Coords c = unpack(state);
  return make_state(c.u, c.v, c.n, 0.0);
}

std::optional<State> IdealGasModel::equilibrium_with_entropy(
    const State& like, double entropy) const {
  const Coords c = unpack(like);
  const IdealGasGauge& g = params_.gauge;
  const double per_mole = (entropy - c.n * g.s_star) / (c.n * kGasConstant);
  const double log_u =
      (per_mole - std::log(c.v / (c.n * g.v_star))) / params_.c_v_hat;
  const double u = c.n * g.u_star * std::exp(log_u);
  if (!(u > 0.0) || !std::isfinite(u)) return std::nullopt;
  return make_state(u, c.v, c.n, 0.0);
}

State IdealGasModel::raise_energy(const State& state, double delta) const {
  if (!(delta > 0.0)) throw DomainError("raise_energy needs delta > 0");
  const Coords c = unpack(state);
  const double gain = equilibrium_entropy(c.u + delta, c.v, c.n) -
                      equilibrium_entropy(c.u, c.v, c.n);
  // Half of the stirring gain is still unrelaxed in the final state.
  return make_state(c.u + delta, c.v, c.n, c.deficit + 0.5 * gain);
}

std::shared_ptr<const IdealGasModel> ideal_gas(double n, double c_v_hat,
                                               IdealGasGauge gauge) {
  IdealGasParams p;
  p.n = n;
  p.c_v_hat = c_v_hat;
  p.gauge = gauge;
  return std::make_shared<const IdealGasModel>(p);
}

std::shared_ptr<const IdealGasModel> ideal_gas(IdealGasParams params) {
  return std::make_shared<const IdealGasModel>(std::move(params));
}

// ---------------------------------------------------------------------------
// TwoLevelSpinModel
// ---------------------------------------------------------------------------

TwoLevelSpinModel::TwoLevelSpinModel(TwoLevelSpinParams params)
    : params_(std::move(params)) {
  if (params_.n_spins < 2) throw DomainError("spin model needs N >= 2");
  if (!(params_.eps > 0.0)) {
    throw DomainError("spin model: level spacing must be positive");
  }
}

State TwoLevelSpinModel::make_state(double e) const {
  const double top = max_energy();
  const double slack = 1e-12 * top;
  if (!(e >= -slack && e <= top + slack)) {
    throw DomainError("spin energy outside [0, N eps]");
  }
  e = std::clamp(e, 0.0, top);
  State s;
  s.space_id = SpaceId{params_.id, 1.0};
  s.coords = {e};
  s.energy = e;
  s.region = RegionDescriptor("spin:" + params_.id);
  s.kind = StateKind::stable_equilibrium;
  return s;
}

double TwoLevelSpinModel::entropy_at(double e) const {
  const double n = params_.n_spins;
  const double k = std::clamp(e / params_.eps, 0.0, n);
  return kBoltzmann *
         (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

std::vector<StateSpace> TwoLevelSpinModel::spaces() const {
  StateSpace s;
  s.id = SpaceId{params_.id, 1.0};
  s.coord_names = {"E"};
  s.composition_tag = params_.id;
  s.scalable = false;
  return {s};
}

double TwoLevelSpinModel::energy(const State& state) const {
  if (!owns(state) || state.coords.size() != 1) {
    throw DomainError("spin model: foreign state");
  }
  return state.coords[0];
}

double TwoLevelSpinModel::oracle_entropy(const State& state) const {
  return entropy_at(energy(state));
}

Composition TwoLevelSpinModel::composition(const State& state) const {
  energy(state);
  return {{params_.id, static_cast<double>(params_.n_spins)}};
}

std::optional<EnergyBounds> TwoLevelSpinModel::energy_bounds() const {
  return EnergyBounds{0.0, max_energy()};
}

State TwoLevelSpinModel::sample_state(Rng& rng) const {
  return make_state(rng.uniform(0.0, max_energy()));
}

State TwoLevelSpinModel::sample_like(const State& like, Rng& rng) const {
  energy(like);
  return sample_state(rng);
}

State TwoLevelSpinModel::equal_entropy_partner(const State& state,
                                               Rng& /*rng*/) const {
  return make_state(max_energy() - energy(state));
}

State TwoLevelSpinModel::stable_equilibrium_like(const State& state) const {
  return make_state(energy(state));
}

std::optional<State> TwoLevelSpinModel::equilibrium_with_entropy(
    const State& like, double entropy) const {
  const double half = 0.5 * max_energy();
  const double s_max = entropy_at(half);
  const double slack = 1e-12 * std::max(s_max, kBoltzmann);
  if (entropy < -slack || entropy > s_max + slack) return std::nullopt;
  double lo = 0.0;
  double hi = half;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (entropy_at(mid) < entropy ? lo : hi) = mid;
  }
  const double e = 0.5 * (lo + hi);
  return make_state(energy(like) > half ? max_energy() - e : e);
}

std::shared_ptr<const TwoLevelSpinModel> two_level_spin(int n_spins,
                                                        double eps) {
  TwoLevelSpinParams p;
  p.n_spins = n_spins;
  p.eps = eps;
  return std::make_shared<const TwoLevelSpinModel>(p);
}

// ---------------------------------------------------------------------------
// TriplePointReservoirModel
// ---------------------------------------------------------------------------

TriplePointReservoirModel::TriplePointReservoirModel(TriplePointParams params)
    : params_(std::move(params)) {
  if (!(params_.window_high > params_.window_low)) {
    throw DomainError("triple-point window must be non-empty");
  }
  if (!(params_.heat_capacity > 0.0)) {
    throw DomainError("triple-point heat capacity must be positive");
  }
}

State TriplePointReservoirModel::make_state(double e) const {
  temperature_at(e);  // domain check
  State s;
  s.space_id = SpaceId{params_.id, 1.0};
  s.coords = {e};
  s.energy = e;
  s.region = RegionDescriptor("reservoir:" + params_.id);
  s.kind = StateKind::stable_equilibrium;
  return s;
}

bool TriplePointReservoirModel::in_window(double e) const {
  return e >= params_.window_low && e <= params_.window_high;
}

double TriplePointReservoirModel::temperature_at(double e) const {
  const double c = params_.heat_capacity;
  double t = kTriplePointTemperature;
  if (e < params_.window_low) {
    t += (e - params_.window_low) / c;
  } else if (e > params_.window_high) {
    t += (e - params_.window_high) / c;
  }
  if (!(t > 0.0)) {
    throw DomainError("triple-point reservoir energy below absolute zero");
  }
  return t;
}

double TriplePointReservoirModel::entropy_at(double e) const {
  const double t0 = kTriplePointTemperature;
  const double c = params_.heat_capacity;
  const double t = temperature_at(e);
  if (e < params_.window_low) return c * std::log(t / t0);
  if (e <= params_.window_high) return (e - params_.window_low) / t0;
  return (params_.window_high - params_.window_low) / t0 + c * std::log(t / t0);
}

double TriplePointReservoirModel::window_deviation(double e) const {
  return std::abs(entropy_at(e) -
                  (e - params_.window_low) / kTriplePointTemperature);
}

Reservoir TriplePointReservoirModel::reservoir(double e) const {
  Reservoir r = make_reservoir(params_.id, kTriplePointTemperature, e);
  r.ref_energy = params_.window_low;
  r.ref_entropy = 0.0;
  r.region = RegionDescriptor("reservoir:" + params_.id);
  r.energy_window = std::make_pair(params_.window_low, params_.window_high);
  return r;
}

std::vector<StateSpace> TriplePointReservoirModel::spaces() const {
  StateSpace s;
  s.id = SpaceId{params_.id, 1.0};
  s.coord_names = {"E"};
  s.composition_tag = params_.id;
  return {s};
}

double TriplePointReservoirModel::energy(const State& state) const {
  if (!owns(state) || state.coords.size() != 1) {
    throw DomainError("triple-point reservoir: foreign state");
  }
  return state.coords[0];
}

double TriplePointReservoirModel::oracle_entropy(const State& state) const {
  return entropy_at(energy(state));
}

Composition TriplePointReservoirModel::composition(const State& state) const {
  energy(state);
  return {{params_.id, 1.0}};
}

State TriplePointReservoirModel::sample_state(Rng& rng) const {
  return make_state(rng.uniform(params_.window_low, params_.window_high));
}

State TriplePointReservoirModel::sample_like(const State& like,
                                             Rng& rng) const {
  energy(like);
  return sample_state(rng);
}

State TriplePointReservoirModel::equal_entropy_partner(const State& state,
                                                       Rng& /*rng*/) const {
  return make_state(energy(state));
}

State TriplePointReservoirModel::stable_equilibrium_like(
    const State& state) const {
  return make_state(energy(state));
}

std::optional<State> TriplePointReservoirModel::equilibrium_with_entropy(
    const State& like, double entropy) const {
  energy(like);
  const double t0 = kTriplePointTemperature;
  const double c = params_.heat_capacity;
  const double s_high = (params_.window_high - params_.window_low) / t0;
  double e;
  if (entropy < 0.0) {
    e = params_.window_low + c * t0 * (std::exp(entropy / c) - 1.0);
  } else if (entropy <= s_high) {
    e = params_.window_low + entropy * t0;
  } else {
    e = params_.window_high + c * t0 * (std::exp((entropy - s_high) / c) - 1.0);
  }
  if (!std::isfinite(e)) return std::nullopt;
  return make_state(e);
}

State TriplePointReservoirModel::raise_energy(const State& state,
                                              double delta) const {
  if (!(delta > 0.0)) throw DomainError("raise_energy needs delta > 0");
  return make_state(energy(state) + delta);
}

std::shared_ptr<const TriplePointReservoirModel> triple_point_reservoir(
    double capacity) {
  if (!(capacity > 0.0)) {
    throw DomainError("triple-point capacity window must be non-empty");
  }
  TriplePointParams p;
  p.window_low = 0.0;
  p.window_high = capacity;
  return std::make_shared<const TriplePointReservoirModel>(p);
}

// ---------------------------------------------------------------------------
// Finite fixtures
// ---------------------------------------------------------------------------

FiniteRelation::FiniteRelation(FinitePreorderFixture fixture)
    : fixture_(std::move(fixture)) {
  const std::size_t n = fixture_.states.size();
  sorted_index_.resize(n);
  for (std::size_t i = 0; i < n; ++i) sorted_index_[i] = i;
  std::sort(sorted_index_.begin(), sorted_index_.end(),
            [&](std::size_t a, std::size_t b) {
              return fixture_.states[a] < fixture_.states[b];
            });
  for (std::size_t i = 1; i < n; ++i) {
    if (fixture_.states[sorted_index_[i]] ==
        fixture_.states[sorted_index_[i - 1]]) {
      throw DomainError("fixture '" + fixture_.name + "': duplicate state " +
                        std::to_string(fixture_.states[sorted_index_[i]]));
    }
  }
  matrix_.assign(n * n, false);
  for (const auto& [from, to] : fixture_.pairs) {
    matrix_[index_of(from) * n + index_of(to)] = true;
  }
  equilibrium_.assign(n, !fixture_.equilibrium.has_value());
  if (fixture_.equilibrium) {
    for (std::int64_t label : *fixture_.equilibrium) {
      equilibrium_[index_of(label)] = true;
    }
  }
}

std::size_t FiniteRelation::index_of(std::int64_t label) const {
  auto it = std::lower_bound(
      sorted_index_.begin(), sorted_index_.end(), label,
      [&](std::size_t pos, std::int64_t l) { return fixture_.states[pos] < l; });
  if (it == sorted_index_.end() || fixture_.states[*it] != label) {
    throw DomainError("fixture '" + fixture_.name + "': unknown state id " +
                      std::to_string(label));
  }
  return *it;
}

State FiniteRelation::state(std::int64_t label) const {
  const std::size_t i = index_of(label);
  State s;
  s.space_id = SpaceId{fixture_.name, 1.0};
  s.coords = {static_cast<double>(label)};
  s.energy = 0.0;
  s.region = RegionDescriptor("fixture:" + fixture_.name);
  s.kind = equilibrium_[i] ? StateKind::stable_equilibrium
                           : StateKind::nonequilibrium;
  return s;
}

std::int64_t FiniteRelation::label_of(const State& state) const {
  if (state.space_id.root != fixture_.name || state.coords.size() != 1) {
    throw DomainError("fixture '" + fixture_.name +
                      "': state of foreign space '" +
                      to_string(state.space_id) + "'");
  }
  const auto label = static_cast<std::int64_t>(std::llround(state.coords[0]));
  index_of(label);
  return label;
}

bool FiniteRelation::related(std::int64_t from, std::int64_t to) const {
  return matrix_[index_of(from) * fixture_.states.size() + index_of(to)];
}

bool FiniteRelation::is_equilibrium(std::int64_t label) const {
  return equilibrium_[index_of(label)];
}

bool FiniteRelation::precedes(const CompositeState& x,
                              const CompositeState& y) const {
  if (x.parts.size() != 1 || y.parts.size() != 1) {
    throw CapabilityError("fixture '" + fixture_.name +
                          "' has no composition tables");
  }
  return related(label_of(x.parts.front()), label_of(y.parts.front()));
}

std::vector<State> FiniteRelation::universe() const {
  std::vector<State> out;
  out.reserve(fixture_.states.size());
  for (std::int64_t label : fixture_.states) out.push_back(state(label));
  return out;
}

State FiniteRelation::sample(Rng& rng) const {
  std::vector<std::int64_t> pool;
  for (std::size_t i = 0; i < fixture_.states.size(); ++i) {
    if (equilibrium_[i]) pool.push_back(fixture_.states[i]);
  }
  if (pool.empty()) {
    throw DomainError("fixture '" + fixture_.name + "' has no states");
  }
  return state(pool[rng.index(pool.size())]);
}

State FiniteRelation::sample_partner(const State& /*state*/, Rng& rng) const {
  if (fixture_.states.empty()) {
    throw DomainError("fixture '" + fixture_.name + "' has no states");
  }
  return state(fixture_.states[rng.index(fixture_.states.size())]);
}

std::optional<State> FiniteRelation::sample_nonequilibrium(Rng& rng) const {
  std::vector<std::int64_t> pool;
  for (std::size_t i = 0; i < fixture_.states.size(); ++i) {
    if (!equilibrium_[i]) pool.push_back(fixture_.states[i]);
  }
  if (pool.empty()) return std::nullopt;
  return state(pool[rng.index(pool.size())]);
}

State FiniteRelation::scale(const State& /*state*/, double /*t*/) const {
  throw CapabilityError("fixture '" + fixture_.name +
                        "' declares no scaled copies");
}

std::string FiniteRelation::describe() const {
  return "finite(" + fixture_.name + ")";
}

FinitePreorderFixture parse_fixture(const std::string& text) {
  const nlohmann::json doc = detail::parse_json_text(text, "fixture");
  if (!doc.is_object()) throw ParseError("fixture: expected a JSON object");
  if (auto it = doc.find("schema"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != "fixture_v1") {
      throw ParseError("fixture.schema: expected \"fixture_v1\"");
    }
  }
  FinitePreorderFixture f;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("fixture.name: expected a string");
    f.name = it->get<std::string>();
  }
  const nlohmann::json& states = detail::require(doc, "states", "fixture");
  if (!states.is_array()) throw ParseError("fixture.states: expected an array");
  for (std::size_t i = 0; i < states.size(); ++i) {
    f.states.push_back(detail::require_integer(
        states[i], "fixture.states[" + std::to_string(i) + "]"));
  }
  const std::set<std::int64_t> known(f.states.begin(), f.states.end());
  if (known.size() != f.states.size()) {
    throw ParseError("fixture.states: duplicate state id");
  }
  auto check_known = [&](std::int64_t id, const std::string& path) {
    if (!known.count(id)) {
      throw ParseError(path + ": unknown state id " + std::to_string(id));
    }
    return id;
  };
  const nlohmann::json& pairs = detail::require(doc, "pairs", "fixture");
  if (!pairs.is_array()) throw ParseError("fixture.pairs: expected an array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string path = "fixture.pairs[" + std::to_string(i) + "]";
    if (!pairs[i].is_array() || pairs[i].size() != 2) {
      throw ParseError(path + ": expected a pair [from, to]");
    }
    const auto from = check_known(
        detail::require_integer(pairs[i][0], path + "[0]"), path + "[0]");
    const auto to = check_known(
        detail::require_integer(pairs[i][1], path + "[1]"), path + "[1]");
    f.pairs.emplace_back(from, to);
  }
  if (auto it = doc.find("equilibrium"); it != doc.end()) {
    if (!it->is_array()) {
      throw ParseError("fixture.equilibrium: expected an array");
    }
    std::vector<std::int64_t> eq;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "fixture.equilibrium[" + std::to_string(i) + "]";
      eq.push_back(check_known(detail::require_integer((*it)[i], path), path));
    }
    f.equilibrium = std::move(eq);
  }
  if (auto it = doc.find("scaling"); it != doc.end()) {
    if (!it->is_boolean()) {
      throw ParseError("fixture.scaling: expected a boolean");
    }
    if (it->get<bool>()) {
      throw ParseError(
          "fixture.scaling: scaled copies of finite fixtures are not "
          "supported");
    }
  }
  return f;
}

FinitePreorderFixture load_fixture(const std::filesystem::path& path) {
  return parse_fixture(detail::read_text_file(path));
}

std::string fixture_to_json(const FinitePreorderFixture& fixture) {
  nlohmann::json doc;
  doc["schema"] = "fixture_v1";
  doc["name"] = fixture.name;
  doc["states"] = fixture.states;
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : fixture.pairs) pairs.push_back({a, b});
  doc["pairs"] = pairs;
  if (fixture.equilibrium) doc["equilibrium"] = *fixture.equilibrium;
  return doc.dump(2);
}

FinitePreorderFixture spin_discrete_fixture(int n_spins) {
  if (n_spins < 2 || n_spins > 60) {
    throw DomainError("discrete spin fixture needs 2 <= N <= 60");
  }
  std::vector<std::uint64_t> binom(static_cast<std::size_t>(n_spins) + 1, 1);
  for (int k = 1; k <= n_spins; ++k) {
    binom[k] = binom[k - 1] * static_cast<std::uint64_t>(n_spins - k + 1) /
               static_cast<std::uint64_t>(k);
  }
  FinitePreorderFixture f;
  f.name = "spin_discrete_" + std::to_string(n_spins);
  for (int k = 0; k <= n_spins; ++k) f.states.push_back(k);
  for (int a = 0; a <= n_spins; ++a) {
    for (int b = 0; b <= n_spins; ++b) {
      if (binom[a] <= binom[b]) f.pairs.emplace_back(a, b);
    }
  }
  return f;
}

}  // namespace axtherm
