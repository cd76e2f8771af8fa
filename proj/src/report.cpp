#include "axtherm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "axtherm/caratheodory.hpp"
#include "axtherm/energy_kernel.hpp"
#include "axtherm/errors.hpp"
#include "axtherm/ly_entropy.hpp"
#include "axtherm/zb_entropy.hpp"
#include "json_util.hpp"

namespace axtherm {

using nlohmann::json;
using namespace check_names;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "axioms", "energy", "ly", "zb", "caratheodory", "theorems", "mutants"};
  return names;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"lambda", kLambdaTolerance},
      {"relation", kRelationTolerance},
      {"ly_residual", 1e-6},
      {"zb_residual", 1e-6},
      {"cross_residual", 1e-6},
      {"caratheodory_entropy", 1e-8},
  };
  return t;
}

const std::map<std::string, int>& default_samples() {
  static const std::map<std::string, int> s{
      {"axioms", 200},
      {"energy_pairs", 10},
      {"polygonals", 5},
      {"probes", 20},
      {"irreversible", 100},
      {"weight_processes", 100},
      {"additivity_draws", 100},
      {"interconnection_pairs", 25},
      {"carnot_pairs", 50},
      {"loops", 10},
      {"pmm2_attempts", 1000},
      {"grid", 21},
      {"mutual_splits", 50},
  };
  return s;
}

bool SuiteConfig::selected(const std::string& suite) const {
  return suites.empty() || suites.count(suite) > 0;
}

double SuiteConfig::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) {
    return it->second;
  }
  return default_tolerances().at(name);
}

int SuiteConfig::sample_count(const std::string& name) const {
  if (auto it = samples.find(name); it != samples.end()) return it->second;
  return default_samples().at(name);
}

namespace {

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return detail::require_number(*it, ctx + "." + key);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return it.key() == k; })) {
      throw ParseError(ctx + ": unknown field '" + it.key() + "'");
    }
  }
}

ModelSpec parse_model(const json& m, const std::filesystem::path& base_dir) {
  if (!m.is_object()) throw ParseError("config.model: expected an object");
  const json& kind = detail::require(m, "kind", "config.model");
  if (!kind.is_string()) throw ParseError("config.model.kind: expected a string");
  const std::string k = kind.get<std::string>();
  ModelSpec spec;
  if (k == "ideal_gas") {
    reject_unknown(m, {"kind", "id", "n", "c_v_hat", "gauge", "box"},
                   "config.model");
    spec.kind = ModelKind::ideal_gas;
    IdealGasParams& p = spec.gas;
    if (auto it = m.find("id"); it != m.end()) {
      if (!it->is_string()) throw ParseError("config.model.id: expected a string");
      p.id = it->get<std::string>();
    }
    p.n = number_or(m, "n", p.n, "config.model");
    p.c_v_hat = number_or(m, "c_v_hat", p.c_v_hat, "config.model");
    if (auto it = m.find("gauge"); it != m.end()) {
      reject_unknown(*it, {"u_star", "v_star", "s_star"}, "config.model.gauge");
      p.gauge.u_star = number_or(*it, "u_star", p.gauge.u_star, "config.model.gauge");
      p.gauge.v_star = number_or(*it, "v_star", p.gauge.v_star, "config.model.gauge");
      p.gauge.s_star = number_or(*it, "s_star", p.gauge.s_star, "config.model.gauge");
    }
    if (auto it = m.find("box"); it != m.end()) {
      reject_unknown(*it, {"u_min", "u_max", "v_min", "v_max", "deficit_max"},
                     "config.model.box");
      const std::string ctx = "config.model.box";
      p.box.u_min = number_or(*it, "u_min", p.box.u_min, ctx);
      p.box.u_max = number_or(*it, "u_max", p.box.u_max, ctx);
      p.box.v_min = number_or(*it, "v_min", p.box.v_min, ctx);
      p.box.v_max = number_or(*it, "v_max", p.box.v_max, ctx);
      p.box.deficit_max = number_or(*it, "deficit_max", p.box.deficit_max, ctx);
    }
    try {
      IdealGasModel check(p);
    } catch (const DomainError& e) {
      throw ParseError(std::string("config.model: ") + e.what());
    }
  } else if (k == "two_level_spin") {
    reject_unknown(m, {"kind", "id", "n_spins", "eps"}, "config.model");
    spec.kind = ModelKind::two_level_spin;
    if (auto it = m.find("id"); it != m.end()) {
      if (!it->is_string()) throw ParseError("config.model.id: expected a string");
      spec.spin.id = it->get<std::string>();
    }
    if (auto it = m.find("n_spins"); it != m.end()) {
      spec.spin.n_spins = static_cast<int>(
          detail::require_integer(*it, "config.model.n_spins"));
    }
    spec.spin.eps = number_or(m, "eps", spec.spin.eps, "config.model");
    try {
      TwoLevelSpinModel check(spec.spin);
    } catch (const DomainError& e) {
      throw ParseError(std::string("config.model: ") + e.what());
    }
  } else if (k == "fixture") {
    reject_unknown(m, {"kind", "path"}, "config.model");
    spec.kind = ModelKind::fixture;
    const json& path = detail::require(m, "path", "config.model");
    if (!path.is_string()) throw ParseError("config.model.path: expected a string");
    spec.fixture_path = path.get<std::string>();
    std::filesystem::path resolved = *spec.fixture_path;
    if (resolved.is_relative() && !base_dir.empty()) {
      resolved = base_dir / resolved;
    }
    spec.fixture = load_fixture(resolved);
  } else if (k == "finite") {
    reject_unknown(m, {"kind", "fixture"}, "config.model");
    spec.kind = ModelKind::fixture;
    spec.fixture =
        parse_fixture(detail::require(m, "fixture", "config.model").dump());
  } else {
    throw ParseError("config.model.kind: unknown model kind '" + k + "'");
  }
  return spec;
}

}  // namespace

SuiteConfig parse_config(const std::string& text,
                         const std::filesystem::path& base_dir) {
  const json doc = detail::parse_json_text(text, "config");
  if (!doc.is_object()) throw ParseError("config: expected a JSON object");
  reject_unknown(doc,
                 {"model", "suites", "seed", "tolerances", "samples", "mutation"},
                 "config");
  SuiteConfig config;
  if (auto it = doc.find("model"); it != doc.end()) {
    config.model = parse_model(*it, base_dir);
  }
  if (auto it = doc.find("suites"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("config.suites: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& s = (*it)[i];
      const std::string path = "config.suites[" + std::to_string(i) + "]";
      if (!s.is_string()) throw ParseError(path + ": expected a string");
      const std::string name = s.get<std::string>();
      const auto& known = suite_names();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ParseError(path + ": unknown suite '" + name + "'");
      }
      config.suites.insert(name);
    }
  }
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() &&
                                       it->get<std::int64_t>() >= 0)) {
      throw ParseError("config.seed: expected a non-negative integer");
    }
    config.seed = it->get<std::uint64_t>();
  }
  if (auto it = doc.find("tolerances"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("config.tolerances: expected an object");
    for (auto t = it->begin(); t != it->end(); ++t) {
      const std::string path = "config.tolerances." + t.key();
      if (!default_tolerances().count(t.key())) {
        throw ParseError(path + ": unknown tolerance");
      }
      const double v = detail::require_number(t.value(), path);
      if (!(v > 0.0)) throw ParseError(path + ": must be positive");
      config.tolerances[t.key()] = v;
    }
  }
  if (auto it = doc.find("samples"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("config.samples: expected an object");
    for (auto s = it->begin(); s != it->end(); ++s) {
      const std::string path = "config.samples." + s.key();
      if (!default_samples().count(s.key())) {
        throw ParseError(path + ": unknown sample count");
      }
      const std::int64_t v = detail::require_integer(s.value(), path);
      if (v <= 0 || v > 1'000'000) {
        throw ParseError(path + ": must be in [1, 1000000]");
      }
      config.samples[s.key()] = static_cast<int>(v);
    }
  }
  if (config.samples.count("polygonals") && config.samples["polygonals"] < 2) {
    throw ParseError("config.samples.polygonals: must be at least 2");
  }
  if (config.samples.count("grid") && config.samples["grid"] < 3) {
    throw ParseError("config.samples.grid: must be at least 3");
  }
  if (auto it = doc.find("mutation"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("config.mutation: expected a string");
    try {
      config.mutation = mutation_from_string(it->get<std::string>());
    } catch (const DomainError& e) {
      throw ParseError(std::string("config.mutation: ") + e.what());
    }
  }
  return config;
}

SuiteConfig load_config(const std::filesystem::path& path) {
  return parse_config(detail::read_text_file(path), path.parent_path());
}

void apply_tolerance_override(SuiteConfig& config, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw ParseError("--tolerance expects name=value, got '" + spec + "'");
  }
  const std::string name = spec.substr(0, eq);
  const std::string text = spec.substr(eq + 1);
  if (!default_tolerances().count(name)) {
    throw ParseError("--tolerance: unknown tolerance '" + name + "'");
  }
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ParseError("--tolerance " + name + ": '" + text + "' is not a number");
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParseError("--tolerance " + name + ": must be positive");
  }
  config.tolerances[name] = value;
}

std::string config_to_json(const SuiteConfig& config) {
  json doc;
  json m;
  switch (config.model.kind) {
    case ModelKind::ideal_gas: {
      const IdealGasParams& p = config.model.gas;
      m = {{"kind", "ideal_gas"},
           {"id", p.id},
           {"n", p.n},
           {"c_v_hat", p.c_v_hat},
           {"gauge",
            {{"u_star", p.gauge.u_star},
             {"v_star", p.gauge.v_star},
             {"s_star", p.gauge.s_star}}},
           {"box",
            {{"u_min", p.box.u_min},
             {"u_max", p.box.u_max},
             {"v_min", p.box.v_min},
             {"v_max", p.box.v_max},
             {"deficit_max", p.box.deficit_max}}}};
      break;
    }
    case ModelKind::two_level_spin:
      m = {{"kind", "two_level_spin"},
           {"id", config.model.spin.id},
           {"n_spins", config.model.spin.n_spins},
           {"eps", config.model.spin.eps}};
      break;
    case ModelKind::fixture:
      if (config.model.fixture_path) {
        m = {{"kind", "fixture"}, {"path", config.model.fixture_path->generic_string()}};
      } else {
        m = {{"kind", "finite"},
             {"fixture", json::parse(fixture_to_json(*config.model.fixture))}};
      }
      break;
  }
  doc["model"] = m;
  json suites = json::array();
  for (const std::string& s : suite_names()) {
    if (config.selected(s)) suites.push_back(s);
  }
  doc["suites"] = suites;
  doc["seed"] = config.seed;
  json tol = json::object();
  for (const auto& [k, v] : default_tolerances()) tol[k] = config.tolerance(k);
  doc["tolerances"] = tol;
  json samples = json::object();
  for (const auto& [k, v] : default_samples()) samples[k] = config.sample_count(k);
  doc["samples"] = samples;
  if (config.mutation) doc["mutation"] = to_string(*config.mutation);
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

namespace {

struct Context {
  const SuiteConfig& config;
  ModelPtr model;              // model under test (possibly mutated)
  ModelPtr base;               // unmutated model
  const IdealGasModel* gas = nullptr;  // EOS for path integrals
  std::optional<FinitePreorderFixture> fixture;
  Report& report;

  std::optional<EntropyTable> ly_table;
  std::vector<State> grid;
  std::optional<bool> comparison_holds;
  std::optional<bool> axioms_hold;

  Rng rng(const std::string& label) const {
    return Rng(config.seed).fork(label);
  }
  SamplingOptions sampling(const std::string& label) const {
    return SamplingOptions{config.sample_count("axioms"),
                           Rng::mix(config.seed, label)};
  }
  void add(CheckResult r) { report.checks.push_back(std::move(r)); }
};

std::string space_label(const SpaceId& id) { return to_string(id); }

std::vector<double> oracle_values(const ModelSystem& model,
                                  const EntropyTable& table) {
  std::vector<double> out;
  for (const EntropyEntry& e : table.entries) {
    if (e.value) out.push_back(model.oracle_entropy(e.state));
  }
  return out;
}

std::vector<double> raw_values(const EntropyTable& table) {
  std::vector<double> out;
  for (const EntropyEntry& e : table.entries) {
    if (e.value) out.push_back(*e.value);
  }
  return out;
}


std::vector<State> grid_states(const Context& ctx) {
  if (!ctx.grid.empty()) return ctx.grid;
  const auto n = static_cast<std::size_t>(ctx.config.sample_count("grid"));
  if (ctx.gas) return ctx.gas->grid(n, n);
  Rng rng = ctx.rng("grid");
  std::vector<State> out;
  for (std::size_t i = 0; i < n * n; ++i) out.push_back(ctx.model->sample_state(rng));
  return out;
}

CheckResult fit_check(const char* name, const AffineFit& fit, double tolerance,
                      std::size_t n, bool require_positive_slope) {
  CheckResult r;
  r.name = name;
  r.tolerance_used = tolerance;
  r.samples_used = static_cast<std::int64_t>(n);
  r.metrics["a"] = fit.a;
  r.metrics["b"] = fit.b;
  r.metrics["max_residual"] = fit.max_residual;
  if (!(fit.max_residual < tolerance) ||
      (require_positive_slope && !(fit.a > 0.0))) {
    Witness w;
    w.note = "affine residual " + std::to_string(fit.max_residual) +
             " J/K, slope " + std::to_string(fit.a);
    r.add_failure(std::move(w));
  }
  return r;
}

// -- axioms ------------------------------------------------------------------

void run_axioms(Context& ctx) {
  std::vector<CheckResult> results;
  if (ctx.fixture) {
    FiniteRelation rel(*ctx.fixture);
    results = run_axiom_suite(rel, ctx.sampling("axioms"));
  } else {
    InducedRelation rel(ctx.model, ctx.config.tolerance("relation"));
    results = run_axiom_suite(rel, ctx.sampling("axioms"));
  }
  bool all = true;
  for (const CheckResult& r : results) {
    if (r.name == kComparison) ctx.comparison_holds = r.passed();
    if (r.failed()) all = false;
    ctx.add(r);
  }
  ctx.axioms_hold = all;
}

// -- energy ------------------------------------------------------------------

void run_energy(Context& ctx) {
  ProcessEngine engine(ctx.model);
  Rng rng = ctx.rng("energy");
  std::vector<StatePair> pairs;
  for (int i = 0; i < ctx.config.sample_count("energy_pairs"); ++i) {
    State a = ctx.model->sample_state(rng);
    State b = ctx.model->sample_like(a, rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  ctx.add(check_path_independence(engine, pairs,
                                  ctx.config.sample_count("polygonals"),
                                  Rng::mix(ctx.config.seed, "paths")));

  CheckResult add;
  add.name = "energy.additivity";
  add.tolerance_used = kEnergyAdditivityTolerance;
  double worst = 0.0;
  for (int i = 0; i < ctx.config.sample_count("additivity_draws"); ++i) {
    const State a1 = ctx.model->sample_state(rng);
    const State a2 = ctx.model->sample_like(a1, rng);
    const State b1 = ctx.model->sample_state(rng);
    const State b2 = ctx.model->sample_like(b1, rng);
    const double r = check_energy_additivity({a1, a2}, {b1, b2});
    worst = std::max(worst, r);
    ++add.samples_used;
    if (!(r < kEnergyAdditivityTolerance)) {
      add.add_failure({{CompositeState(a1), CompositeState(a2),
                        CompositeState(b1), CompositeState(b2)},
                       "energy additivity residual " + std::to_string(r)});
    }
  }
  add.metrics["max_residual"] = worst;
  ctx.add(std::move(add));
}

// -- ly ----------------------------------------------------------------------

void run_ly(Context& ctx) {
  InducedRelation rel(ctx.model, ctx.config.tolerance("relation"));
  if (!rel.supports_scaling()) {
    ctx.add(not_applicable("ly.reconstruction",
                           "interpolation needs scaled copies"));
    return;
  }
  const std::vector<State> grid = grid_states(ctx);
  const ReferencePair refs = select_reference_pair(rel, grid);
  EntropyTable table =
      entropy_ly(rel, refs, grid, ctx.config.tolerance("lambda"));
  ctx.report.tables.push_back({"ly_grid", space_label(table.space_id),
                               static_cast<std::int64_t>(table.entries.size()),
                               static_cast<std::int64_t>(table.applicable())});
  const double tol = ctx.config.tolerance("ly_residual");
  if (table.applicable() != table.entries.size()) {
    CheckResult r;
    r.name = "ly.reconstruction";
    Witness w;
    w.note = std::to_string(table.entries.size() - table.applicable()) +
             " grid state(s) outside the reference bracket";
    r.add_failure(std::move(w));
    ctx.add(std::move(r));
    return;
  }
  const AffineFit fit =
      affine_match(raw_values(table), oracle_values(*ctx.model, table));
  ctx.report.fits.push_back({"ly_vs_oracle", fit.a, fit.b, fit.max_residual});
  ctx.add(fit_check("ly.reconstruction", fit, tol, grid.size(), true));
  table.a = fit.a;
  table.b = fit.b;
  ctx.ly_table = table;

  // Extensivity against the t = 2 copy.
  {
    const std::size_t step = std::max<std::size_t>(1, grid.size() / 8);
    std::vector<State> picks;
    std::vector<State> doubled;
    for (std::size_t i = 0; i < grid.size(); i += step) {
      picks.push_back(grid[i]);
      doubled.push_back(rel.scale(grid[i], 2.0));
    }
    const ReferencePair refs2 = make_reference_pair(
        rel, rel.scale(refs.x0, 2.0), rel.scale(refs.x1, 2.0));
    const EntropyTable t0 =
        entropy_ly(rel, refs, picks, ctx.config.tolerance("lambda"));
    const EntropyTable t1 =
        entropy_ly(rel, refs2, doubled, ctx.config.tolerance("lambda"));
    std::vector<CalibrationConstraint> constraints;
    for (std::size_t i = 0; i < picks.size(); ++i) {
      constraints.push_back({{{1, i, 1.0}, {0, i, -2.0}}, 0.0, "S(2X) = 2 S(X)"});
    }
    CheckResult r;
    r.name = "ly.calibration";
    r.tolerance_used = 1e-9;
    r.samples_used = static_cast<std::int64_t>(picks.size());
    try {
      const Calibration cal = calibrate_multispace({t0, t1}, constraints);
      r.metrics["a_scaled"] = cal.constants[1].first;
      r.metrics["b_scaled"] = cal.constants[1].second;
      r.metrics["max_residual"] = cal.max_residual;
      if (!(cal.max_residual < 1e-9)) {
        Witness w;
        w.note = "extensivity residual " + std::to_string(cal.max_residual);
        r.add_failure(std::move(w));
      }
    } catch (const Error& e) {
      Witness w;
      w.note = e.what();
      r.add_failure(std::move(w));
    }
    ctx.add(std::move(r));
  }

  // Sandwich bounds of nonequilibrium states.
  {
    CheckResult r;
    r.name = "ly.sandwich";
    r.tolerance_used = tol;
    Rng rng = ctx.rng("ly.sandwich");
    double widest = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto x = rel.sample_nonequilibrium(rng);
      if (!x) break;
      ++r.samples_used;
      const Sandwich s = sandwich_bounds(rel, *x, table);
      const double truth = ctx.model->oracle_entropy(*x);
      if (!s.complete()) {
        r.add_failure({{CompositeState(*x)}, "no sandwich on the grid"});
        continue;
      }
      widest = std::max(widest, *s.upper - *s.lower);
      if (!(*s.lower <= truth + tol && truth <= *s.upper + tol)) {
        r.add_failure({{CompositeState(*x)}, "bounds miss the entropy"});
      }
    }
    if (r.samples_used == 0) {
      r = not_applicable("ly.sandwich", "model has no nonequilibrium states");
    }
    r.metrics["widest_bracket"] = widest;
    ctx.add(std::move(r));
  }
}

// -- zb ----------------------------------------------------------------------

// A second, distinct system for probes spanning two systems.
ModelPtr companion_for(const Context& ctx) {
  if (ctx.gas) return two_level_spin();
  return ideal_gas();
}

std::vector<Probe> make_probes(const Context& ctx, const ModelPtr& other,
                               int count, const std::string& label) {
  Rng rng = ctx.rng(label);
  std::vector<Probe> probes;
  for (int i = 0; i < count; ++i) {
    const ModelSystem& m = (i % 2 == 0 || !other) ? *ctx.model : *other;
    const State a = m.sample_state(rng);
    const State b = m.sample_like(a, rng);
    probes.emplace_back(a, b);
  }
  return probes;
}

std::vector<std::pair<State, State>> make_pairs(const ModelSystem& m, int count,
                                                Rng& rng) {
  std::vector<std::pair<State, State>> pairs;
  for (int i = 0; i < count; ++i) {
    State a = m.sample_state(rng);
    State b = m.sample_like(a, rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

std::vector<Probe> as_probes(const std::vector<std::pair<State, State>>& pairs) {
  std::vector<Probe> out;
  for (const auto& [a, b] : pairs) out.emplace_back(a, b);
  return out;
}

void run_zb(Context& ctx) {
  const ModelPtr other = companion_for(ctx);
  ProcessEngine engine(std::vector<ModelPtr>{ctx.model, other});
  const ReferenceReservoir r0;
  const int n_probes = ctx.config.sample_count("probes");
  const std::vector<Probe> own = make_probes(ctx, nullptr, n_probes, "zb.own");
  const std::vector<Probe> mixed = make_probes(ctx, other, n_probes, "zb.mixed");

  ctx.add(check_kelvin_gauge(engine, r0, mixed));
  ctx.add(check_temperature_measurement(
      engine, r0,
      {make_reservoir("R546", 546.32), make_reservoir("R300", 300.0),
       make_reservoir("R600", 600.0)},
      mixed));
  ctx.add(temperature_ratio_independence(engine, make_reservoir("R'", 300.0),
                                         make_reservoir("R''", 600.0), mixed,
                                         0.5));
  ctx.add(check_reservoir_independence(
      engine, own,
      {make_reservoir("R100", 100.0), r0.reservoir(),
       make_reservoir("R1000", 1000.0)}));

  // Reconstruction on the grid.
  const std::vector<State> grid = grid_states(ctx);
  const EntropyTable table =
      entropy_zb(engine, grid.front(), 0.0, r0.reservoir(), grid);
  ctx.report.tables.push_back({"zb_grid", space_label(table.space_id),
                               static_cast<std::int64_t>(table.entries.size()),
                               static_cast<std::int64_t>(table.applicable())});
  const AffineFit offset =
      offset_match(raw_values(table), oracle_values(*ctx.model, table));
  ctx.report.fits.push_back(
      {"zb_vs_oracle", offset.a, offset.b, offset.max_residual});
  ctx.add(fit_check("zb.reconstruction", offset,
                    ctx.config.tolerance("zb_residual"), table.applicable(),
                    false));
  if (ctx.ly_table && ctx.ly_table->applicable() == table.applicable()) {
    const AffineFit cross = affine_match(raw_values(*ctx.ly_table),
                                         raw_values(table));
    ctx.report.fits.push_back({"ly_vs_zb", cross.a, cross.b, cross.max_residual});
    ctx.add(fit_check("zb.cross_construction", cross,
                      ctx.config.tolerance("cross_residual"), table.applicable(),
                      true));
  }

  if (ctx.gas) {
    Rng rng = ctx.rng("zb.carnot");
    ctx.add(check_carnot_agreement(
        engine, *ctx.gas,
        make_pairs(*ctx.model, ctx.config.sample_count("carnot_pairs"), rng),
        r0.reservoir()));
  } else {
    ctx.add(not_applicable(kCarnotAgreement,
                           "path integrator needs a gas equation of state"));
  }

  ctx.add(check_mutual_equilibrium(make_reservoir("R", 300.0, 1200.0),
                                   make_reservoir("Rd", 300.0, -400.0),
                                   ctx.config.sample_count("mutual_splits"),
                                   Rng::mix(ctx.config.seed, "mutual")));

  // Triple-point reservoir measured inside its window.
  {
    auto tp = triple_point_reservoir(1.0e6);
    const Reservoir rt = tp->reservoir(5.0e5);
    CheckResult r;
    r.name = "zb.triple_point";
    r.tolerance_used = kTemperatureTolerance;
    double worst = 0.0;
    for (const Probe& p : own) {
      double t = 0.0;
      try {
        t = temperature_of(engine, rt, r0, p);
      } catch (const DegenerateError&) {
        continue;
      }
      ++r.samples_used;
      worst = std::max(worst, std::abs(t - kTriplePointTemperature));
      if (!(std::abs(t - kTriplePointTemperature) <= kTemperatureTolerance)) {
        r.add_failure({{p.first, p.second},
                       "measured " + std::to_string(t) + " K in the window"});
      }
    }
    r.metrics["max_deviation_K"] = worst;
    r.metrics["window_deviation_outside_J_per_K"] =
        tp->window_deviation(tp->params().window_high + 1.0e5);
    ctx.add(std::move(r));
  }
}

// -- theorems ----------------------------------------------------------------

void run_theorems(Context& ctx) {
  const ModelPtr other = companion_for(ctx);
  ProcessEngine engine(std::vector<ModelPtr>{ctx.model, other});
  ProcessEngine single(ctx.model);
  const ReferenceReservoir r0;
  Rng rng = ctx.rng("theorems");

  // No perpetual motion of the second kind, from several stable states.
  {
    const int total = ctx.config.sample_count("pmm2_attempts");
    const int starts = 5;
    CheckResult merged;
    merged.name = kPmm2;
    for (int i = 0; i < starts; ++i) {
      const State ses = ctx.model->sample_state(rng);
      CheckResult r = check_pmm2(single, ses, total / starts,
                                 Rng::mix(ctx.config.seed, "pmm2" + std::to_string(i)));
      if (r.status == CheckStatus::not_applicable) {
        merged = r;
        break;
      }
      merged.samples_used += r.samples_used;
      merged.tolerance_used = std::max(merged.tolerance_used, r.tolerance_used);
      merged.metrics["executed"] += r.metrics["executed"];
      for (Witness& w : r.witnesses) merged.add_failure(std::move(w));
    }
    ctx.add(std::move(merged));
  }

  // Lower bound on work.
  {
    const State a = ctx.model->sample_state(rng);
    const State b = ctx.model->sample_like(a, rng);
    ctx.add(check_lower_bound(single, {a, b}, make_reservoir("R300", 300.0),
                              ctx.config.sample_count("irreversible"),
                              Rng::mix(ctx.config.seed, "lower_bound")));
  }

  // Entropy nondecrease on engine-generated weight processes.
  {
    std::vector<ProcessRecord> records;
    for (int i = 0; i < ctx.config.sample_count("weight_processes"); ++i) {
      State from = ctx.model->sample_state(rng);
      if (i % 3 == 2) {
        if (auto ne = ctx.model->sample_nonequilibrium(rng)) from = *ne;
      }
      records.push_back(single.random_weight_process(from, rng));
    }
    ctx.add(check_entropy_nondecrease(single, records, r0.reservoir()));
  }

  // Additivity with mixed composites.
  {
    std::vector<std::pair<Probe, Probe>> draws;
    for (int i = 0; i < ctx.config.sample_count("additivity_draws"); ++i) {
      const State a1 = ctx.model->sample_state(rng);
      const State a2 = ctx.model->sample_like(a1, rng);
      const ModelSystem& mb = (i % 2 == 0) ? *ctx.model : *other;
      const State b1 = mb.sample_state(rng);
      const State b2 = mb.sample_like(b1, rng);
      draws.push_back({{a1, a2}, {b1, b2}});
    }
    ctx.add(check_entropy_additivity_zb(engine, draws, r0.reservoir()));
  }

  // Theorems 7 and 8.
  const auto pairs =
      make_pairs(*ctx.model, ctx.config.sample_count("interconnection_pairs"), rng);
  ctx.add(check_interconnection(single, pairs, make_reservoir("R300", 300.0)));

  if (!ctx.comparison_holds || !ctx.axioms_hold) {
    InducedRelation rel(ctx.model, ctx.config.tolerance("relation"));
    const SamplingOptions opts = ctx.sampling("theorems.axioms");
    const CheckResult a1 = check_reflexivity(rel, opts);
    const CheckResult a2 = check_transitivity(rel, opts);
    const CheckResult ch = check_comparison(rel, opts);
    ctx.comparison_holds = ch.passed();
    ctx.axioms_hold = !a1.failed() && !a2.failed();
  }
  std::vector<std::pair<State, State>> mixed_pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    State a = pairs[i].first;
    if (i % 2 == 1) {
      if (auto ne = ctx.model->sample_nonequilibrium(rng)) a = *ne;
    }
    mixed_pairs.emplace_back(a, pairs[i].second);
  }
  ctx.add(derive_assumptions_from_ch(single, mixed_pairs,
                                     make_reservoir("R300", 300.0),
                                     *ctx.comparison_holds, *ctx.axioms_hold));
}

// -- caratheodory ------------------------------------------------------------

void run_caratheodory(Context& ctx) {
  if (!ctx.gas) {
    ctx.add(not_applicable(kIntegratingFactor,
                           "model is not a simple system with an equation of "
                           "state"));
    return;
  }
  const IdealGasModel& gas = *ctx.gas;
  const SimpleSystemModel sys = ideal_gas_simple_system(gas);
  const double k = gas.params().c_v_hat * gas.params().n * kGasConstant;
  Rng rng = ctx.rng("caratheodory");

  {
    CheckResult r;
    r.name = "caratheodory.isothermal_work";
    r.tolerance_used = 1e-10;
    r.samples_used = 1;
    const double u = k * 300.0;
    const double w = quasistatic_work(sys, QuasistaticPath::line({u, 0.01}, {u, 0.02}));
    const double expected =
        gas.params().n * kGasConstant * 300.0 * std::log(2.0);
    r.metrics["work_J"] = w;
    r.metrics["closed_form_J"] = expected;
    if (!(std::abs(w - expected) <= 1e-10 * expected)) {
      Witness wit;
      wit.note = "quadrature " + std::to_string(w) + " J vs " +
                 std::to_string(expected) + " J";
      r.add_failure(std::move(wit));
    }
    ctx.add(std::move(r));
  }

  const QuasistaticPath rect = gas_tv_rectangle(gas, 300.0, 600.0, 0.01, 0.02);
  std::vector<QuasistaticPath> loops{rect};
  for (int i = 0; i < ctx.config.sample_count("loops"); ++i) {
    loops.push_back(random_gas_loop(gas, rng));
  }
  std::vector<QuasistaticPath> paths;
  for (const QuasistaticPath& loop : loops) {
    const auto& pts = loop.waypoints();
    std::vector<Coords> open(pts.begin(), pts.end());
    paths.emplace_back(open, false, PathShape::smooth);
  }
  ctx.add(check_pfaffian_form(sys, paths));
  ctx.add(check_integrating_factor(sys, loops));
  ctx.add(check_inverse_square_control(sys, rect));
  ctx.add(check_factorization(sys, ctx.config.sample_count("axioms"),
                              Rng::mix(ctx.config.seed, "factorization")));

  {
    CheckResult r;
    r.name = "caratheodory.reparameterization";
    r.tolerance_used = 1e-10;
    double worst = 0.0;
    for (const QuasistaticPath& loop : loops) {
      const double a = heat_form_integral(sys, loop).value;
      const double b = heat_form_integral(sys, loop.reparameterized()).value;
      worst = std::max(worst, std::abs(a - b));
      ++r.samples_used;
    }
    r.metrics["max_difference"] = worst;
    if (!(worst < 1e-10)) {
      Witness w;
      w.note = "loop value depends on the parameterization";
      r.add_failure(std::move(w));
    }
    ctx.add(std::move(r));
  }

  {
    const std::vector<State> grid = grid_states(ctx);
    const Coords ref{grid.front().coords[0], grid.front().coords[1]};
    const CaratheodoryEntropy s = entropy_caratheodory(sys, sys.x0(ref), 0.0);
    std::vector<double> f;
    std::vector<double> g;
    for (const State& x : grid) {
      f.push_back(s.entropy({x.coords[0], x.coords[1]}));
      g.push_back(gas.oracle_entropy(x));
    }
    const AffineFit fit = affine_match(f, g);
    ctx.report.fits.push_back(
        {"caratheodory_vs_oracle", fit.a, fit.b, fit.max_residual});
    ctx.add(fit_check("caratheodory.entropy_match", fit,
                      ctx.config.tolerance("caratheodory_entropy"), grid.size(),
                      true));
  }
}

// -- mutants -----------------------------------------------------------------

FinitePreorderFixture tiered_fixture() {
  // Four tiers of three equivalent states; every tier below the next.
  FinitePreorderFixture f;
  f.name = "tiers";
  for (int i = 0; i < 12; ++i) f.states.push_back(i);
  for (int a = 0; a < 12; ++a) {
    for (int b = 0; b < 12; ++b) {
      if (a / 3 <= b / 3) f.pairs.emplace_back(a, b);
    }
  }
  return f;
}

CheckResult matrix_entry(const std::string& name,
                         const std::set<std::string>& baseline_failures,
                         const std::set<std::string>& failures,
                         const std::vector<std::string>& targets,
                         std::int64_t checks) {
  CheckResult r;
  r.name = name;
  r.samples_used = checks;
  const std::set<std::string> wanted(targets.begin(), targets.end());
  std::string missing;
  std::string extra;
  for (const std::string& t : wanted) {
    if (!failures.count(t)) missing += (missing.empty() ? "" : ",") + t;
  }
  for (const std::string& f : failures) {
    if (!wanted.count(f)) extra += (extra.empty() ? "" : ",") + f;
  }
  std::string baseline;
  for (const std::string& f : baseline_failures) {
    baseline += (baseline.empty() ? "" : ",") + f;
  }
  r.metrics["failing_checks"] = static_cast<double>(failures.size());
  r.metrics["targeted_checks"] = static_cast<double>(wanted.size());
  if (!baseline.empty()) {
    Witness w;
    w.note = "unmutated battery fails: " + baseline;
    r.add_failure(std::move(w));
  }
  if (!missing.empty()) {
    Witness w;
    w.note = "targeted checks still pass: " + missing;
    r.add_failure(std::move(w));
  }
  if (!extra.empty()) {
    Witness w;
    w.note = "untargeted checks fail: " + extra;
    r.add_failure(std::move(w));
  }
  return r;
}

void run_mutants(Context& ctx) {
  for (CheckResult& r : run_mutation_matrix(ctx.config)) ctx.add(std::move(r));
}

}  // namespace

std::set<std::string> failing_checks(const std::vector<CheckResult>& results) {
  std::set<std::string> out;
  for (const CheckResult& r : results) {
    if (r.failed()) out.insert(r.name);
  }
  return out;
}

std::vector<CheckResult> mutation_battery(const ModelPtr& model,
                                          const IdealGasModel* gas,
                                          const SuiteConfig& config) {
  std::vector<CheckResult> out;
  const SamplingOptions opts{config.sample_count("axioms"),
                             Rng::mix(config.seed, "battery.axioms")};
  InducedRelation rel(model, config.tolerance("relation"));
  for (CheckResult& r : run_axiom_suite(rel, opts)) out.push_back(std::move(r));

  ProcessEngine engine(model);
  Rng rng = Rng(config.seed).fork("battery");
  const auto pairs = make_pairs(*model, config.sample_count("energy_pairs"), rng);
  std::vector<StatePair> state_pairs(pairs.begin(), pairs.end());
  out.push_back(check_path_independence(engine, state_pairs,
                                        config.sample_count("polygonals"),
                                        Rng::mix(config.seed, "battery.paths")));

  const ReferenceReservoir r0;
  const auto probe_pairs = make_pairs(*model, config.sample_count("probes"), rng);
  const std::vector<Probe> probes = as_probes(probe_pairs);
  out.push_back(check_kelvin_gauge(engine, r0, probes));
  out.push_back(check_temperature_measurement(
      engine, r0, {make_reservoir("R546", 546.32)}, probes));
  out.push_back(temperature_ratio_independence(
      engine, make_reservoir("R'", 300.0), make_reservoir("R''", 600.0), probes,
      0.5));
  out.push_back(check_reservoir_independence(
      engine, probes,
      {make_reservoir("R100", 100.0), r0.reservoir(),
       make_reservoir("R1000", 1000.0)}));
  std::vector<std::pair<Probe, Probe>> draws;
  for (int i = 0; i < 20; ++i) {
    const State a1 = model->sample_state(rng);
    const State a2 = model->sample_like(a1, rng);
    const State b1 = model->sample_state(rng);
    const State b2 = model->sample_like(b1, rng);
    draws.push_back({{a1, a2}, {b1, b2}});
  }
  out.push_back(check_entropy_additivity_zb(engine, draws, r0.reservoir()));
  if (gas) {
    out.push_back(check_carnot_agreement(engine, *gas,
                                         make_pairs(*model, 20, rng),
                                         r0.reservoir()));
  }
  out.push_back(check_pmm2(engine, model->sample_state(rng), 200,
                           Rng::mix(config.seed, "battery.pmm2")));
  out.push_back(check_lower_bound(engine, probes.front(),
                                  make_reservoir("R300", 300.0), 20,
                                  Rng::mix(config.seed, "battery.lower")));
  std::vector<ProcessRecord> records;
  for (int i = 0; i < 30; ++i) {
    records.push_back(
        engine.random_weight_process(model->sample_state(rng), rng));
  }
  out.push_back(check_entropy_nondecrease(engine, records, r0.reservoir()));
  out.push_back(check_interconnection(engine, make_pairs(*model, 10, rng),
                                      make_reservoir("R300", 300.0)));
  return out;
}

std::vector<CheckResult> run_mutation_matrix(const SuiteConfig& config) {
  std::vector<CheckResult> out;
  const IdealGasParams params = config.model.kind == ModelKind::ideal_gas
                                    ? config.model.gas
                                    : IdealGasParams{};
  const auto gas = ideal_gas(params);
  const std::set<std::string> baseline =
      failing_checks(mutation_battery(gas, gas.get(), config));

  FinitePreorderFixture fixture = tiered_fixture();
  if (config.model.fixture) {
    try {
      mutate_fixture(*config.model.fixture, Mutation::break_transitivity);
      fixture = *config.model.fixture;
    } catch (const CapabilityError&) {
      // The declared fixture has no three-state class; keep the tiers.
    }
  }
  const SamplingOptions fixture_opts{config.sample_count("axioms"),
                                     Rng::mix(config.seed, "battery.fixture")};
  const std::set<std::string> fixture_baseline =
      failing_checks(run_axiom_suite(FiniteRelation(fixture), fixture_opts));

  for (Mutation m : all_mutations()) {
    const std::string name = "mutants." + to_string(m);
    if (m == Mutation::break_transitivity) {
      const FiniteRelation rel(mutate_fixture(fixture, m));
      const auto results = run_axiom_suite(rel, fixture_opts);
      out.push_back(matrix_entry(name, fixture_baseline, failing_checks(results),
                                 targeted_checks(m),
                                 static_cast<std::int64_t>(results.size())));
      continue;
    }
    const auto results = mutation_battery(mutate_model(gas, m), gas.get(), config);
    out.push_back(matrix_entry(name, baseline, failing_checks(results),
                               targeted_checks(m),
                               static_cast<std::int64_t>(results.size())));
  }
  return out;
}

Report run(const SuiteConfig& config) {
  Report report;
  report.seed = config.seed;
  report.config_json = config_to_json(config);

  std::shared_ptr<const IdealGasModel> gas;
  ModelPtr base;
  std::optional<FinitePreorderFixture> fixture;
  switch (config.model.kind) {
    case ModelKind::ideal_gas:
      gas = ideal_gas(config.model.gas);
      base = gas;
      break;
    case ModelKind::two_level_spin:
      base = std::make_shared<const TwoLevelSpinModel>(config.model.spin);
      break;
    case ModelKind::fixture:
      if (!config.model.fixture) throw ParseError("config.model: no fixture");
      fixture = *config.model.fixture;
      break;
  }
  ModelPtr model = base;
  if (config.mutation) {
    if (fixture) {
      fixture = mutate_fixture(*fixture, *config.mutation);
    } else {
      model = mutate_model(base, *config.mutation);
    }
  }

  Context ctx{config, model, base, gas.get(), fixture, report, {}, {}, {}, {}};
  if (fixture) {
    if (config.selected("axioms")) run_axioms(ctx);
    if (config.selected("mutants")) run_mutants(ctx);
    for (const char* s : {"energy", "ly", "zb", "caratheodory", "theorems"}) {
      if (config.selected(s)) {
        ctx.add(not_applicable(std::string(s) + ".suite",
                               "finite fixtures carry no energy or entropy "
                               "model"));
      }
    }
    return report;
  }
  if (gas) {
    ctx.grid = gas->grid(static_cast<std::size_t>(config.sample_count("grid")),
                         static_cast<std::size_t>(config.sample_count("grid")));
  }
  if (config.selected("axioms")) run_axioms(ctx);
  if (config.selected("energy")) run_energy(ctx);
  if (config.selected("ly")) run_ly(ctx);
  if (config.selected("zb")) run_zb(ctx);
  if (config.selected("caratheodory")) run_caratheodory(ctx);
  if (config.selected("theorems")) run_theorems(ctx);
  if (config.selected("mutants")) run_mutants(ctx);
  return report;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

bool Report::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& r) { return r.failed(); });
}

const CheckResult* Report::find(const std::string& name) const {
  for (const CheckResult& r : checks) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace {

json state_to_json(const State& s) {
  return {{"space", s.space_id.root},
          {"scale", s.space_id.scale},
          {"coords", s.coords},
          {"energy", s.energy},
          {"region", s.region.key()},
          {"separable", s.separable},
          {"uncorrelated", s.uncorrelated},
          {"kind", to_string(s.kind)}};
}

State state_from_json(const json& j) {
  State s;
  s.space_id = SpaceId{j.at("space").get<std::string>(),
                       j.at("scale").get<double>()};
  s.coords = j.at("coords").get<std::vector<double>>();
  s.energy = j.at("energy").get<double>();
  s.region = RegionDescriptor(j.at("region").get<std::string>());
  s.separable = j.at("separable").get<bool>();
  s.uncorrelated = j.at("uncorrelated").get<bool>();
  s.kind = state_kind_from_string(j.at("kind").get<std::string>());
  return s;
}

json check_to_json(const CheckResult& r) {
  json witnesses = json::array();
  for (const Witness& w : r.witnesses) {
    json states = json::array();
    for (const CompositeState& c : w.states) {
      json parts = json::array();
      for (const State& s : c.parts) parts.push_back(state_to_json(s));
      states.push_back(parts);
    }
    witnesses.push_back({{"note", w.note}, {"states", states}});
  }
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  return {{"name", r.name},
          {"status", to_string(r.status)},
          {"samples_used", r.samples_used},
          {"tolerance_used", r.tolerance_used},
          {"message", r.message},
          {"metrics", metrics},
          {"witnesses", witnesses}};
}

CheckResult check_from_json(const json& j) {
  CheckResult r;
  r.name = j.at("name").get<std::string>();
  r.status = check_status_from_string(j.at("status").get<std::string>());
  r.samples_used = j.at("samples_used").get<std::int64_t>();
  r.tolerance_used = j.at("tolerance_used").get<double>();
  r.message = j.at("message").get<std::string>();
  for (auto it = j.at("metrics").begin(); it != j.at("metrics").end(); ++it) {
    r.metrics[it.key()] = it.value().get<double>();
  }
  for (const json& w : j.at("witnesses")) {
    Witness wit;
    wit.note = w.at("note").get<std::string>();
    for (const json& c : w.at("states")) {
      CompositeState cs;
      for (const json& s : c) cs.parts.push_back(state_from_json(s));
      wit.states.push_back(std::move(cs));
    }
    r.witnesses.push_back(std::move(wit));
  }
  return r;
}

json report_to_json(const Report& report) {
  json checks = json::array();
  for (const CheckResult& r : report.checks) checks.push_back(check_to_json(r));
  json tables = json::array();
  for (const TableSummary& t : report.tables) {
    tables.push_back({{"name", t.name},
                      {"space", t.space},
                      {"size", t.size},
                      {"applicable", t.applicable}});
  }
  json fits = json::array();
  for (const FitSummary& f : report.fits) {
    fits.push_back({{"name", f.name},
                    {"a", f.a},
                    {"b", f.b},
                    {"max_residual", f.max_residual}});
  }
  json doc = {{"schema", report.schema},
              {"version", report.version},
              {"seed", report.seed},
              {"config", json::parse(report.config_json.empty()
                                         ? "{}"
                                         : report.config_json)},
              {"aggregate", report.passed() ? "pass" : "fail"},
              {"checks", checks},
              {"tables", tables},
              {"fits", fits}};
  if (report.wall_time_seconds) doc["wall_time_seconds"] = *report.wall_time_seconds;
  return doc;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_state(const State& s) {
  std::string out = to_string(s.space_id) + "(";
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    if (i) out += ", ";
    out += format_number(s.coords[i]);
  }
  return out + ")";
}

std::string format_tuple(const std::vector<CompositeState>& states) {
  std::string out = "[";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += "; ";
    const auto& parts = states[i].parts;
    if (parts.size() == 1) {
      out += format_state(parts.front());
    } else {
      out += "(";
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) out += ", ";
        out += format_state(parts[k]);
      }
      out += ")";
    }
  }
  return out + "]";
}

bool same_states(const std::vector<CompositeState>& a,
                 const std::vector<CompositeState>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& pa = a[i].parts;
    const auto& pb = b[i].parts;
    if (pa.size() != pb.size()) return false;
    for (std::size_t k = 0; k < pa.size(); ++k) {
      const State& x = pa[k];
      const State& y = pb[k];
      if (!(x.space_id == y.space_id) || x.coords != y.coords ||
          x.energy != y.energy || !(x.region == y.region) ||
          x.separable != y.separable || x.uncorrelated != y.uncorrelated ||
          x.kind != y.kind) {
        return false;
      }
    }
  }
  return true;
}

bool same_check(const CheckResult& a, const CheckResult& b) {
  if (a.name != b.name || a.status != b.status ||
      a.samples_used != b.samples_used || a.tolerance_used != b.tolerance_used ||
      a.message != b.message || a.metrics != b.metrics ||
      a.witnesses.size() != b.witnesses.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    if (a.witnesses[i].note != b.witnesses[i].note ||
        !same_states(a.witnesses[i].states, b.witnesses[i].states)) {
      return false;
    }
  }
  return true;
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  throw ParseError("unknown report format '" + name + "'");
}

std::string emit(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::csv: {
      std::string out =
          "name,status,samples_used,tolerance_used,witnesses,message\n";
      for (const CheckResult& r : report.checks) {
        out += csv_escape(r.name) + "," + to_string(r.status) + "," +
               std::to_string(r.samples_used) + "," +
               format_number(r.tolerance_used) + "," +
               std::to_string(r.witnesses.size()) + "," +
               csv_escape(r.message) + "\n";
      }
      return out;
    }
    case ReportFormat::text: {
      std::ostringstream out;
      out << "axtherm " << report.version << "  seed " << report.seed << "\n";
      std::size_t width = 5;
      for (const CheckResult& r : report.checks) {
        width = std::max(width, r.name.size());
      }
      int failed = 0;
      for (const CheckResult& r : report.checks) {
        std::string status = to_string(r.status);
        out << r.name << std::string(width + 2 - r.name.size(), ' ') << status
            << std::string(16 - std::min<std::size_t>(15, status.size()), ' ')
            << "samples " << r.samples_used;
        if (!r.message.empty()) out << "  (" << r.message << ")";
        out << "\n";
        if (r.failed()) {
          ++failed;
          for (const Witness& w : r.witnesses) {
            out << "    witness: " << format_tuple(w.states) << " " << w.note
                << "\n";
          }
        }
      }
      for (const FitSummary& f : report.fits) {
        out << "fit " << f.name << ": a = " << format_number(f.a)
            << ", b = " << format_number(f.b)
            << ", max residual = " << format_number(f.max_residual) << "\n";
      }
      out << (report.passed() ? "PASS" : "FAIL") << ": " << report.checks.size()
          << " checks, " << failed << " failed\n";
      if (report.wall_time_seconds) {
        out << "wall time " << format_number(*report.wall_time_seconds)
            << " s\n";
      }
      return out.str();
    }
  }
  return {};
}

Report report_from_json(const std::string& text) {
  const json doc = detail::parse_json_text(text, "report");
  try {
    if (doc.at("schema").get<std::string>() != kReportSchema) {
      throw ParseError("report.schema: expected \"report_v1\"");
    }
    Report r;
    r.schema = doc.at("schema").get<std::string>();
    r.version = doc.at("version").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.config_json = doc.at("config").dump();
    for (const json& c : doc.at("checks")) r.checks.push_back(check_from_json(c));
    for (const json& t : doc.at("tables")) {
      r.tables.push_back({t.at("name").get<std::string>(),
                          t.at("space").get<std::string>(),
                          t.at("size").get<std::int64_t>(),
                          t.at("applicable").get<std::int64_t>()});
    }
    for (const json& f : doc.at("fits")) {
      r.fits.push_back({f.at("name").get<std::string>(), f.at("a").get<double>(),
                        f.at("b").get<double>(),
                        f.at("max_residual").get<double>()});
    }
    if (auto it = doc.find("wall_time_seconds"); it != doc.end()) {
      r.wall_time_seconds = it->get<double>();
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

bool operator==(const Report& a, const Report& b) {
  if (a.schema != b.schema || a.version != b.version || a.seed != b.seed ||
      json::parse(a.config_json.empty() ? "{}" : a.config_json) !=
          json::parse(b.config_json.empty() ? "{}" : b.config_json) ||
      a.tables != b.tables || a.fits != b.fits ||
      a.wall_time_seconds != b.wall_time_seconds ||
      a.checks.size() != b.checks.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    if (!same_check(a.checks[i], b.checks[i])) return false;
  }
  return true;
}

}  // namespace axtherm
