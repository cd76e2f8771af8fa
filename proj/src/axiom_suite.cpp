#include "axtherm/axiom_suite.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "axtherm/errors.hpp"
#include "axtherm/process.hpp"

namespace axtherm {

namespace {

using namespace check_names;

CheckResult started(const char* name, const SamplingOptions& options) {
  if (options.samples < 0) throw DomainError("sample count must be >= 0");
  CheckResult r;
  r.name = name;
  return r;
}

// Half of the time a state on the comparison boundary of `x`, so that
// equality cases are exercised as often as strict ones.
State draw_second(const AccessibilityRelation& rel, const State& x, Rng& rng) {
  return rng.coin() ? rel.sample_partner(x, rng) : rel.sample(rng);
}

// Equilibrium or, when the relation has them, nonequilibrium states.
State draw_extended(const AccessibilityRelation& rel, Rng& rng) {
  if (rng.coin()) {
    if (auto s = rel.sample_nonequilibrium(rng)) return *s;
  }
  return rel.sample(rng);
}

bool precedes(const AccessibilityRelation& rel, const State& x,
              const State& y) {
  return rel.precedes(CompositeState(x), CompositeState(y));
}

CheckResult reflexivity_over(const AccessibilityRelation& rel,
                             const std::vector<State>& states,
                             CheckResult result) {
  for (const State& x : states) {
    ++result.samples_used;
    if (!precedes(rel, x, x)) {
      result.add_failure({{CompositeState(x)}, "X < X does not hold"});
    }
  }
  return result;
}

std::vector<State> sampled_states(const AccessibilityRelation& rel, int n,
                                  Rng& rng, bool extended) {
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(extended ? draw_extended(rel, rng) : rel.sample(rng));
  }
  return out;
}

CheckResult transitivity_exhaustive(const AccessibilityRelation& rel,
                                    const std::vector<State>& states,
                                    CheckResult result) {
  const std::size_t n = states.size();
  std::vector<char> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = precedes(rel, states[i], states[j]) ? 1 : 0;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i * n + j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (m[j * n + k] && !m[i * n + k]) {
          result.add_failure({{CompositeState(states[i]),
                               CompositeState(states[j]),
                               CompositeState(states[k])},
                              "X < Y and Y < Z but not X < Z"});
        }
      }
    }
  }
  result.samples_used = static_cast<std::int64_t>(n * n * n);
  return result;
}

CheckResult transitivity_sampled(const AccessibilityRelation& rel, int samples,
                                 Rng& rng, bool extended, CheckResult result) {
  for (int i = 0; i < samples; ++i) {
    const State x = extended ? draw_extended(rel, rng) : rel.sample(rng);
    const State y = draw_second(rel, x, rng);
    const State z = draw_second(rel, y, rng);
    const State* t[3] = {&x, &y, &z};
    int perm[3] = {0, 1, 2};
    do {
      const State& a = *t[perm[0]];
      const State& b = *t[perm[1]];
      const State& c = *t[perm[2]];
      if (precedes(rel, a, b) && precedes(rel, b, c) && !precedes(rel, a, c)) {
        result.add_failure(
            {{CompositeState(a), CompositeState(b), CompositeState(c)},
             "X < Y and Y < Z but not X < Z"});
      }
    } while (std::next_permutation(perm, perm + 3));
    ++result.samples_used;
  }
  return result;
}

CheckResult consistency_sampled(const AccessibilityRelation& rel_a,
                                const AccessibilityRelation& rel_b,
                                const AccessibilityRelation& rel_composite,
                                int samples, Rng& rng, bool extended,
                                CheckResult result) {
  for (int i = 0; i < samples; ++i) {
    State x = extended ? draw_extended(rel_a, rng) : rel_a.sample(rng);
    State y = draw_second(rel_a, x, rng);
    State xp = extended ? draw_extended(rel_b, rng) : rel_b.sample(rng);
    State yp = draw_second(rel_b, xp, rng);
    if (!precedes(rel_a, x, y)) std::swap(x, y);
    if (!precedes(rel_b, xp, yp)) std::swap(xp, yp);
    if (!precedes(rel_a, x, y) || !precedes(rel_b, xp, yp)) continue;
    ++result.samples_used;
    const CompositeState from = compose_states({x, xp});
    const CompositeState to = compose_states({y, yp});
    if (!rel_composite.precedes(from, to)) {
      result.add_failure({{CompositeState(x), CompositeState(y),
                           CompositeState(xp), CompositeState(yp)},
                          "X < Y and X' < Y' but not (X, X') < (Y, Y')"});
    }
  }
  return result;
}

CheckResult stability_sampled(const AccessibilityRelation& rel,
                              const std::vector<double>& eps_sequence,
                              int samples, Rng& rng, bool extended,
                              CheckResult result) {
  for (int i = 0; i < samples; ++i) {
    const State x = extended ? draw_extended(rel, rng) : rel.sample(rng);
    const State y = draw_second(rel, x, rng);
    State z0 = rel.sample(rng);
    State z1 = rel.sample(rng);
    if (!precedes(rel, z0, z1)) std::swap(z0, z1);
    bool premise = true;
    for (double eps : eps_sequence) {
      const CompositeState from = compose_states({x, rel.scale(z0, eps)});
      const CompositeState to = compose_states({y, rel.scale(z1, eps)});
      if (!rel.precedes(from, to)) {
        premise = false;
        break;
      }
    }
    if (!premise) continue;
    ++result.samples_used;
    if (!precedes(rel, x, y)) {
      result.add_failure(
          {{CompositeState(x), CompositeState(y), CompositeState(z0),
            CompositeState(z1)},
           "(X, eps Z0) < (Y, eps Z1) for every eps but not X < Y"});
    }
  }
  return result;
}

bool composes(const AccessibilityRelation& rel) { return !rel.finite(); }

}  // namespace

std::vector<double> default_eps_sequence() {
  std::vector<double> eps;
  for (int k = 1; k <= 20; ++k) eps.push_back(std::ldexp(1.0, -k));
  return eps;
}

CheckResult check_reflexivity(const AccessibilityRelation& rel,
                              const SamplingOptions& options) {
  CheckResult result = started(kReflexivity, options);
  Rng rng = Rng(options.seed).fork(kReflexivity);
  const std::vector<State> states =
      rel.finite() ? rel.universe()
                   : sampled_states(rel, options.samples, rng, false);
  return reflexivity_over(rel, states, std::move(result));
}

CheckResult check_transitivity(const AccessibilityRelation& rel,
                               const SamplingOptions& options,
                               std::size_t cap) {
  CheckResult result = started(kTransitivity, options);
  if (rel.finite()) {
    const std::vector<State> states = rel.universe();
    if (states.size() > cap) {
      return not_applicable(kTransitivity,
                            "universe of " + std::to_string(states.size()) +
                                " states exceeds the exhaustive-scan cap of " +
                                std::to_string(cap));
    }
    return transitivity_exhaustive(rel, states, std::move(result));
  }
  Rng rng = Rng(options.seed).fork(kTransitivity);
  return transitivity_sampled(rel, options.samples, rng, false,
                              std::move(result));
}

CheckResult check_consistency(const AccessibilityRelation& rel_a,
                              const AccessibilityRelation& rel_b,
                              const AccessibilityRelation& rel_composite,
                              const SamplingOptions& options) {
  if (!composes(rel_a) || !composes(rel_b) || !composes(rel_composite)) {
    return not_applicable(kConsistency,
                          "finite fixtures carry no composition tables");
  }
  CheckResult result = started(kConsistency, options);
  Rng rng = Rng(options.seed).fork(kConsistency);
  return consistency_sampled(rel_a, rel_b, rel_composite, options.samples, rng,
                             false, std::move(result));
}

CheckResult check_scaling_invariance(const AccessibilityRelation& rel,
                                     const std::vector<double>& t_samples,
                                     const SamplingOptions& options) {
  if (!rel.supports_scaling()) {
    return not_applicable(kScaling, "relation has no scaled copies");
  }
  for (double t : t_samples) {
    if (!(t > 0.0)) throw DomainError("scale factors must be positive");
  }
  CheckResult result = started(kScaling, options);
  Rng rng = Rng(options.seed).fork(kScaling);
  for (int i = 0; i < options.samples; ++i) {
    State x = rel.sample(rng);
    State y = draw_second(rel, x, rng);
    if (!precedes(rel, x, y)) std::swap(x, y);
    if (!precedes(rel, x, y)) continue;
    ++result.samples_used;
    for (double t : t_samples) {
      const State tx = rel.scale(x, t);
      const State ty = rel.scale(y, t);
      if (!precedes(rel, tx, ty)) {
        result.add_failure(
            {{CompositeState(x), CompositeState(y), CompositeState(tx),
              CompositeState(ty)},
             "X < Y but not tX < tY at t = " + std::to_string(t)});
      }
    }
  }
  return result;
}

CheckResult check_splitting(const AccessibilityRelation& rel, double t,
                            const SamplingOptions& options) {
  if (!rel.supports_scaling()) {
    return not_applicable(kSplitting, "relation has no scaled copies");
  }
  if (!(t > 0.0 && t < 1.0)) throw DomainError("splitting needs t in (0, 1)");
  CheckResult result = started(kSplitting, options);
  result.metrics["t"] = t;
  Rng rng = Rng(options.seed).fork(kSplitting);
  for (int i = 0; i < options.samples; ++i) {
    const State x = draw_extended(rel, rng);
    const CompositeState split =
        compose_states({rel.scale(x, t), rel.scale(x, 1.0 - t)});
    ++result.samples_used;
    const bool forward = rel.precedes(CompositeState(x), split);
    const bool backward = rel.precedes(split, CompositeState(x));
    if (!forward || !backward) {
      result.add_failure({{CompositeState(x), split},
                          forward ? "(tX, (1-t)X) < X fails"
                                  : "X < (tX, (1-t)X) fails"});
    }
  }
  return result;
}

CheckResult check_stability(const AccessibilityRelation& rel,
                            const std::vector<double>& eps_sequence,
                            const SamplingOptions& options) {
  if (!rel.supports_scaling()) {
    return not_applicable(kStability, "relation has no scaled copies");
  }
  if (eps_sequence.empty()) throw DomainError("empty eps sequence");
  for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] > 0.0) ||
        (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))) {
      throw DomainError("eps sequence must be positive and decreasing");
    }
  }
  CheckResult result = started(kStability, options);
  result.tolerance_used = eps_sequence.back();
  Rng rng = Rng(options.seed).fork(kStability);
  return stability_sampled(rel, eps_sequence, options.samples, rng, false,
                           std::move(result));
}

CheckResult check_comparison(const AccessibilityRelation& rel,
                             const SamplingOptions& options) {
  CheckResult result = started(kComparison, options);
  auto compare = [&](const State& x, const State& y) {
    ++result.samples_used;
    if (accessible(rel, x, y) == Accessibility::incomparable) {
      result.add_failure({{CompositeState(x), CompositeState(y)},
                          "neither X < Y nor Y < X"});
    }
  };
  if (rel.finite()) {
    const std::vector<State> states = rel.universe();
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = i; j < states.size(); ++j) {
        compare(states[i], states[j]);
      }
    }
    return result;
  }
  Rng rng = Rng(options.seed).fork(kComparison);
  for (int i = 0; i < options.samples; ++i) {
    const State x = rel.sample(rng);
    switch (i % 3) {
      case 0:
        compare(x, x);
        break;
      case 1:
        compare(x, rel.sample_partner(x, rng));
        break;
      default:
        compare(x, rel.sample(rng));
    }
  }
  return result;
}

CheckResult check_n1_n2(const AccessibilityRelation& rel,
                        const SamplingOptions& options) {
  CheckResult result = started(kN1N2, options);
  Rng rng = Rng(options.seed).fork(kN1N2);

  // Partition of the extended space.
  std::vector<State> gamma;
  std::vector<State> outside;
  if (rel.finite()) {
    for (const State& s : rel.universe()) {
      (s.kind == StateKind::stable_equilibrium ? gamma : outside).push_back(s);
    }
  } else {
    Rng draw = rng.fork("gamma");
    for (int i = 0; i < 256; ++i) gamma.push_back(rel.sample(draw));
    for (int i = 0; i < options.samples; ++i) {
      if (auto s = rel.sample_nonequilibrium(draw)) outside.push_back(*s);
    }
  }
  if (gamma.empty()) {
    return not_applicable(kN1N2, "no stable equilibrium states");
  }

  // N1 on the extended space.
  auto absorb = [&](const CheckResult& part) {
    result.samples_used += part.samples_used;
    for (const Witness& w : part.witnesses) {
      result.add_failure({w.states, "N1 (" + part.name + "): " + w.note});
    }
  };
  if (rel.finite()) {
    std::vector<State> all = gamma;
    all.insert(all.end(), outside.begin(), outside.end());
    CheckResult a1;
    a1.name = kReflexivity;
    absorb(reflexivity_over(rel, all, a1));
    if (all.size() <= kTransitivityCap) {
      CheckResult a2;
      a2.name = kTransitivity;
      absorb(transitivity_exhaustive(rel, all, a2));
    }
  } else {
    Rng n1 = rng.fork("n1");
    CheckResult a1;
    a1.name = kReflexivity;
    absorb(reflexivity_over(rel, sampled_states(rel, options.samples, n1, true),
                            a1));
    CheckResult a2;
    a2.name = kTransitivity;
    absorb(transitivity_sampled(rel, options.samples, n1, true, a2));
    CheckResult a3;
    a3.name = kConsistency;
    absorb(consistency_sampled(rel, rel, rel, options.samples, n1, true, a3));
    if (rel.supports_scaling()) {
      CheckResult a6;
      a6.name = kStability;
      absorb(stability_sampled(rel, default_eps_sequence(), options.samples, n1,
                               true, a6));
    }
  }

  // N2: sandwich every nonequilibrium state between equilibrium states.
  std::int64_t unsandwiched = 0;
  for (const State& x : outside) {
    ++result.samples_used;
    bool below = false;
    bool above = false;
    for (const State& g : gamma) {
      below = below || precedes(rel, g, x);
      above = above || precedes(rel, x, g);
      if (below && above) break;
    }
    if (!below || !above) {
      ++unsandwiched;
      result.add_failure(
          {{CompositeState(x)},
           std::string("N2: no equilibrium state ") +
               (!below ? "below" : "above") + " the nonequilibrium state"});
    }
  }
  result.metrics["equilibrium_states"] = static_cast<double>(gamma.size());
  result.metrics["nonequilibrium_states"] = static_cast<double>(outside.size());
  result.metrics["unsandwiched"] = static_cast<double>(unsandwiched);
  return result;
}

CheckResult check_total_preorder(const CheckResult& reflexivity,
                                 const CheckResult& transitivity,
                                 const CheckResult& comparison) {
  CheckResult result;
  result.name = kTotalPreorder;
  result.samples_used = reflexivity.samples_used + transitivity.samples_used +
                        comparison.samples_used;
  for (const CheckResult* part : {&reflexivity, &transitivity, &comparison}) {
    if (part->status == CheckStatus::not_applicable) {
      return not_applicable(kTotalPreorder,
                            part->name + " was not applicable");
    }
    for (const Witness& w : part->witnesses) {
      result.add_failure({w.states, part->name + ": " + w.note});
    }
    if (part->failed() && part->witnesses.empty()) {
      result.add_failure({{}, part->name + " failed"});
    }
  }
  return result;
}

std::vector<CheckResult> run_axiom_suite(const AccessibilityRelation& rel,
                                         const SamplingOptions& options) {
  std::vector<CheckResult> out;
  out.push_back(check_reflexivity(rel, options));
  out.push_back(check_transitivity(rel, options));
  out.push_back(check_consistency(rel, rel, rel, options));
  out.push_back(check_scaling_invariance(rel, {0.5, 2.0, 3.0}, options));
  out.push_back(check_splitting(rel, 0.5, options));
  out.push_back(check_stability(rel, default_eps_sequence(), options));
  out.push_back(check_comparison(rel, options));
  out.push_back(check_n1_n2(rel, options));
  out.push_back(check_total_preorder(out[0], out[1], out[6]));
  return out;
}

// ---------------------------------------------------------------------------
// Mutants
// ---------------------------------------------------------------------------

namespace {

class MutantModel final : public ModelSystem {
 public:
  MutantModel(ModelPtr inner, Mutation mutation)
      : inner_(std::move(inner)), mutation_(mutation) {}

  const std::string& id() const override { return inner_->id(); }
  std::vector<StateSpace> spaces() const override { return inner_->spaces(); }
  double energy(const State& s) const override { return inner_->energy(s); }
  Composition composition(const State& s) const override {
    return inner_->composition(s);
  }
  bool is_normal() const override { return inner_->is_normal(); }
  std::optional<EnergyBounds> energy_bounds() const override {
    return inner_->energy_bounds();
  }
  bool supports_scaling() const override { return inner_->supports_scaling(); }
  State scale_state(const State& s, double t) const override {
    return inner_->scale_state(s, t);
  }
  double entropy_unit() const override { return inner_->entropy_unit(); }

  State sample_state(Rng& rng) const override {
    return inner_->sample_state(rng);
  }
  State sample_like(const State& like, Rng& rng) const override {
    return inner_->sample_like(like, rng);
  }
  State sample_same_region(const State& like, Rng& rng) const override {
    return inner_->sample_same_region(like, rng);
  }
  std::optional<State> sample_nonequilibrium(Rng& rng) const override {
    return inner_->sample_nonequilibrium(rng);
  }
  State equal_entropy_partner(const State& s, Rng& rng) const override {
    return inner_->equal_entropy_partner(s, rng);
  }
  State stable_equilibrium_like(const State& s) const override {
    return inner_->stable_equilibrium_like(s);
  }
  std::optional<State> equilibrium_with_entropy(const State& like,
                                                double entropy) const override {
    return inner_->equilibrium_with_entropy(like, entropy);
  }
  State raise_energy(const State& s, double delta) const override {
    return inner_->raise_energy(s, delta);
  }
  bool admits_process(double delta_s, double zero) const override {
    return inner_->admits_process(delta_s, zero);
  }

  double oracle_entropy(const State& s) const override {
    const double base = inner_->oracle_entropy(s);
    switch (mutation_) {
      case Mutation::break_scaling:
        // Enlarged copies order their states backwards.
        return s.space_id.scale > 1.0 ? -base : base;
      case Mutation::break_splitting:
        return s.space_id.scale * base;
      default:
        return base;
    }
  }

  double combine_entropies(std::span<const State> parts,
                           std::span<const double> entropies) const override {
    if (mutation_ == Mutation::composite_max && !entropies.empty()) {
      return *std::max_element(entropies.begin(), entropies.end());
    }
    return inner_->combine_entropies(parts, entropies);
  }

  bool entropy_order(double from, double to, double tol) const override {
    if (mutation_ == Mutation::strict_only_comparison) return from < to - tol;
    return inner_->entropy_order(from, to, tol);
  }

  double work_perturbation(Rng& rng) const override {
    if (mutation_ == Mutation::noisy_work) return 0.1 * rng.uniform_open_closed();
    return inner_->work_perturbation(rng);
  }

  double reservoir_temperature(const Reservoir& r) const override {
    const double t = inner_->reservoir_temperature(r);
    return mutation_ == Mutation::wrong_reservoir_temperature ? t + 10.0 : t;
  }

 private:
  ModelPtr inner_;
  Mutation mutation_;
};

}  // namespace

std::string to_string(Mutation mutation) {
  switch (mutation) {
    case Mutation::break_transitivity:
      return "break_transitivity";
    case Mutation::break_scaling:
      return "break_scaling";
    case Mutation::break_splitting:
      return "break_splitting";
    case Mutation::composite_max:
      return "composite_max";
    case Mutation::noisy_work:
      return "noisy_work";
    case Mutation::wrong_reservoir_temperature:
      return "wrong_reservoir_temperature";
    case Mutation::strict_only_comparison:
      return "strict_only_comparison";
  }
  return "unknown";
}

std::vector<Mutation> all_mutations() {
  return {Mutation::break_transitivity,
          Mutation::break_scaling,
          Mutation::break_splitting,
          Mutation::composite_max,
          Mutation::noisy_work,
          Mutation::wrong_reservoir_temperature,
          Mutation::strict_only_comparison};
}

Mutation mutation_from_string(const std::string& name) {
  for (Mutation m : all_mutations()) {
    if (to_string(m) == name) return m;
  }
  throw DomainError("unknown mutation '" + name + "'");
}

std::vector<std::string> targeted_checks(Mutation mutation) {
  switch (mutation) {
    case Mutation::break_transitivity:
      return {kTransitivity, kN1N2, kTotalPreorder};
    case Mutation::break_scaling:
      return {kScaling};
    case Mutation::break_splitting:
      return {kSplitting};
    case Mutation::composite_max:
      // max is monotone, so it cannot break consistency; the
      // defect shows wherever a composite must carry the sum.
      return {kSplitting, "zb.entropy_additivity"};
    case Mutation::noisy_work:
      return {"energy.path_independence"};
    case Mutation::wrong_reservoir_temperature:
      return {"zb.temperature_measurement", "zb.temperature_ratio",
              "zb.reservoir_independence", "zb.carnot_agreement"};
    case Mutation::strict_only_comparison:
      return {kReflexivity, kSplitting, kStability, kComparison, kN1N2,
              kTotalPreorder};
  }
  return {};
}

ModelPtr mutate_model(const ModelPtr& model, Mutation mutation) {
  if (!model) throw DomainError("mutate_model: null model");
  switch (mutation) {
    case Mutation::break_transitivity:
      throw CapabilityError(
          "induced relations are transitive by construction; "
          "break_transitivity applies to finite fixtures");
    case Mutation::break_scaling:
    case Mutation::break_splitting:
      if (!model->supports_scaling()) {
        throw CapabilityError("model '" + model->id() +
                              "' has no scaled copies to break");
      }
      break;
    default:
      break;
  }
  return std::make_shared<const MutantModel>(model, mutation);
}

FinitePreorderFixture mutate_fixture(const FinitePreorderFixture& fixture,
                                     Mutation mutation) {
  if (mutation != Mutation::break_transitivity) {
    throw CapabilityError("mutation '" + to_string(mutation) +
                          "' needs an entropy model, not a finite fixture");
  }
  const std::set<std::pair<std::int64_t, std::int64_t>> pairs(
      fixture.pairs.begin(), fixture.pairs.end());
  auto has = [&](std::int64_t a, std::int64_t b) {
    return pairs.count({a, b}) > 0;
  };
  for (const auto& [x, z] : fixture.pairs) {
    if (x == z || !has(z, x)) continue;
    for (std::int64_t y : fixture.states) {
      if (y == x || y == z) continue;
      if (has(x, y) && has(y, z)) {
        FinitePreorderFixture out = fixture;
        out.name = fixture.name + "~break_transitivity";
        out.pairs.erase(std::remove(out.pairs.begin(), out.pairs.end(),
                                    std::make_pair(x, z)),
                        out.pairs.end());
        return out;
      }
    }
  }
  throw CapabilityError("fixture '" + fixture.name +
                        "' has no equivalence class of three states");
}

}  // namespace axtherm
