#include <algorithm>

#include "axtherm/axiom_suite.hpp"
#include "axtherm/errors.hpp"
#include "axtherm/model_catalog.hpp"
#include "doctest.h"

using namespace axtherm;
using namespace axtherm::check_names;

namespace {

FiniteRelation finite(std::vector<std::int64_t> states,
                      std::vector<std::pair<std::int64_t, std::int64_t>> pairs,
                      std::optional<std::vector<std::int64_t>> eq = {}) {
  FinitePreorderFixture f;
  f.states = std::move(states);
  f.pairs = std::move(pairs);
  f.equilibrium = std::move(eq);
  return FiniteRelation(f);
}

std::vector<std::pair<std::int64_t, std::int64_t>> with_diagonal(
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs,
    std::initializer_list<std::int64_t> states) {
  for (auto s : states) pairs.emplace_back(s, s);
  return pairs;
}

// Composite comparisons answer "no" unless the composites coincide.
class BrokenComposition final : public AccessibilityRelation {
 public:
  explicit BrokenComposition(const AccessibilityRelation& inner) : inner_(inner) {}
  bool precedes(const CompositeState& x, const CompositeState& y) const override {
    if (x.size() > 1) return approx_equal(x, y);
    return inner_.precedes(x, y);
  }
  bool finite() const override { return false; }
  std::vector<State> universe() const override { return {}; }
  State sample(Rng& rng) const override { return inner_.sample(rng); }
  State sample_partner(const State& s, Rng& rng) const override {
    return inner_.sample_partner(s, rng);
  }
  std::optional<State> sample_nonequilibrium(Rng& rng) const override {
    return inner_.sample_nonequilibrium(rng);
  }
  bool supports_scaling() const override { return inner_.supports_scaling(); }
  State scale(const State& s, double t) const override { return inner_.scale(s, t); }
  double tolerance() const override { return inner_.tolerance(); }
  std::string describe() const override { return "broken composition"; }

 private:
  const AccessibilityRelation& inner_;
};

}  // namespace

TEST_CASE("reflexivity") {
  InducedRelation gas(ideal_gas());
  CHECK(check_reflexivity(gas).passed());

  const FiniteRelation missing = finite({1, 2}, {{2, 2}, {1, 2}});
  const CheckResult r = check_reflexivity(missing);
  CHECK(r.failed());
  REQUIRE(r.witnesses.size() == 1);
  CHECK(missing.label_of(r.witnesses[0].states[0].parts[0]) == 1);

  CHECK(check_reflexivity(finite({}, {})).passed());
}

TEST_CASE("transitivity") {
  CHECK(check_transitivity(finite({1, 2, 3},
                                  with_diagonal({{1, 2}, {2, 3}, {1, 3}}, {1, 2, 3})))
            .passed());
  const FiniteRelation broken =
      finite({1, 2, 3}, with_diagonal({{1, 2}, {2, 3}}, {1, 2, 3}));
  const CheckResult r = check_transitivity(broken);
  CHECK(r.failed());
  REQUIRE_FALSE(r.witnesses.empty());
  const auto& w = r.witnesses[0].states;
  REQUIRE(w.size() == 3);
  CHECK(broken.label_of(w[0].parts[0]) == 1);
  CHECK(broken.label_of(w[1].parts[0]) == 2);
  CHECK(broken.label_of(w[2].parts[0]) == 3);

  InducedRelation gas(ideal_gas());
  const CheckResult sampled = check_transitivity(gas, {500, 4});
  CHECK(sampled.passed());
  CHECK(sampled.samples_used == 500);
}

TEST_CASE("consistency") {
  InducedRelation gas(ideal_gas());
  CHECK(check_consistency(gas, gas, gas).passed());
  BrokenComposition broken(gas);
  CHECK(check_consistency(gas, gas, broken).failed());
  CHECK(check_consistency(finite({1}, {{1, 1}}), finite({1}, {{1, 1}}),
                          finite({1}, {{1, 1}}))
            .status == CheckStatus::not_applicable);
}

TEST_CASE("scaling invariance") {
  InducedRelation gas(ideal_gas());
  CHECK(check_scaling_invariance(gas, {0.5, 2.0, 3.0}, {100, 1}).passed());
  CHECK(check_scaling_invariance(gas, {1.0}).passed());
  InducedRelation spin(two_level_spin());
  CHECK(check_scaling_invariance(spin, {2.0}).status ==
        CheckStatus::not_applicable);
  InducedRelation reversed(mutate_model(ideal_gas(), Mutation::break_scaling));
  CHECK(check_scaling_invariance(reversed, {2.0}).failed());
}

TEST_CASE("splitting") {
  InducedRelation gas(ideal_gas());
  CHECK(check_splitting(gas, 0.5).passed());
  CHECK(check_splitting(gas, 0.01).passed());
  CHECK_THROWS_AS(check_splitting(gas, 1.0), DomainError);
  InducedRelation squared(mutate_model(ideal_gas(), Mutation::break_splitting));
  CHECK(check_splitting(squared, 0.5).failed());
}

TEST_CASE("stability") {
  InducedRelation gas(ideal_gas());
  const CheckResult r = check_stability(gas, default_eps_sequence());
  CHECK(r.passed());
  CHECK(r.tolerance_used == doctest::Approx(std::ldexp(1.0, -20)));
  InducedRelation strict(mutate_model(ideal_gas(), Mutation::strict_only_comparison));
  const CheckResult s = check_stability(strict, default_eps_sequence());
  CHECK(s.failed());
}

TEST_CASE("comparison") {
  InducedRelation gas(ideal_gas());
  CHECK(check_comparison(gas).passed());
  const FiniteRelation split =
      finite({1, 2, 3, 4}, with_diagonal({{1, 2}, {3, 4}}, {1, 2, 3, 4}));
  CHECK(check_comparison(split).failed());
  CHECK(check_comparison(finite({1}, {{1, 1}})).passed());
}

TEST_CASE("N1 and N2") {
  InducedRelation gas(ideal_gas());
  CHECK(check_n1_n2(gas).passed());

  // State 0 is above every equilibrium state: no upper sandwich.
  const FiniteRelation above = finite(
      {0, 1, 2},
      with_diagonal({{1, 2}, {2, 1}, {1, 0}, {2, 0}}, {0, 1, 2}),
      std::vector<std::int64_t>{1, 2});
  CHECK(check_n1_n2(above).failed());

  const FiniteRelation all_eq =
      finite({1, 2}, with_diagonal({{1, 2}}, {1, 2}));
  CHECK(check_n1_n2(all_eq).passed());
}

TEST_CASE("total preorder combines its parts") {
  CheckResult ok;
  CheckResult bad;
  bad.status = CheckStatus::fail;
  CHECK(check_total_preorder(ok, ok, ok).passed());
  CHECK(check_total_preorder(ok, bad, ok).failed());
}

TEST_CASE("full suite on catalog models") {
  for (const ModelPtr& m : {ModelPtr(ideal_gas()), ModelPtr(two_level_spin())}) {
    InducedRelation rel(m);
    for (const CheckResult& r : run_axiom_suite(rel, {200, 17})) {
      INFO(m->id() << " " << r.name);
      CHECK_FALSE(r.failed());
    }
  }
  FiniteRelation spins(spin_discrete_fixture(20));
  for (const CheckResult& r : run_axiom_suite(spins)) {
    INFO(r.name);
    CHECK_FALSE(r.failed());
  }
}

TEST_CASE("mutation bookkeeping") {
  CHECK(all_mutations().size() == 7);
  for (Mutation m : all_mutations()) {
    CHECK(mutation_from_string(to_string(m)) == m);
    CHECK_FALSE(targeted_checks(m).empty());
  }
  CHECK_THROWS_AS(mutation_from_string("nope"), DomainError);
  CHECK_THROWS_AS(mutate_model(ideal_gas(), Mutation::break_transitivity),
                  CapabilityError);
  CHECK_THROWS_AS(mutate_model(two_level_spin(), Mutation::break_scaling),
                  CapabilityError);
}

TEST_CASE("fixture transitivity mutant drops exactly one pair") {
  FinitePreorderFixture f;
  f.states = {1, 2, 3};
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) f.pairs.emplace_back(a, b);
  const FinitePreorderFixture m = mutate_fixture(f, Mutation::break_transitivity);
  CHECK(m.pairs.size() == f.pairs.size() - 1);
  CHECK(check_transitivity(FiniteRelation(m)).failed());
  CHECK(check_reflexivity(FiniteRelation(m)).passed());

  FinitePreorderFixture chain;
  chain.states = {1, 2};
  chain.pairs = {{1, 1}, {2, 2}, {1, 2}};
  CHECK_THROWS_AS(mutate_fixture(chain, Mutation::break_transitivity),
                  CapabilityError);
  CHECK_THROWS_AS(mutate_fixture(f, Mutation::break_scaling), CapabilityError);
}
