#include "axtherm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "axtherm/errors.hpp"

namespace axtherm {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(const SpaceId& id) {
  if (id.scale == 1.0) return id.root;
  return id.root + "@" + format_double(id.scale);
}

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::equilibrium:
      return "equilibrium";
    case StateKind::stable_equilibrium:
      return "stable_equilibrium";
    case StateKind::nonequilibrium:
      return "nonequilibrium";
  }
  return "unknown";
}

StateKind state_kind_from_string(const std::string& name) {
  if (name == "equilibrium") return StateKind::equilibrium;
  if (name == "stable_equilibrium") return StateKind::stable_equilibrium;
  if (name == "nonequilibrium") return StateKind::nonequilibrium;
  throw DomainError("unknown state kind '" + name + "'");
}

void validate(const State& state) {
  if (!std::isfinite(state.energy)) {
    throw DomainError("state energy is not finite");
  }
  if (state.kind == StateKind::stable_equilibrium &&
      !(state.separable && state.uncorrelated)) {
    throw DomainError(
        "a stable equilibrium state must be separable and uncorrelated");
  }
}

bool approx_equal(const State& a, const State& b, double tolerance) {
  if (!(a.space_id == b.space_id) || a.coords.size() != b.coords.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (std::abs(a.coords[i] - b.coords[i]) > tolerance) return false;
  }
  return true;
}

bool same_composition(const Composition& a, const Composition& b,
                      double relative_tolerance) {
  auto amount = [](const Composition& c, const std::string& tag) {
    auto it = c.find(tag);
    return it == c.end() ? 0.0 : it->second;
  };
  auto check = [&](const Composition& from, const Composition& other) {
    for (const auto& [tag, value] : from) {
      double w = amount(other, tag);
      double scale = std::max({std::abs(value), std::abs(w), 1e-300});
      if (std::abs(value - w) > relative_tolerance * scale) return false;
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

double CompositeState::energy() const {
  double total = 0.0;
  for (const State& s : parts) total += s.energy;
  return total;
}

bool CompositeState::separable() const {
  return std::all_of(parts.begin(), parts.end(),
                     [](const State& s) { return s.separable; });
}

bool CompositeState::separable_and_uncorrelated() const {
  return std::all_of(parts.begin(), parts.end(), [](const State& s) {
    return s.separable && s.uncorrelated;
  });
}

CompositeState compose_states(std::initializer_list<CompositeState> pieces) {
  return compose_states(std::span<const CompositeState>(pieces.begin(),
                                                        pieces.size()));
}

CompositeState compose_states(std::span<const CompositeState> pieces) {
  CompositeState out;
  for (const CompositeState& piece : pieces) {
    out.parts.insert(out.parts.end(), piece.parts.begin(), piece.parts.end());
  }
  return out;
}

bool approx_equal(const CompositeState& a, const CompositeState& b,
                  double tolerance) {
  if (a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (!approx_equal(a.parts[i], b.parts[i], tolerance)) return false;
  }
  return true;
}

StateSpace compose(std::span<const StateSpace> spaces) {
  if (spaces.empty()) throw DomainError("compose: empty list of spaces");
  StateSpace out;
  std::string root = "(";
  std::string tag;
  out.scalable = true;
  for (const StateSpace& space : spaces) {
    const std::vector<StateSpace> leaves =
        space.factors.empty() ? std::vector<StateSpace>{space} : space.factors;
    for (const StateSpace& leaf : leaves) {
      if (!out.factors.empty()) {
        root += ",";
        tag += "+";
      }
      root += to_string(leaf.id);
      tag += leaf.composition_tag;
      for (const std::string& name : leaf.coord_names) {
        out.coord_names.push_back(to_string(leaf.id) + "." + name);
      }
      out.scalable = out.scalable && leaf.scalable;
      out.factors.push_back(leaf);
    }
  }
  out.id = SpaceId{root + ")", 1.0};
  out.composition_tag = tag;
  return out;
}

StateSpace scale(const StateSpace& space, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("scale factor must be positive and finite");
  }
  if (!space.scalable) {
    throw CapabilityError("state space '" + to_string(space.id) +
                          "' does not admit scaled copies");
  }
  if (t == 1.0) return space;
  StateSpace out = space;
  out.parent_id = space.id;
  out.id.scale = space.id.scale * t;
  for (StateSpace& factor : out.factors) factor = scale(factor, t);
  return out;
}

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::weight:
      return "weight";
    case ProcessKind::weight_polygonal:
      return "weight_polygonal";
    case ProcessKind::standard_weight:
      return "standard_weight";
  }
  return "unknown";
}

void validate(const ProcessRecord& record) {
  if (record.sigma < 0.0) {
    throw DomainError("entropy generation must be non-negative");
  }
  if (record.reversible != (record.sigma == 0.0)) {
    throw DomainError("a process is reversible exactly when sigma = 0");
  }
}

CompositeState scale(const AccessibilityRelation& relation,
                     const CompositeState& state, double t) {
  CompositeState out;
  out.parts.reserve(state.parts.size());
  for (const State& part : state.parts) {
    out.parts.push_back(relation.scale(part, t));
  }
  return out;
}

std::string to_string(Accessibility a) {
  switch (a) {
    case Accessibility::forward:
      return "forward";
    case Accessibility::backward_only:
      return "backward_only";
    case Accessibility::both:
      return "both";
    case Accessibility::incomparable:
      return "incomparable";
  }
  return "unknown";
}

Accessibility accessible(const AccessibilityRelation& relation,
                         const CompositeState& x, const CompositeState& y) {
  const bool xy = relation.precedes(x, y);
  const bool yx = relation.precedes(y, x);
  if (xy && yx) return Accessibility::both;
  if (xy) return Accessibility::forward;
  if (yx) return Accessibility::backward_only;
  return Accessibility::incomparable;
}

}  // namespace axtherm
