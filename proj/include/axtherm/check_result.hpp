#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "axtherm/core_model.hpp"

namespace axtherm {

enum class CheckStatus { pass, fail, not_applicable };

std::string to_string(CheckStatus status);
CheckStatus check_status_from_string(const std::string& name);

/// A tuple of states demonstrating a violation, with a short note.
struct Witness {
  std::vector<CompositeState> states;
  std::string note;
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::vector<Witness> witnesses;
  std::int64_t samples_used = 0;
  double tolerance_used = 0.0;
  std::string message;
  std::map<std::string, double> metrics;

  bool passed() const { return status == CheckStatus::pass; }
  bool failed() const { return status == CheckStatus::fail; }

  /// Marks the result failed and records the witness.
  void add_failure(Witness witness);
};

CheckResult not_applicable(std::string name, std::string message);

/// Shared knobs of sampled checks.
struct SamplingOptions {
  int samples = 200;
  std::uint64_t seed = 0;
};

}  // namespace axtherm
