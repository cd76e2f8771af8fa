#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "axtherm/axiom_suite.hpp"
#include "axtherm/check_result.hpp"
#include "axtherm/model_catalog.hpp"

namespace axtherm {

inline constexpr const char* kReportSchema = "report_v1";
inline constexpr const char* kVersion = "1.0.0";

enum class ModelKind { ideal_gas, two_level_spin, fixture };

struct ModelSpec {
  ModelKind kind = ModelKind::ideal_gas;
  IdealGasParams gas;
  TwoLevelSpinParams spin;
  std::optional<std::filesystem::path> fixture_path;  // as written
  std::optional<FinitePreorderFixture> fixture;       // resolved
};

/// Every suite name a config may select, in execution order.
const std::vector<std::string>& suite_names();

struct SuiteConfig {
  ModelSpec model;
  std::set<std::string> suites;  // empty means all
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::map<std::string, int> samples;
  std::optional<Mutation> mutation;

  bool selected(const std::string& suite) const;
  double tolerance(const std::string& name) const;
  int sample_count(const std::string& name) const;
};

/// Defaults of the recognised overrides.
const std::map<std::string, double>& default_tolerances();
const std::map<std::string, int>& default_samples();

/// Throws ParseError with line/column for malformed JSON and with the
/// field path for schema violations. Relative fixture paths resolve
/// against `base_dir`.
SuiteConfig parse_config(const std::string& text,
                         const std::filesystem::path& base_dir = {});
SuiteConfig load_config(const std::filesystem::path& path);

/// Validates and applies "name=value"; ParseError for unknown names or
/// non-positive values.
void apply_tolerance_override(SuiteConfig& config, const std::string& spec);

struct FitSummary {
  std::string name;
  double a = 1.0;
  double b = 0.0;
  double max_residual = 0.0;
  friend bool operator==(const FitSummary&, const FitSummary&) = default;
};

struct TableSummary {
  std::string name;
  std::string space;
  std::int64_t size = 0;
  std::int64_t applicable = 0;
  friend bool operator==(const TableSummary&, const TableSummary&) = default;
};

struct Report {
  std::string schema = kReportSchema;
  std::string version = kVersion;
  std::uint64_t seed = 0;
  std::string config_json;  // canonical echo of the effective config
  std::vector<CheckResult> checks;
  std::vector<TableSummary> tables;
  std::vector<FitSummary> fits;
  std::optional<double> wall_time_seconds;

  /// No mandatory check failed.
  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

std::string config_to_json(const SuiteConfig& config);

/// Executes the selected suites in dependency order.
Report run(const SuiteConfig& config);

/// The mutation matrix: every mutant against its battery. One result per
/// mutation, passing when exactly the targeted checks fail.
std::vector<CheckResult> run_mutation_matrix(const SuiteConfig& config);

/// Names of the checks of one battery run that failed.
std::set<std::string> failing_checks(const std::vector<CheckResult>& results);

/// Battery used by the mutation matrix on an entropy model.
std::vector<CheckResult> mutation_battery(const ModelPtr& model,
                                          const IdealGasModel* gas,
                                          const SuiteConfig& config);

enum class ReportFormat { json, csv, text };

ReportFormat report_format_from_string(const std::string& name);
std::string emit(const Report& report, ReportFormat format);
Report report_from_json(const std::string& text);

bool operator==(const Report& a, const Report& b);

}  // namespace axtherm
