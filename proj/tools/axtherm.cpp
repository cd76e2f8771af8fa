#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axtherm/errors.hpp"
#include "axtherm/report.hpp"

namespace fs = std::filesystem;
using namespace axtherm;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

constexpr const char* kConfigDirVariable = "AXTHERM_CONFIG_DIR";

const std::map<std::string, std::set<std::string>>& subcommand_suites() {
  static const std::map<std::string, std::set<std::string>> m{
      {"check-axioms", {"axioms"}},
      {"construct-ly", {"ly"}},
      {"construct-zb", {"zb"}},
      {"verify-theorems", {"energy", "theorems"}},
      {"caratheodory", {"caratheodory"}},
      {"mutants", {"mutants"}},
      {"all", {}},
  };
  return m;
}

std::optional<fs::path> config_dir() {
  const char* dir = std::getenv(kConfigDirVariable);
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return fs::path(dir);
}

SuiteConfig resolve_config(const std::string& given) {
  if (!given.empty()) {
    fs::path path(given);
    if (!fs::exists(path) && path.is_relative()) {
      if (auto dir = config_dir(); dir && fs::exists(*dir / path)) {
        path = *dir / path;
      }
    }
    return load_config(path);
  }
  if (auto dir = config_dir(); dir && fs::exists(*dir / "default.json")) {
    return load_config(*dir / "default.json");
  }
  return SuiteConfig{};
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + out + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("cannot write '" + out + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Executable checks for axiomatic thermodynamic entropy"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
  std::vector<std::string> tolerances;
  bool timing = false;

  for (const auto& [name, suites] : subcommand_suites()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path,
                    "Config file (falls back to $" +
                        std::string(kConfigDirVariable) + "/default.json)");
    sub->add_option("--seed", seed, "Seed overriding the config");
    sub->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out, "Output file (standard output by default)");
    sub->add_option("--tolerance", tolerances, "Override as name=value");
    sub->add_flag("--timing", timing, "Record wall time in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  SuiteConfig config;
  try {
    config = resolve_config(config_path);
    for (const std::string& t : tolerances) apply_tolerance_override(config, t);
    if (seed) config.seed = *seed;
    const auto& suites = subcommand_suites().at(command);
    if (!suites.empty()) config.suites = suites;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  Report report;
  try {
    const auto start = std::chrono::steady_clock::now();
    report = run(config);
    if (timing) {
      report.wall_time_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    write_output(emit(report, report_format_from_string(format)), out);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  return report.passed() ? kExitPass : kExitFail;
}
