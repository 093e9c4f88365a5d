#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lienuc/nuclearity.hpp"
#include "lienuc/spectral.hpp"

namespace lienuc {

inline constexpr const char* kReportSchema = "lienuc.report/1";
const char* library_version();

enum class Task { Criterion, Trace, Spectrum, Lidskii, HeatTrace, CarlemanDemo };
std::string to_string(Task task);

// One batch run. Every field has a flat config key of the same name.
struct RunConfig {
  Task task = Task::Criterion;
  std::string group = "su2";
  // Catalog name, or "file" together with symbol_file.
  std::string op = "heat";
  std::string symbol_file;
  std::map<std::string, double> params;  // t, alpha, amplitude
  std::uint64_t seed = 0;
  double r = 1.0;
  double p1 = 2.0;
  double p2 = 2.0;
  // "auto" picks the criterion matching the symbol kind; "dim_sum" uses s.
  std::string criterion = "auto";
  double s = 3.5;
  Schedule schedule{2.0, 4.0, 8.0, 16.0};
  // Truncation for trace/spectrum/lidskii/heat-trace; defaults to 4, or to
  // the schedule end for criterion runs.
  double cutoff = 4.0;
  bool nr_bound = false;
  std::vector<std::int64_t> frequencies;  // carleman-demo budgets
  std::string output_dir = ".";
  std::string report;  // file stem; derived from task/op/group when empty
  bool csv = false;
  bool timings = false;
  std::size_t table_limit = 2000;
  long eig_budget = 2000;
};

// Normalizes a flat JSON object: fills defaults (task "criterion" when
// absent), resolves "p" and "lmax", and rejects unknown keys, r > 1 and
// unknown catalog names (ConfigError).
RunConfig validate_config(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

nlohmann::json to_json(const CriterionReport& rep, std::size_t table_limit);
std::string criterion_csv(const CriterionReport& rep);
std::string eigenvalue_csv(const std::vector<Complex>& eigs);

struct RunResult {
  nlohmann::json report;
  std::string csv;
  std::string summary;
};

// Runs the task without touching the filesystem.
RunResult execute(const RunConfig& config);

struct RunOutput {
  RunResult result;
  std::string report_path;
  std::string csv_path;
};

// execute() plus report files under output_dir (LIENUC_OUTPUT_DIR overrides).
RunOutput run(const RunConfig& config);

}  // namespace lienuc
