// Command-line front end. Flags (or keys of a --config TOML file) are turned
// into a flat JSON config and handed to the C API.
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lienuc/lienuc.h"

namespace {

int exit_code(lienuc_status s) {
  switch (s) {
    case LIENUC_OK:
      return 0;
    case LIENUC_ERR_CONFIG:
    case LIENUC_ERR_DOMAIN:
    case LIENUC_ERR_INVALID_ARGUMENT:
      return 2;
    default:
      return 3;
  }
}

int report_failure(lienuc_status s) {
  std::cerr << "lienuc: " << lienuc_status_name(s) << ": " << lienuc_last_error() << '\n';
  return exit_code(s);
}

std::string take(char* s) {
  std::string out = s != nullptr ? s : "";
  lienuc_string_free(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lienuc: nuclearity criteria, traces and spectra of operators on compact Lie groups"};
  app.set_config("--config", "", "TOML file whose keys mirror the long option names");
  app.require_subcommand(0, 1);

  int threads = 1;
  std::string task;
  std::string group, op, symbol_file, criterion, output_dir, report;
  double t = 0, alpha = 0, amplitude = 0, r = 0, p = 0, p1 = 0, p2 = 0, s = 0, cutoff = 0, lmax = 0;
  double seed = 0, table_limit = 0, eig_budget = 0;
  std::vector<double> schedule;
  std::vector<long long> frequencies;
  bool csv = false, timings = false, nr_bound = false;

  app.add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  auto* o_task = app.add_option("--task", task, "criterion, trace, spectrum, lidskii, heat-trace or carleman-demo");
  auto* o_group = app.add_option("--group", group, "su2, so3, t1, t2 or t3");
  auto* o_op = app.add_option("--op", op, "catalog entry, or 'file' with --symbol-file");
  auto* o_symbol = app.add_option("--symbol-file,--symbol_file", symbol_file, "symbol JSON file");
  auto* o_t = app.add_option("--t", t, "heat time");
  auto* o_alpha = app.add_option("--alpha", alpha, "order of the Bessel or sub-Laplacian power");
  auto* o_amp = app.add_option("--amplitude", amplitude, "cosine amplitude of separable-demo");
  auto* o_seed = app.add_option("--seed", seed, "seed for random-hermitian");
  auto* o_r = app.add_option("--r", r, "nuclearity order, 0 < r <= 1");
  auto* o_p = app.add_option("--p", p, "sets p1 = p2");
  auto* o_p1 = app.add_option("--p1", p1, "source L^p exponent");
  auto* o_p2 = app.add_option("--p2", p2, "target L^p exponent");
  auto* o_crit = app.add_option("--criterion", criterion, "auto, invariant_l2, invariant_lp, diagonal, general, dim_sum");
  auto* o_s = app.add_option("--s", s, "exponent for dim_sum");
  auto* o_sched = app.add_option("--schedule", schedule, "increasing cutoffs for partial sums")->delimiter(',');
  auto* o_cut = app.add_option("--cutoff", cutoff, "truncation cutoff on <xi>");
  auto* o_lmax = app.add_option("--lmax", lmax, "truncation by level (max spin, or max |k| on a torus)");
  auto* o_nr = app.add_flag("--nr-bound,--nr_bound", nr_bound, "also compute the explicit nuclear-norm bound");
  auto* o_freq = app.add_option("--frequencies", frequencies, "carleman-demo frequency budgets")->delimiter(',');
  auto* o_out = app.add_option("--output-dir,--output_dir", output_dir, "report directory (LIENUC_OUTPUT_DIR overrides)");
  auto* o_report = app.add_option("--report", report, "report file stem");
  auto* o_csv = app.add_flag("--csv", csv, "also write a CSV table");
  auto* o_tim = app.add_flag("--timings", timings, "record wall-clock timings (reports stop being reproducible)");
  auto* o_tl = app.add_option("--table-limit,--table_limit", table_limit, "max dual-table rows in the JSON report");
  auto* o_eb = app.add_option("--eig-budget,--eig_budget", eig_budget, "max matrix side for dense eigenproblems");

  std::vector<CLI::App*> task_cmds;
  for (const char* name : {"criterion", "trace", "spectrum", "lidskii", "heat-trace", "carleman-demo"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " task");
    sub->fallthrough();
    task_cmds.push_back(sub);
  }
  auto* cmd_catalog = app.add_subcommand("catalog", "list catalog operators");
  auto* cmd_validate = app.add_subcommand("validate", "print the normalized config");
  cmd_validate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  lienuc_set_threads(threads);

  if (*cmd_catalog) {
    char* out = nullptr;
    const lienuc_status st = lienuc_catalog_list(&out);
    if (st != LIENUC_OK) return report_failure(st);
    for (const auto& e : nlohmann::json::parse(take(out))) {
      std::cout << e["name"].get<std::string>() << "\t" << e["description"].get<std::string>() << '\n';
    }
    return 0;
  }

  nlohmann::json cfg = nlohmann::json::object();
  for (auto* sub : task_cmds) {
    if (*sub) cfg["task"] = sub->get_name();
  }
  if (*o_task) {
    if (cfg.contains("task") && cfg["task"] != task) {
      std::cerr << "lienuc: config error: task given twice ('" << cfg["task"].get<std::string>() << "' and '" << task
                << "')\n";
      return 2;
    }
    cfg["task"] = task;
  }
  auto put = [&](CLI::Option* o, const char* key, const auto& value) {
    if (o->count() > 0) cfg[key] = value;
  };
  put(o_group, "group", group);
  put(o_op, "op", op);
  put(o_symbol, "symbol_file", symbol_file);
  put(o_t, "t", t);
  put(o_alpha, "alpha", alpha);
  put(o_amp, "amplitude", amplitude);
  put(o_seed, "seed", seed);
  put(o_r, "r", r);
  put(o_p, "p", p);
  put(o_p1, "p1", p1);
  put(o_p2, "p2", p2);
  put(o_crit, "criterion", criterion);
  put(o_s, "s", s);
  put(o_sched, "schedule", schedule);
  put(o_cut, "cutoff", cutoff);
  put(o_lmax, "lmax", lmax);
  put(o_nr, "nr_bound", nr_bound);
  put(o_freq, "frequencies", frequencies);
  put(o_out, "output_dir", output_dir);
  put(o_report, "report", report);
  put(o_csv, "csv", csv);
  put(o_tim, "timings", timings);
  put(o_tl, "table_limit", table_limit);
  put(o_eb, "eig_budget", eig_budget);

  const std::string text = cfg.dump();
  if (*cmd_validate) {
    char* out = nullptr;
    const lienuc_status st = lienuc_validate_config(text.c_str(), &out);
    if (st != LIENUC_OK) return report_failure(st);
    std::cout << take(out) << '\n';
    return 0;
  }
  if (!cfg.contains("task")) {
    std::cerr << "lienuc: config error: no task given (use a subcommand or --task)\n" << app.help();
    return 2;
  }
  char* summary = nullptr;
  char* path = nullptr;
  const lienuc_status st = lienuc_run(text.c_str(), &summary, &path);
  if (st != LIENUC_OK) return report_failure(st);
  std::cout << take(summary) << '\n';
  std::cerr << "report: " << take(path) << '\n';
  return 0;
}
