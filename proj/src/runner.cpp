#include "lienuc/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lienuc/catalog.hpp"
#include "lienuc/errors.hpp"
#include "lienuc/fourier.hpp"

#ifndef LIENUC_VERSION_STRING
#define LIENUC_VERSION_STRING "0.0.0"
#endif

namespace lienuc {

using nlohmann::json;

const char* library_version() { return LIENUC_VERSION_STRING; }

std::string to_string(Task task) {
  switch (task) {
    case Task::Criterion:
      return "criterion";
    case Task::Trace:
      return "trace";
    case Task::Spectrum:
      return "spectrum";
    case Task::Lidskii:
      return "lidskii";
    case Task::HeatTrace:
      return "heat-trace";
    case Task::CarlemanDemo:
      return "carleman-demo";
  }
  return "criterion";
}

namespace {

Task parse_task(const std::string& s) {
  for (Task t : {Task::Criterion, Task::Trace, Task::Spectrum, Task::Lidskii, Task::HeatTrace, Task::CarlemanDemo}) {
    if (to_string(t) == s) return t;
  }
  throw ConfigError("unknown task '" + s + "'; known: criterion trace spectrum lidskii heat-trace carleman-demo");
}

double get_number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(std::string("config key '") + key + "' must be finite");
  return d;
}

std::string get_string(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError(std::string("config key '") + key + "' must be true or false");
  return v.get<bool>();
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json eigen_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const Complex& z : v) a.push_back(json::array({z.real(), z.imag()}));
  return a;
}

json derived_json(const RunConfig& c) {
  CriterionQuery q{c.r, c.p1, c.p2};
  return json{{"p1_tilde", q.p1_tilde()},
              {"p2_tilde", q.p2_tilde()},
              {"q1", std::isinf(q.q1()) ? json("inf") : json(q.q1())},
              {"q1_tilde", q.q1_tilde()},
              {"s", 2.0 * c.r / (2.0 - c.r)}};
}

json empty_report(const RunConfig& c, const GroupId& group) {
  json rep;
  rep["schema"] = kReportSchema;
  rep["library_version"] = library_version();
  rep["task"] = to_string(c.task);
  rep["config"] = config_to_json(c);
  rep["derived"] = derived_json(c);
  rep["criterion_ref"] = nullptr;
  rep["group"] = json{{"name", group.name()}, {"dim", group.dim()}};
  rep["dual_table"] = nullptr;
  rep["terms"] = nullptr;
  rep["partial_sums"] = nullptr;
  rep["verdict"] = nullptr;
  rep["traces"] = nullptr;
  rep["eigenvalues"] = nullptr;
  rep["residuals"] = nullptr;
  rep["timings"] = nullptr;
  rep["warnings"] = json::array();
  return rep;
}

Symbol load_symbol(const RunConfig& c, const GroupId& group, double cutoff) {
  if (c.op == "file") {
    std::ifstream in(c.symbol_file);
    if (!in) throw ConfigError("cannot open symbol file '" + c.symbol_file + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError("symbol file is not valid JSON: " + std::string(e.what()));
    }
    Symbol s = symbol_from_json(j);
    if (!(s.group() == group)) throw ConfigError("symbol file is on " + s.group().name() + ", config asks for " + group.name());
    if (s.cutoff() < cutoff * (1.0 - 1e-12)) throw ConfigError("symbol file cutoff is below the requested cutoff");
    return s;
  }
  auto params = c.params;
  params["seed"] = static_cast<double>(c.seed);
  return make_catalog_entry(c.op, group, params, cutoff).symbol;
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

Schedule schedule_within(const Schedule& s, double cutoff) {
  Schedule out;
  for (double v : s) {
    if (v < cutoff * (1.0 - 1e-12)) out.push_back(v);
  }
  out.push_back(cutoff);
  return out;
}

RulePtr kernel_rule(const Symbol& sigma, double cutoff) {
  if (sigma.x_dependent()) return sigma.sample_rule();
  double max_level = 0.0;
  for (const auto& x : enumerate_dual(sigma.group(), cutoff)) max_level = std::max(max_level, x.level());
  return quadrature(sigma.group(), max_level);
}

RunResult run_criterion(const RunConfig& c, const GroupId& group, json rep) {
  CriterionQuery q{c.r, c.p1, c.p2};
  CriterionReport cr;
  if (c.criterion == "dim_sum") {
    cr = dim_sum_convergence(group, c.s, c.schedule);
  } else {
    const Symbol sigma = load_symbol(c, group, c.schedule.back());
    if (c.criterion == "auto") {
      cr = matching_criterion(sigma, q, c.schedule);
    } else if (c.criterion == "invariant_l2") {
      cr = criterion_invariant_l2(sigma, c.r, c.schedule);
    } else if (c.criterion == "invariant_lp") {
      cr = criterion_invariant_lp(sigma, q, c.schedule);
    } else if (c.criterion == "diagonal") {
      cr = criterion_diagonal(sigma, q, c.schedule);
    } else {
      cr = criterion_general(sigma, q, c.schedule);
    }
    if (c.nr_bound && cr.verdict() != Verdict::DivergenceDetected) {
      cr.nr_upper_bound = nr_upper_bound(sigma, q, c.schedule.back());
    }
  }
  const json cj = to_json(cr, c.table_limit);
  for (const char* key : {"criterion_ref", "dual_table", "terms", "partial_sums", "verdict"}) rep[key] = cj.at(key);
  rep["analysis"] = cj.at("analysis");
  rep["nr_upper_bound"] = cj.at("nr_upper_bound");
  RunResult out;
  out.csv = criterion_csv(cr);
  std::ostringstream os;
  os << "criterion " << cr.criterion << " on " << group.name() << ": " << to_string(cr.verdict()) << " (partial sum "
     << fmt(cr.total(), 8) << " at cutoff " << fmt(c.schedule.back(), 8) << ")";
  out.summary = os.str();
  out.report = std::move(rep);
  return out;
}

RunResult run_trace(const RunConfig& c, const GroupId& group, json rep) {
  const Symbol sigma = load_symbol(c, group, c.cutoff);
  RunResult out;
  json traces;
  try {
    traces["symbol"] = complex_json(trace_symbol(sigma, c.cutoff));
  } catch (const DivergenceRefused& e) {
    rep["refused"] = e.what();
    out.summary = std::string("trace refused: ") + e.what();
    out.report = std::move(rep);
    return out;
  }
  if (matching_criterion(sigma, CriterionQuery{}, schedule_up_to(c.cutoff)).verdict() == Verdict::Inconclusive) {
    rep["warnings"].push_back("r = 1 criterion inconclusive up to this cutoff; the trace may not converge");
  }
  const Complex ts(traces["symbol"]["re"].get<double>(), traces["symbol"]["im"].get<double>());
  const Complex tk = trace_kernel_diagonal(sigma, *kernel_rule(sigma, c.cutoff), c.cutoff);
  traces["kernel"] = complex_json(tk);
  json residuals{{"kernel", std::abs(ts - tk) / std::max(std::abs(ts), 1e-12)}};
  json study = json::array();
  for (double cut : schedule_within(c.schedule, c.cutoff)) {
    study.push_back(json{{"cutoff", cut}, {"trace", complex_json(trace_symbol(sigma, cut))}});
  }
  rep["trace_study"] = study;
  const TruncatedOperator op = assemble_matrix(sigma, c.cutoff);
  for (const auto& w : op.warnings) rep["warnings"].push_back(w);
  if (op.size() <= c.eig_budget) {
    EigenOptions eo;
    eo.max_dim = c.eig_budget;
    const EigsumTrace et = trace_eigsum(op, eo);
    traces["eigsum"] = complex_json(et.eigsum);
    traces["matrix"] = complex_json(et.matrix_trace);
    residuals["eigsum"] = std::abs(ts - et.eigsum) / std::max(std::abs(ts), 1e-12);
    rep["eigenvalues"] = eigen_json(et.eigenvalues);
    out.csv = eigenvalue_csv(et.eigenvalues);
  } else {
    traces["eigsum"] = nullptr;
    traces["matrix"] = complex_json(op.matrix.trace());
    rep["warnings"].push_back("finite section exceeds the eigenproblem budget; eigenvalue sum skipped");
  }
  rep["traces"] = traces;
  rep["residuals"] = residuals;
  out.summary = "trace of " + sigma.name() + " on " + group.name() + " at cutoff " + fmt(c.cutoff, 8) + ": " + fmt(ts);
  out.report = std::move(rep);
  return out;
}

RunResult run_spectrum(const RunConfig& c, const GroupId& group, json rep) {
  const Symbol sigma = load_symbol(c, group, c.cutoff);
  CriterionQuery q{c.r, c.p1, c.p2};
  const TruncatedOperator op = assemble_matrix(sigma, c.cutoff);
  for (const auto& w : op.warnings) rep["warnings"].push_back(w);
  EigenOptions eo;
  eo.max_dim = c.eig_budget;
  const EigsumTrace et = trace_eigsum(op, eo);
  rep["eigenvalues"] = eigen_json(et.eigenvalues);
  rep["traces"] = json{{"eigsum", complex_json(et.eigsum)}, {"matrix", complex_json(et.matrix_trace)}};
  json summ;
  try {
    const double nb = nr_upper_bound(sigma, q, c.cutoff);
    const Summability s = summability_check(et.eigenvalues, c.r, nb);
    summ = json{{"s", s.s}, {"value", s.value}, {"nr_upper_bound", nb}, {"bound", s.bound}, {"pass", s.pass}};
  } catch (const DivergenceRefused& e) {
    summ = json{{"refused", e.what()}};
  }
  rep["summability"] = summ;
  RunResult out;
  out.csv = eigenvalue_csv(et.eigenvalues);
  std::ostringstream os;
  os << "spectrum of " << sigma.name() << " on " << group.name() << ": " << et.eigenvalues.size()
     << " eigenvalues, sum " << fmt(et.eigsum);
  if (summ.contains("pass")) os << ", summability " << (summ["pass"].get<bool>() ? "holds" : "FAILS");
  out.summary = os.str();
  out.report = std::move(rep);
  return out;
}

RunResult run_lidskii(const RunConfig& c, const GroupId& group, json rep) {
  const Symbol sigma = load_symbol(c, group, c.cutoff);
  CriterionQuery q{c.r, c.p1, c.p2};
  EigenOptions eo;
  eo.max_dim = c.eig_budget;
  const SpectralReport sr = lidskii_verify(sigma, q, c.cutoff, eo);
  rep["hypothesis"] = json{{"accepted", sr.hypothesis.accepted}, {"regime", sr.hypothesis.regime}, {"reason", sr.hypothesis.reason}};
  rep["refused"] = sr.refused ? json(sr.refusal) : json(nullptr);
  RunResult out;
  if (sr.criterion) {
    const json cj = to_json(*sr.criterion, c.table_limit);
    rep["criterion_ref"] = cj.at("criterion_ref");
    rep["partial_sums"] = cj.at("partial_sums");
    rep["verdict"] = cj.at("verdict");
  }
  if (sr.refused) {
    out.summary = "lidskii refused: " + sr.refusal;
    out.report = std::move(rep);
    return out;
  }
  for (const auto& w : sr.warnings) rep["warnings"].push_back(w);
  rep["traces"] = json{{"symbol", complex_json(sr.trace_symbol)},
                       {"kernel", complex_json(sr.trace_kernel)},
                       {"eigsum", complex_json(sr.trace_eigsum)},
                       {"matrix", complex_json(sr.matrix_trace)}};
  rep["residuals"] = json{{"lidskii", sr.lidskii_residual}, {"kernel", sr.kernel_residual}};
  rep["eigenvalues"] = eigen_json(sr.eigenvalues);
  rep["s_exponent"] = sr.s_exponent;
  out.csv = eigenvalue_csv(sr.eigenvalues);
  std::ostringstream os;
  os.precision(3);
  os << "lidskii " << sigma.name() << " on " << group.name() << " (" << sr.hypothesis.regime << "): trace "
     << fmt(sr.trace_symbol) << ", eigenvalue sum " << fmt(sr.trace_eigsum) << ", residual " << std::scientific
     << sr.lidskii_residual;
  out.summary = os.str();
  out.report = std::move(rep);
  return out;
}

RunResult run_heat_trace(const RunConfig& c, const GroupId& group, json rep) {
  const double t = c.params.count("t") ? c.params.at("t") : 1.0;
  json study = json::array();
  std::ostringstream csv;
  csv << "cutoff,value,tail_bound,irreps\n";
  csv.precision(17);
  HeatTrace last;
  for (double cut : schedule_within(c.schedule, c.cutoff)) {
    last = heat_trace(group, t, cut);
    study.push_back(json{{"cutoff", cut}, {"value", last.value}, {"tail_bound", last.tail_bound}, {"irreps", last.irreps}});
    csv << cut << ',' << last.value << ',' << last.tail_bound << ',' << last.irreps << '\n';
  }
  rep["heat_trace"] = json{{"t", t}, {"cutoff", c.cutoff}, {"value", last.value}, {"tail_bound", last.tail_bound}, {"study", study}};
  rep["traces"] = json{{"symbol", complex_json(last.value)}};
  RunResult out;
  out.csv = csv.str();
  out.summary = "heat trace on " + group.name() + " at t = " + fmt(t) + ", cutoff " + fmt(c.cutoff, 8) + ": " +
                fmt(last.value) + " (tail <= " + fmt(last.tail_bound, 3) + ")";
  out.report = std::move(rep);
  return out;
}

RunResult run_carleman(const RunConfig& c, json rep) {
  std::vector<std::int64_t> ns = c.frequencies;
  if (ns.empty()) {
    for (int k = 6; k <= 20; ++k) ns.push_back(std::int64_t{1} << k);
  }
  json rows = json::array();
  std::ostringstream csv;
  csv << "N,l2_sum,power_sum_1.5,power_sum_1,sampled_sup,certified_sup\n";
  csv.precision(17);
  bool sup_ok = true;
  bool l2_ok = true;
  double l2_limit = 0.0;
  for (std::int64_t n : ns) {
    const CarlemanData d = carleman_coefficients(n);
    const double p15 = carleman_power_sum(n, 1.5);
    const double p1 = carleman_power_sum(n, 1.0);
    l2_limit = d.l2_limit;
    sup_ok = sup_ok && d.sampled_sup <= d.certified_sup;
    l2_ok = l2_ok && std::abs(d.l2_mass - d.l2_limit) <= 0.01 * d.l2_limit;
    rows.push_back(json{{"N", n}, {"l2_sum", d.l2_mass}, {"power_sum_1.5", p15}, {"power_sum_1", p1},
                        {"sampled_sup", d.sampled_sup}, {"certified_sup", d.certified_sup}});
    csv << n << ',' << d.l2_mass << ',' << p15 << ',' << p1 << ',' << d.sampled_sup << ',' << d.certified_sup << '\n';
  }
  const double growth = carleman_power_sum(ns.back(), 1.5) / carleman_power_sum(ns.front(), 1.5);
  const double top = std::sqrt(1.0 + 4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(ns.back()) *
                                         static_cast<double>(ns.back()));
  const CriterionReport cr = criterion_invariant_l2(carleman_symbol(top), 1.0, schedule_up_to(top));
  const json cj = to_json(cr, c.table_limit);
  for (const char* key : {"criterion_ref", "partial_sums", "verdict"}) rep[key] = cj.at(key);
  rep["analysis"] = cj.at("analysis");
  rep["carleman"] = json{{"rows", rows},
                         {"l2_limit", l2_limit},
                         {"power_growth_1.5", growth},
                         {"sup_below_certificate", sup_ok},
                         {"l2_within_1pct", l2_ok},
                         {"growth_above_10", growth > 10.0}};
  RunResult out;
  out.csv = csv.str();
  std::ostringstream os;
  os << "carleman-demo: sup " << (sup_ok ? "below" : "ABOVE") << " certificate, sum |c|^2 "
     << (l2_ok ? "within" : "outside") << " 1% of pi^4/90, sum |c|^1.5 grew x" << fmt(growth, 4) << ", criterion "
     << to_string(cr.verdict());
  out.summary = os.str();
  out.report = std::move(rep);
  return out;
}

}  // namespace

RunConfig validate_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "task", "group", "op", "symbol_file", "t", "alpha", "amplitude", "seed", "r", "p", "p1", "p2",
      "criterion", "s", "schedule", "cutoff", "lmax", "nr_bound", "frequencies", "output_dir", "report",
      "csv", "timings", "table_limit", "eig_budget"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  if (j.contains("task")) c.task = parse_task(get_string(j, "task"));
  if (j.contains("group")) {
    c.group = get_string(j, "group");
  } else if (c.task == Task::CarlemanDemo) {
    c.group = "t1";
  }
  GroupId group = GroupId::su2();
  try {
    group = GroupId::parse(c.group);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  // Canonical lower-case key ("su2", "t2"), as accepted on input.
  c.group = group.name();
  std::transform(c.group.begin(), c.group.end(), c.group.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (j.contains("op")) c.op = get_string(j, "op");
  if (j.contains("symbol_file")) {
    c.symbol_file = get_string(j, "symbol_file");
    if (!j.contains("op")) c.op = "file";
  }
  if (c.op == "file") {
    if (c.symbol_file.empty()) throw ConfigError("op 'file' needs symbol_file");
  } else {
    const auto names = catalog_names();
    if (std::find(names.begin(), names.end(), c.op) == names.end()) {
      std::ostringstream os;
      os << "unknown catalog entry '" << c.op << "'; known:";
      for (const auto& n : names) os << ' ' << n;
      throw ConfigError(os.str());
    }
  }
  for (const char* key : {"t", "alpha", "amplitude"}) {
    if (j.contains(key)) c.params[key] = get_number(j, key);
  }
  // Echo the catalog defaults so reports are self-describing.
  const std::map<std::string, std::map<std::string, double>> defaults = {
      {"heat", {{"t", 1.0}}},
      {"bessel", {{"alpha", 2.0}}},
      {"sublaplacian", {{"alpha", 5.0}}},
      {"separable-demo", {{"t", 1.0}, {"amplitude", 0.5}}}};
  if (const auto it = defaults.find(c.op); it != defaults.end()) {
    for (const auto& [k, v] : it->second) c.params.emplace(k, v);
  }
  if (c.task == Task::HeatTrace) c.params.emplace("t", 1.0);
  if (c.params.count("t") && !(c.params["t"] > 0.0)) throw ConfigError("t must be positive");
  if (j.contains("seed")) {
    const double s = get_number(j, "seed");
    if (s < 0.0 || s != std::floor(s) || s > 9.007199254740992e15) throw ConfigError("seed must be a nonnegative integer");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("r")) c.r = get_number(j, "r");
  if (j.contains("p")) c.p1 = c.p2 = get_number(j, "p");
  if (j.contains("p1")) c.p1 = get_number(j, "p1");
  if (j.contains("p2")) c.p2 = get_number(j, "p2");
  if (c.r > 1.0) {
    throw ConfigError("r = " + fmt(c.r) + " > 1: r-nuclear classes with r > 1 reduce to the null operator");
  }
  if (!(c.r > 0.0)) throw ConfigError("r must be positive");
  if (!(c.p1 >= 1.0) || !(c.p2 >= 1.0)) throw ConfigError("p1 and p2 must be >= 1");
  if (j.contains("criterion")) {
    c.criterion = get_string(j, "criterion");
    static const std::set<std::string> crits = {"auto", "invariant_l2", "invariant_lp", "diagonal", "general", "dim_sum"};
    if (!crits.count(c.criterion)) throw ConfigError("unknown criterion '" + c.criterion + "'");
  }
  if (j.contains("s")) c.s = get_number(j, "s");
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    if (!s.is_array() || s.empty()) throw ConfigError("schedule must be a non-empty array of cutoffs");
    c.schedule.clear();
    for (const auto& v : s) {
      if (!v.is_number()) throw ConfigError("schedule entries must be numbers");
      c.schedule.push_back(v.get<double>());
    }
  }
  for (std::size_t i = 0; i < c.schedule.size(); ++i) {
    if (!(c.schedule[i] >= 1.0) || !std::isfinite(c.schedule[i]) || (i > 0 && !(c.schedule[i] > c.schedule[i - 1]))) {
      throw ConfigError("schedule must be strictly increasing cutoffs >= 1");
    }
  }
  if (j.contains("cutoff") && j.contains("lmax")) throw ConfigError("give either cutoff or lmax, not both");
  if (j.contains("cutoff")) {
    c.cutoff = get_number(j, "cutoff");
  } else if (j.contains("lmax")) {
    c.cutoff = cutoff_for_level(group, get_number(j, "lmax"));
  } else if (c.task == Task::Criterion) {
    c.cutoff = c.schedule.back();
  }
  if (!(c.cutoff >= 1.0)) throw ConfigError("cutoff must be >= 1");
  if (c.task == Task::Criterion && c.cutoff > c.schedule.back() * (1.0 + 1e-12)) {
    c.schedule.push_back(c.cutoff);
  }
  if (j.contains("nr_bound")) c.nr_bound = get_bool(j, "nr_bound");
  if (j.contains("frequencies")) {
    for (const auto& v : j.at("frequencies")) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 2) throw ConfigError("frequencies must be integers >= 2");
      c.frequencies.push_back(v.get<std::int64_t>());
    }
  }
  if (c.task == Task::CarlemanDemo && !(group == GroupId::torus(1))) throw ConfigError("carleman-demo runs on T1");
  if (j.contains("output_dir")) c.output_dir = get_string(j, "output_dir");
  if (j.contains("report")) c.report = get_string(j, "report");
  if (j.contains("csv")) c.csv = get_bool(j, "csv");
  if (j.contains("timings")) c.timings = get_bool(j, "timings");
  if (j.contains("table_limit")) c.table_limit = static_cast<std::size_t>(get_number(j, "table_limit"));
  if (j.contains("eig_budget")) c.eig_budget = static_cast<long>(get_number(j, "eig_budget"));
  if (c.report.empty()) {
    c.report = to_string(c.task) + "_" + (c.task == Task::CarlemanDemo || c.task == Task::HeatTrace ? "" : c.op + "_") + c.group;
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["task"] = to_string(c.task);
  j["group"] = c.group;
  j["op"] = c.op;
  j["symbol_file"] = c.symbol_file;
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["params"] = params;
  j["seed"] = c.seed;
  j["r"] = c.r;
  j["p1"] = c.p1;
  j["p2"] = c.p2;
  j["criterion"] = c.criterion;
  j["s"] = c.s;
  j["schedule"] = c.schedule;
  j["cutoff"] = c.cutoff;
  j["nr_bound"] = c.nr_bound;
  j["frequencies"] = c.frequencies;
  j["output_dir"] = c.output_dir;
  j["report"] = c.report;
  j["csv"] = c.csv;
  j["timings"] = c.timings;
  j["table_limit"] = c.table_limit;
  j["eig_budget"] = c.eig_budget;
  return j;
}

json to_json(const CriterionReport& rep, std::size_t table_limit) {
  json j;
  j["criterion_ref"] = json{{"criterion", rep.criterion},
                            {"statement", rep.statement},
                            {"condition", rep.equivalence ? "necessary and sufficient" : "sufficient"},
                            {"branch", rep.branch}};
  json table = json::array();
  json terms = json::array();
  const std::size_t n = std::min(table_limit, rep.irreps.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Irrep& x = rep.irreps[k];
    table.push_back(json{{"label", label_to_json(x)}, {"dim", x.dim}, {"weight", x.weight}});
    terms.push_back(rep.terms[k]);
  }
  j["dual_table"] = json{{"size", rep.irreps.size()}, {"shown", n}, {"rows", table}};
  j["terms"] = terms;
  json ps = json::array();
  for (std::size_t i = 0; i < rep.schedule.size(); ++i) {
    ps.push_back(json{{"cutoff", rep.schedule[i]}, {"sum", rep.partial_sums[i]}});
  }
  j["partial_sums"] = ps;
  j["verdict"] = to_string(rep.verdict());
  json a;
  a["tail_increment_ratio"] = std::isnan(rep.analysis.tail_increment_ratio) ? json(nullptr) : json(rep.analysis.tail_increment_ratio);
  a["tail_exponent"] = rep.analysis.tail_exponent ? json(*rep.analysis.tail_exponent) : json(nullptr);
  if (rep.analysis.growth_fit) {
    const auto& f = *rep.analysis.growth_fit;
    a["growth_fit"] = json{{"model", f.model}, {"r2", f.r2}, {"scale", f.scale}, {"exponent", f.exponent}};
  } else {
    a["growth_fit"] = nullptr;
  }
  a["notes"] = rep.notes;
  j["analysis"] = a;
  j["nr_upper_bound"] = rep.nr_upper_bound ? json(*rep.nr_upper_bound) : json(nullptr);
  return j;
}

std::string criterion_csv(const CriterionReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "index,label,dim,weight,term,partial_sum\n";
  double s = 0.0;
  for (std::size_t k = 0; k < rep.irreps.size(); ++k) {
    s += rep.terms[k];
    std::string label = rep.irreps[k].label_string();
    if (label.find(',') != std::string::npos) label = "\"" + label + "\"";
    os << k << ',' << label << ',' << rep.irreps[k].dim << ',' << rep.irreps[k].weight << ',' << rep.terms[k] << ','
       << s << '\n';
  }
  return os.str();
}

std::string eigenvalue_csv(const std::vector<Complex>& eigs) {
  std::ostringstream os;
  os.precision(17);
  os << "index,re,im,modulus\n";
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    os << i << ',' << eigs[i].real() << ',' << eigs[i].imag() << ',' << std::abs(eigs[i]) << '\n';
  }
  return os.str();
}

RunResult execute(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const GroupId group = GroupId::parse(config.group);
  json rep = empty_report(config, group);
  RunResult out;
  switch (config.task) {
    case Task::Criterion:
      out = run_criterion(config, group, std::move(rep));
      break;
    case Task::Trace:
      out = run_trace(config, group, std::move(rep));
      break;
    case Task::Spectrum:
      out = run_spectrum(config, group, std::move(rep));
      break;
    case Task::Lidskii:
      out = run_lidskii(config, group, std::move(rep));
      break;
    case Task::HeatTrace:
      out = run_heat_trace(config, group, std::move(rep));
      break;
    case Task::CarlemanDemo:
      out = run_carleman(config, std::move(rep));
      break;
  }
  if (config.timings) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.report["timings"] = json{{"elapsed_seconds", secs}};
  }
  return out;
}

RunOutput run(const RunConfig& config) {
  RunOutput out;
  out.result = execute(config);
  std::filesystem::path dir = config.output_dir;
  if (const char* env = std::getenv("LIENUC_OUTPUT_DIR"); env != nullptr && *env != '\0') dir = env;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto report_path = dir / (config.report + ".json");
  {
    std::ofstream f(report_path);
    if (!f) throw ConfigError("cannot write '" + report_path.string() + "'");
    f << out.result.report.dump(2) << '\n';
  }
  out.report_path = report_path.string();
  if (config.csv && !out.result.csv.empty()) {
    const auto csv_path = dir / (config.report + ".csv");
    std::ofstream f(csv_path);
    if (!f) throw ConfigError("cannot write '" + csv_path.string() + "'");
    f << out.result.csv;
    out.csv_path = csv_path.string();
  }
  return out;
}

}  // namespace lienuc
