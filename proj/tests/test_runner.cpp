#include <doctest.h>

#include "lienuc/errors.hpp"
#include "lienuc/parallel.hpp"
#include "lienuc/runner.hpp"

using namespace lienuc;
using nlohmann::json;

TEST_CASE("config defaults") {
  const RunConfig c = validate_config(json{{"task", "criterion"}, {"group", "su2"}, {"op", "heat"}});
  CHECK(c.task == Task::Criterion);
  CHECK(c.schedule == Schedule{2, 4, 8, 16});
  CHECK(c.r == 1.0);
  CHECK(c.p1 == 2.0);
  CHECK(c.p2 == 2.0);
  CHECK(c.params.at("t") == 1.0);
  const json j = config_to_json(c);
  CHECK(j.at("r") == 1.0);
}

TEST_CASE("config errors") {
  try {
    validate_config(json{{"task", "criterion"}, {"op", "heat"}, {"r", 1.2}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("null operator") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_config(json{{"task", "criterion"}, {"op", "warp"}}), ConfigError);
  CHECK_THROWS_AS(validate_config(json{{"task", "criterion"}, {"colour", "blue"}}), ConfigError);
  CHECK_THROWS_AS(validate_config(json{{"task", "criterion"}, {"r", "one"}}), ConfigError);
  CHECK_THROWS_AS(validate_config(json{{"task", "dance"}}), ConfigError);
}

TEST_CASE("config shorthands") {
  const RunConfig c = validate_config(json{{"task", "lidskii"}, {"p", 4}, {"lmax", 3}, {"op", "separable-demo"}});
  CHECK(c.p1 == 4.0);
  CHECK(c.p2 == 4.0);
  CHECK(c.cutoff == doctest::Approx(cutoff_for_level(GroupId::su2(), 3)));
  const RunConfig d = validate_config(json{{"task", "criterion"}, {"schedule", json::array({3, 9, 27})}});
  CHECK(d.cutoff == 27.0);
}

TEST_CASE("reports carry the documented keys") {
  const RunResult r = execute(validate_config(json{{"task", "lidskii"}, {"op", "separable-demo"}, {"r", 2.0 / 3.0}, {"p", 4}, {"lmax", 2}}));
  for (const char* k : {"schema", "library_version", "task", "config", "derived", "criterion_ref", "group", "dual_table", "terms",
                        "partial_sums", "verdict", "traces", "eigenvalues", "residuals", "timings", "warnings"}) {
    CHECK(r.report.contains(k));
  }
  CHECK(r.report["schema"] == kReportSchema);
  CHECK(r.report["timings"].is_null());
  CHECK(r.report["traces"].contains("eigsum"));
  CHECK(r.report["derived"]["s"] == doctest::Approx(1.0));
  CHECK(r.report["residuals"]["lidskii"].get<double>() < 1e-10);
}

TEST_CASE("criterion CSV columns") {
  const RunResult r = execute(validate_config(json{{"task", "criterion"}, {"op", "bessel"}, {"alpha", 4}, {"schedule", json::array({2, 8})}}));
  CHECK(r.csv.rfind("index,label,dim,weight,term,partial_sum\n", 0) == 0);
  CHECK(r.report["verdict"] == "ConvergedNumerically");
}

TEST_CASE("reports do not depend on the thread count") {
  const json cfg{{"task", "spectrum"}, {"op", "random-hermitian"}, {"seed", 5}, {"lmax", 3}};
  set_thread_count(1);
  const std::string a = execute(validate_config(cfg)).report.dump();
  set_thread_count(6);
  const std::string b = execute(validate_config(cfg)).report.dump();
  set_thread_count(1);
  CHECK(a == b);
}
