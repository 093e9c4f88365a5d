// Exercises the shared library through its C header only.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "lienuc/lienuc.h"

namespace {

int failures = 0;

void check(bool ok, const char* what) {
  if (!ok) {
    ++failures;
    std::printf("FAILED: %s (last error: %s)\n", what, lienuc_last_error());
  }
}

}  // namespace

int main() {
  check(std::strcmp(lienuc_version(), "0.3.0") == 0, "version");
  check(std::strcmp(lienuc_status_name(LIENUC_ERR_REFUSED), "refused") == 0, "status name");

  lienuc_group* bad = nullptr;
  check(lienuc_group_create("su7", &bad) == LIENUC_ERR_DOMAIN, "unknown group is a domain error");
  check(std::strlen(lienuc_last_error()) > 0, "error message recorded");
  check(lienuc_group_create(nullptr, &bad) == LIENUC_ERR_INVALID_ARGUMENT, "null name");

  lienuc_group* su2 = nullptr;
  check(lienuc_group_create("su2", &su2) == LIENUC_OK, "create su2");
  int dim = 0;
  lienuc_group_dim(su2, &dim);
  check(dim == 3, "dim");
  size_t n = 0;
  check(lienuc_dual_size(su2, std::sqrt(1 + 5.0 * 6.0) + 1e-9, &n) == LIENUC_OK && n == 11, "dual size");

  double value = 0, tail = 0;
  check(lienuc_heat_trace(su2, 1.0, std::sqrt(1 + 3.5 * 4.5) + 1e-9, &value, &tail) == LIENUC_OK, "heat trace");
  check(std::abs(value - 4.5517514202) < 1e-9, "heat trace value");

  lienuc_symbol* heat = nullptr;
  check(lienuc_symbol_catalog(su2, "heat", "{\"t\": 1}", 16.0, &heat) == LIENUC_OK, "heat symbol");
  lienuc_symbol* none = nullptr;
  check(lienuc_symbol_catalog(su2, "heat", "{\"t\": \"x\"}", 16.0, &none) == LIENUC_ERR_CONFIG, "bad params");
  check(lienuc_symbol_catalog(su2, "warp", nullptr, 16.0, &none) == LIENUC_ERR_CONFIG, "unknown catalog name");

  const double sched[] = {2, 4, 8, 16};
  int verdict = -1;
  double sum = 0;
  check(lienuc_criterion_verdict(heat, 1, 2, 2, sched, 4, &verdict, &sum) == LIENUC_OK && verdict == 0, "heat converges");
  check(lienuc_criterion_verdict(heat, 1.5, 2, 2, sched, 4, &verdict, &sum) == LIENUC_ERR_DOMAIN, "r > 1 rejected");
  char* report = nullptr;
  check(lienuc_criterion(heat, 1, 2, 2, sched, 4, &report) == LIENUC_OK, "criterion report");
  check(report != nullptr && std::string(report).find("ConvergedNumerically") != std::string::npos, "report verdict");
  lienuc_string_free(report);

  char* js = nullptr;
  check(lienuc_symbol_to_json(heat, &js) == LIENUC_OK, "symbol to json");
  lienuc_symbol* copy = nullptr;
  check(lienuc_symbol_from_json(js, &copy) == LIENUC_OK, "symbol from json");
  lienuc_string_free(js);
  double re = 0, im = 0, re2 = 0;
  lienuc_trace_symbol(heat, 4.0, &re, &im);
  lienuc_trace_symbol(copy, 4.0, &re2, &im);
  check(re == re2, "json round trip keeps the trace");
  lienuc_symbol_destroy(copy);

  lienuc_operator* op = nullptr;
  check(lienuc_operator_assemble(heat, std::sqrt(1 + 2.0) + 1e-9, &op) == LIENUC_OK, "assemble");
  size_t size = 0, count = 0;
  lienuc_operator_size(op, &size);
  check(size == 14, "operator size");
  double er[14], ei[14];
  check(lienuc_operator_eigenvalues(op, er, ei, 14, &count) == LIENUC_OK && count == 14, "eigenvalues");
  check(std::abs(er[0] - 1.0) < 1e-14 && std::abs(er[13] - std::exp(-2.0)) < 1e-14, "eigenvalue values");
  lienuc_operator_destroy(op);

  lienuc_group* t1 = nullptr;
  lienuc_group_create("t1", &t1);
  lienuc_symbol* id = nullptr;
  lienuc_symbol_catalog(t1, "identity", nullptr, 4096.0, &id);
  double nb = 0;
  check(lienuc_nr_upper_bound(id, 1, 2, 2, 4096.0, &nb) == LIENUC_ERR_REFUSED, "divergent bound refused");
  lienuc_symbol_destroy(id);
  lienuc_group_destroy(t1);

  char* norm = nullptr;
  check(lienuc_validate_config("{\"group\":\"su2\",\"op\":\"heat\"}", &norm) == LIENUC_OK, "validate");
  lienuc_string_free(norm);
  check(lienuc_validate_config("{\"r\": 1.2}", &norm) == LIENUC_ERR_CONFIG, "r = 1.2 rejected");
  check(lienuc_validate_config("{not json", &norm) == LIENUC_ERR_CONFIG, "malformed JSON");

  lienuc_set_threads(4);
  check(lienuc_get_threads() == 4, "threads");

  lienuc_symbol_destroy(heat);
  lienuc_group_destroy(su2);
  std::printf("%d failures\n", failures);
  return failures == 0 ? 0 : 1;
}
