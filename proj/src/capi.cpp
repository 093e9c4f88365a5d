#include "lienuc/lienuc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "lienuc/catalog.hpp"
#include "lienuc/errors.hpp"
#include "lienuc/parallel.hpp"
#include "lienuc/runner.hpp"
#include "lienuc/spectral.hpp"

struct lienuc_group {
  lienuc::GroupId id;
};

struct lienuc_symbol {
  lienuc::Symbol sym;
};

struct lienuc_operator {
  lienuc::TruncatedOperator op;
};

namespace {

thread_local std::string g_last_error;

lienuc_status fail(lienuc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
lienuc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return LIENUC_OK;
  } catch (const lienuc::ConfigError& e) {
    return fail(LIENUC_ERR_CONFIG, e.what());
  } catch (const lienuc::DomainError& e) {
    return fail(LIENUC_ERR_DOMAIN, e.what());
  } catch (const lienuc::NumericError& e) {
    std::string msg = e.what();
    if (e.node()) msg += " [node " + std::to_string(*e.node()) + "]";
    return fail(LIENUC_ERR_NUMERIC, msg);
  } catch (const lienuc::CapabilityError& e) {
    return fail(LIENUC_ERR_CAPABILITY, e.what());
  } catch (const lienuc::DivergenceRefused& e) {
    return fail(LIENUC_ERR_REFUSED, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LIENUC_ERR_CONFIG, std::string("JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(LIENUC_ERR_CAPABILITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(LIENUC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LIENUC_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lienuc::Schedule to_schedule(const double* schedule, size_t n) { return lienuc::Schedule(schedule, schedule + n); }

}  // namespace

#define LIENUC_CHECK_ARG(cond, msg) \
  do {                              \
    if (!(cond)) return fail(LIENUC_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

extern "C" {

const char* lienuc_version(void) { return lienuc::library_version(); }

const char* lienuc_status_name(lienuc_status status) {
  switch (status) {
    case LIENUC_OK:
      return "ok";
    case LIENUC_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case LIENUC_ERR_DOMAIN:
      return "domain error";
    case LIENUC_ERR_NUMERIC:
      return "numeric error";
    case LIENUC_ERR_CAPABILITY:
      return "capability error";
    case LIENUC_ERR_CONFIG:
      return "config error";
    case LIENUC_ERR_REFUSED:
      return "refused";
    case LIENUC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* lienuc_last_error(void) { return g_last_error.c_str(); }

void lienuc_string_free(char* s) { std::free(s); }

void lienuc_set_threads(int n) { lienuc::set_thread_count(n); }

int lienuc_get_threads(void) { return lienuc::thread_count(); }

lienuc_status lienuc_group_create(const char* name, lienuc_group** out) {
  LIENUC_CHECK_ARG(name != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new lienuc_group{lienuc::GroupId::parse(name)}; });
}

void lienuc_group_destroy(lienuc_group* g) { delete g; }

lienuc_status lienuc_group_dim(const lienuc_group* g, int* out) {
  LIENUC_CHECK_ARG(g != nullptr && out != nullptr, "null argument");
  *out = g->id.dim();
  return LIENUC_OK;
}

lienuc_status lienuc_dual_size(const lienuc_group* g, double cutoff, size_t* out) {
  LIENUC_CHECK_ARG(g != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = lienuc::enumerate_dual(g->id, cutoff).size(); });
}

lienuc_status lienuc_catalog_list(char** json_out) {
  LIENUC_CHECK_ARG(json_out != nullptr, "null argument");
  return guarded([&] {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& n : lienuc::catalog_names()) {
      j.push_back(nlohmann::json{{"name", n}, {"description", lienuc::catalog_description(n)}});
    }
    *json_out = dup_string(j.dump());
  });
}

lienuc_status lienuc_symbol_catalog(const lienuc_group* g, const char* name, const char* params_json, double cutoff,
                                    lienuc_symbol** out) {
  LIENUC_CHECK_ARG(g != nullptr && name != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    std::map<std::string, double> params;
    if (params_json != nullptr && *params_json != '\0') {
      const auto j = nlohmann::json::parse(params_json);
      if (!j.is_object()) throw lienuc::ConfigError("catalog parameters must be a JSON object");
      for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) throw lienuc::ConfigError("catalog parameter '" + k + "' must be a number");
        params[k] = v.get<double>();
      }
    }
    *out = new lienuc_symbol{lienuc::make_catalog_entry(name, g->id, params, cutoff).symbol};
  });
}

lienuc_status lienuc_symbol_from_json(const char* json, lienuc_symbol** out) {
  LIENUC_CHECK_ARG(json != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new lienuc_symbol{lienuc::symbol_from_json(nlohmann::json::parse(json))}; });
}

lienuc_status lienuc_symbol_to_json(const lienuc_symbol* s, char** json_out) {
  LIENUC_CHECK_ARG(s != nullptr && json_out != nullptr, "null argument");
  return guarded([&] { *json_out = dup_string(lienuc::to_json(s->sym).dump()); });
}

void lienuc_symbol_destroy(lienuc_symbol* s) { delete s; }

lienuc_status lienuc_criterion(const lienuc_symbol* s, double r, double p1, double p2, const double* schedule,
                               size_t schedule_len, char** report_json) {
  LIENUC_CHECK_ARG(s != nullptr && report_json != nullptr, "null argument");
  LIENUC_CHECK_ARG(schedule != nullptr && schedule_len > 0, "schedule must be a non-empty array");
  return guarded([&] {
    const auto rep = lienuc::matching_criterion(s->sym, lienuc::CriterionQuery{r, p1, p2}, to_schedule(schedule, schedule_len));
    *report_json = dup_string(lienuc::to_json(rep, rep.irreps.size()).dump());
  });
}

lienuc_status lienuc_criterion_verdict(const lienuc_symbol* s, double r, double p1, double p2, const double* schedule,
                                       size_t schedule_len, int* verdict, double* partial_sum) {
  LIENUC_CHECK_ARG(s != nullptr && verdict != nullptr, "null argument");
  LIENUC_CHECK_ARG(schedule != nullptr && schedule_len > 0, "schedule must be a non-empty array");
  return guarded([&] {
    const auto rep = lienuc::matching_criterion(s->sym, lienuc::CriterionQuery{r, p1, p2}, to_schedule(schedule, schedule_len));
    *verdict = static_cast<int>(rep.verdict());
    if (partial_sum != nullptr) *partial_sum = rep.total();
  });
}

lienuc_status lienuc_nr_upper_bound(const lienuc_symbol* s, double r, double p1, double p2, double cutoff, double* out) {
  LIENUC_CHECK_ARG(s != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = lienuc::nr_upper_bound(s->sym, lienuc::CriterionQuery{r, p1, p2}, cutoff); });
}

lienuc_status lienuc_trace_symbol(const lienuc_symbol* s, double cutoff, double* re, double* im) {
  LIENUC_CHECK_ARG(s != nullptr && re != nullptr && im != nullptr, "null argument");
  return guarded([&] {
    const lienuc::Complex t = lienuc::trace_symbol(s->sym, cutoff);
    *re = t.real();
    *im = t.imag();
  });
}

lienuc_status lienuc_heat_trace(const lienuc_group* g, double t, double cutoff, double* value, double* tail_bound) {
  LIENUC_CHECK_ARG(g != nullptr && value != nullptr, "null argument");
  return guarded([&] {
    const auto h = lienuc::heat_trace(g->id, t, cutoff);
    *value = h.value;
    if (tail_bound != nullptr) *tail_bound = h.tail_bound;
  });
}

lienuc_status lienuc_operator_assemble(const lienuc_symbol* s, double cutoff, lienuc_operator** out) {
  LIENUC_CHECK_ARG(s != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new lienuc_operator{lienuc::assemble_matrix(s->sym, cutoff)}; });
}

lienuc_status lienuc_operator_size(const lienuc_operator* op, size_t* out) {
  LIENUC_CHECK_ARG(op != nullptr && out != nullptr, "null argument");
  *out = static_cast<size_t>(op->op.size());
  return LIENUC_OK;
}

lienuc_status lienuc_operator_eigenvalues(const lienuc_operator* op, double* re, double* im, size_t capacity,
                                          size_t* count) {
  LIENUC_CHECK_ARG(op != nullptr && count != nullptr, "null argument");
  LIENUC_CHECK_ARG(capacity == 0 || (re != nullptr && im != nullptr), "null output arrays");
  return guarded([&] {
    const auto eigs = lienuc::eigenvalues_truncated(op->op);
    *count = eigs.size();
    for (size_t i = 0; i < eigs.size() && i < capacity; ++i) {
      re[i] = eigs[i].real();
      im[i] = eigs[i].imag();
    }
  });
}

void lienuc_operator_destroy(lienuc_operator* op) { delete op; }

lienuc_status lienuc_validate_config(const char* config_json, char** normalized_json) {
  LIENUC_CHECK_ARG(config_json != nullptr && normalized_json != nullptr, "null argument");
  return guarded([&] {
    const auto c = lienuc::validate_config(nlohmann::json::parse(config_json));
    nlohmann::json j = lienuc::config_to_json(c);
    j["derived"] = nlohmann::json{{"p1_tilde", std::min(2.0, c.p1)},
                                  {"p2_tilde", std::max(2.0, c.p2)},
                                  {"s", 2.0 * c.r / (2.0 - c.r)}};
    *normalized_json = dup_string(j.dump(2));
  });
}

lienuc_status lienuc_run(const char* config_json, char** summary, char** report_path) {
  LIENUC_CHECK_ARG(config_json != nullptr, "null argument");
  return guarded([&] {
    const auto out = lienuc::run(lienuc::validate_config(nlohmann::json::parse(config_json)));
    if (summary != nullptr) *summary = dup_string(out.result.summary);
    if (report_path != nullptr) *report_path = dup_string(out.report_path);
  });
}

lienuc_status lienuc_run_report(const char* config_json, char** report_json) {
  LIENUC_CHECK_ARG(config_json != nullptr && report_json != nullptr, "null argument");
  return guarded([&] {
    const auto out = lienuc::execute(lienuc::validate_config(nlohmann::json::parse(config_json)));
    *report_json = dup_string(out.report.dump(2));
  });
}

}  // extern "C"
