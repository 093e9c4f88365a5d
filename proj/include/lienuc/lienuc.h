/* C interface to the lienuc library.
 *
 * Objects are opaque handles created by *_create / *_catalog functions and
 * released by the matching *_destroy. Every call returns a lienuc_status;
 * on failure lienuc_last_error() holds a message for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * lienuc_string_free.
 */
#ifndef LIENUC_H
#define LIENUC_H

#include <stddef.h>

#if defined(_WIN32)
#define LIENUC_API __declspec(dllexport)
#else
#define LIENUC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lienuc_status {
  LIENUC_OK = 0,
  LIENUC_ERR_INVALID_ARGUMENT = 1,
  LIENUC_ERR_DOMAIN = 2,
  LIENUC_ERR_NUMERIC = 3,
  LIENUC_ERR_CAPABILITY = 4,
  LIENUC_ERR_CONFIG = 5,
  LIENUC_ERR_REFUSED = 6,
  LIENUC_ERR_INTERNAL = 7
} lienuc_status;

typedef struct lienuc_group lienuc_group;
typedef struct lienuc_symbol lienuc_symbol;
typedef struct lienuc_operator lienuc_operator;

LIENUC_API const char* lienuc_version(void);
LIENUC_API const char* lienuc_status_name(lienuc_status status);
LIENUC_API const char* lienuc_last_error(void);
LIENUC_API void lienuc_string_free(char* s);

/* Worker cap for internal loops; results do not depend on it. */
LIENUC_API void lienuc_set_threads(int n);
LIENUC_API int lienuc_get_threads(void);

/* "su2", "so3", "t1", "t2", "t3". */
LIENUC_API lienuc_status lienuc_group_create(const char* name, lienuc_group** out);
LIENUC_API void lienuc_group_destroy(lienuc_group* g);
LIENUC_API lienuc_status lienuc_group_dim(const lienuc_group* g, int* out);
/* Number of irreps with weight <= cutoff. */
LIENUC_API lienuc_status lienuc_dual_size(const lienuc_group* g, double cutoff, size_t* out);

/* JSON array of catalog entry names. */
LIENUC_API lienuc_status lienuc_catalog_list(char** json_out);
/* params_json: object such as {"t": 1} or {"alpha": 3}; may be NULL. */
LIENUC_API lienuc_status lienuc_symbol_catalog(const lienuc_group* g, const char* name, const char* params_json,
                                               double cutoff, lienuc_symbol** out);
LIENUC_API lienuc_status lienuc_symbol_from_json(const char* json, lienuc_symbol** out);
LIENUC_API lienuc_status lienuc_symbol_to_json(const lienuc_symbol* s, char** json_out);
LIENUC_API void lienuc_symbol_destroy(lienuc_symbol* s);

/* Matching criterion at (r, p1, p2) over the given cutoffs; JSON report. */
LIENUC_API lienuc_status lienuc_criterion(const lienuc_symbol* s, double r, double p1, double p2,
                                          const double* schedule, size_t schedule_len, char** report_json);
/* *verdict: 0 converged, 1 divergence detected, 2 inconclusive. */
LIENUC_API lienuc_status lienuc_criterion_verdict(const lienuc_symbol* s, double r, double p1, double p2,
                                                  const double* schedule, size_t schedule_len, int* verdict,
                                                  double* partial_sum);
LIENUC_API lienuc_status lienuc_nr_upper_bound(const lienuc_symbol* s, double r, double p1, double p2,
                                               double cutoff, double* out);
LIENUC_API lienuc_status lienuc_trace_symbol(const lienuc_symbol* s, double cutoff, double* re, double* im);
LIENUC_API lienuc_status lienuc_heat_trace(const lienuc_group* g, double t, double cutoff, double* value,
                                           double* tail_bound);

LIENUC_API lienuc_status lienuc_operator_assemble(const lienuc_symbol* s, double cutoff, lienuc_operator** out);
LIENUC_API lienuc_status lienuc_operator_size(const lienuc_operator* op, size_t* out);
/* Writes min(capacity, size) eigenvalues in spectrum order; *count gets size. */
LIENUC_API lienuc_status lienuc_operator_eigenvalues(const lienuc_operator* op, double* re, double* im,
                                                     size_t capacity, size_t* count);
LIENUC_API void lienuc_operator_destroy(lienuc_operator* op);

/* Flat JSON config (see README) -> normalized config JSON. */
LIENUC_API lienuc_status lienuc_validate_config(const char* config_json, char** normalized_json);
/* Runs a config, writes report files, returns the one-line summary and the
 * report path. Either output pointer may be NULL. */
LIENUC_API lienuc_status lienuc_run(const char* config_json, char** summary, char** report_path);
/* Runs a config and returns the report JSON without writing files. */
LIENUC_API lienuc_status lienuc_run_report(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* LIENUC_H */
