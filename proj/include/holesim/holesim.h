#ifndef HOLESIM_H
#define HOLESIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HS_API __declspec(dllexport)
#else
#define HS_API __attribute__((visibility("default")))
#endif

/* Status codes. HS_ERR_CONFIG and HS_ERR_INVARIANT double as the CLI exit codes. */
typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_INTERNAL = 1,
  HS_ERR_CONFIG = 2,
  HS_ERR_INVARIANT = 3,
  HS_ERR_DOMAIN = 4,
  HS_ERR_IO = 5,
  HS_ERR_ARGUMENT = 6
} hs_status;

typedef struct hs_config hs_config;
typedef struct hs_result hs_result;

/* Library version, "major.minor.patch". */
HS_API const char* hs_version(void);

/* Message for the last failed call on this thread; empty when none. Valid until the next call. */
HS_API const char* hs_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
HS_API void hs_string_free(char* s);

HS_API hs_status hs_config_default(hs_config** out);
HS_API hs_status hs_config_load(const char* path, hs_config** out);
HS_API hs_status hs_config_parse(const char* text, hs_config** out);
HS_API hs_status hs_config_clone(const hs_config* config, hs_config** out);
HS_API void hs_config_free(hs_config* config);

HS_API hs_status hs_config_set_seed(hs_config* config, uint64_t seed);
HS_API hs_status hs_config_set_protocol(hs_config* config, const char* protocol);
HS_API hs_status hs_config_set_holes(hs_config* config, uint64_t holes);

/* HS_OK when valid; HS_ERR_CONFIG with one "[kind] message" line per violation in *report. */
HS_API hs_status hs_config_validate(const hs_config* config, char** report);
HS_API hs_status hs_config_to_text(const hs_config* config, char** out);

HS_API hs_status hs_run(const hs_config* config, hs_result** out);
HS_API void hs_result_free(hs_result* result);

/* Results-table header and one row for this run (axis_value is the hole count). */
HS_API hs_status hs_result_csv(const hs_result* result, char** out);
HS_API hs_status hs_result_summary(const hs_result* result, char** out);
HS_API hs_status hs_result_registration_log(const hs_result* result, char** out);
HS_API hs_status hs_result_ledger_csv(const hs_result* result, char** out);

/* Named scalar metrics: T_r, recovered, coverage, initial_coverage, mean_dist_m, energy_frac,
   comp_cost, network_cost, reg_intra, reg_inter, hole_cells, residual_holes, protocol_bytes,
   energy_deaths. */
HS_API hs_status hs_result_metric(const hs_result* result, const char* name, double* out);
HS_API hs_status hs_result_fingerprint(const hs_result* result, uint64_t* out);

/* Newline-separated experiment names. */
HS_API hs_status hs_experiment_names(char** out);
/* Runs a preset sweep and returns its results CSV. */
HS_API hs_status hs_experiment_run(const char* name, char** csv);

#ifdef __cplusplus
}
#endif

#endif
