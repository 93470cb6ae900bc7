/*
 * ifm -- single-photon interferometer simulator with polarization-selective
 * absorbers.
 *
 * C interface to the simulation core. Scenarios and reports are opaque
 * handles; every function that can fail returns an ifm_status, with a
 * human-readable message available from ifm_last_error() on the calling
 * thread. All functions are thread-safe; handles are immutable after
 * creation and may be shared across threads.
 */
#ifndef IFM_H
#define IFM_H

#include <stddef.h>

#if defined(_WIN32)
#define IFM_API __declspec(dllexport)
#else
#define IFM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ifm_status {
  IFM_OK = 0,
  IFM_ERR_VALIDATION = 1,      /* malformed or inconsistent scenario/config */
  IFM_ERR_ORACLE_MISMATCH = 2, /* dense reference disagrees with the pipeline */
  IFM_ERR_BAD_ARGUMENT = 3,    /* null handle, bad index, unknown format */
  IFM_ERR_IO = 4,              /* file could not be read */
  IFM_ERR_INTERNAL = 5
} ifm_status;

typedef enum ifm_outcome_tag {
  IFM_OUTCOME_ABSORBED = 0, /* photon scattered by an absorber (modes S+/S-) */
  IFM_OUTCOME_DU = 1,       /* upper detector */
  IFM_OUTCOME_DL = 2        /* lower detector */
} ifm_outcome_tag;

typedef struct ifm_scenario ifm_scenario;
typedef struct ifm_report ifm_report;

/* Message for the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next failing call on the same thread. */
IFM_API const char* ifm_last_error(void);

/* Built-in scenario library. */
IFM_API int ifm_canned_count(void);
IFM_API const char* ifm_canned_name(int index); /* NULL when out of range */

/* Scenario construction. On IFM_OK the out-handle is owned by the caller and
 * must be released with ifm_scenario_free. `text` is the JSON scenario
 * config (NUL-terminated). */
IFM_API ifm_status ifm_scenario_parse(const char* text, ifm_scenario** out);
IFM_API ifm_status ifm_scenario_load(const char* path, ifm_scenario** out);
IFM_API ifm_status ifm_scenario_canned(const char* name, ifm_scenario** out);
IFM_API void ifm_scenario_free(ifm_scenario* scenario);

/* Deterministic full run: state evolution, detection, posterior atomic
 * states, and diagnostics. */
IFM_API ifm_status ifm_run(const ifm_scenario* scenario, ifm_report** out);
IFM_API void ifm_report_free(ifm_report* report);

/* Recomputes the scenario on an independent dense reference evolution and
 * compares every probability and posterior entry. Returns
 * IFM_ERR_ORACLE_MISMATCH when any deviation exceeds `tolerance`
 * (tolerance <= 0 selects the default 1e-12). */
IFM_API ifm_status ifm_check(const ifm_scenario* scenario, double tolerance);

/* Renders a report; `format` is "table" or "machine" (JSON, byte-identical
 * across runs). The returned string must be released with ifm_string_free. */
IFM_API ifm_status ifm_report_render(const ifm_report* report, const char* format,
                                     char** out_text);
IFM_API void ifm_string_free(char* text);

/* Probability partition {absorbed, Du, Dl}; any output pointer may be NULL. */
IFM_API ifm_status ifm_report_budget(const ifm_report* report, double* absorbed, double* du,
                                     double* dl);

/* Outcome access, in report order. */
IFM_API int ifm_report_outcome_count(const ifm_report* report);
IFM_API ifm_status ifm_report_outcome_tag(const ifm_report* report, int index,
                                          ifm_outcome_tag* out);
/* Polarization label ("sigma+", "sigma-", "x", "y") or "" for outcomes that
 * are not polarization-resolved. */
IFM_API ifm_status ifm_report_outcome_polarization(const ifm_report* report, int index,
                                                   char* buffer, size_t buffer_size);
IFM_API ifm_status ifm_report_outcome_probability(const ifm_report* report, int index,
                                                  double* out);

#ifdef __cplusplus
}
#endif

#endif /* IFM_H */
