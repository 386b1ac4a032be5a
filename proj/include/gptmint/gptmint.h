/*
 * gptmint - counterfeiting bounds for operational theories
 * Copyright 2026 gptmint contributors
 * Licensed under Apache 2.0
 *
 * C interface to the gptmint shared library. All objects are opaque
 * handles created and destroyed through these functions; every call
 * returns a status code and leaves a human-readable message for
 * gptm_last_error() on failure.
 */

#ifndef GPTMINT_H
#define GPTMINT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gptm_status {
  GPTM_OK = 0,
  GPTM_ERR_INVALID_ARGUMENT = 1,
  GPTM_ERR_VALIDATION = 2, /* input violates a documented invariant */
  GPTM_ERR_SOLVER = 3,     /* optimisation failed or certificate rejected */
  GPTM_ERR_UNSUPPORTED = 4,
  GPTM_ERR_INTERNAL = 5
} gptm_status;

typedef struct gptm_theory gptm_theory;
typedef struct gptm_strategy gptm_strategy;
typedef struct gptm_report gptm_report;

const char* gptm_version(void);

/* Thread-local message for the most recent failing call. */
const char* gptm_last_error(void);

/* Theories: builtin references ("classical:3", "quantum:2", "gbit",
 * "polygon:5", "polygon:6:restricted") or a JSON document with a top-level
 * "theory" key. */
gptm_status gptm_theory_create(const char* ref, gptm_theory** out);
gptm_status gptm_theory_parse_json(const char* json, gptm_theory** out);
const char* gptm_theory_name(const gptm_theory* t);
void gptm_theory_free(gptm_theory* t);

/* Strategies: builtin name ("wiesner") or a JSON document with a top-level
 * "strategy" key, validated against the given theory. */
gptm_status gptm_strategy_builtin(const gptm_theory* t, const char* name,
                                  gptm_strategy** out);
gptm_status gptm_strategy_parse_json(const gptm_theory* t, const char* json,
                                     gptm_strategy** out);
gptm_status gptm_strategy_item_count(const gptm_strategy* s, size_t* out);
void gptm_strategy_free(gptm_strategy* s);

/* Analyses. config_json may be NULL or a JSON object with any of the keys
 * eps_abs, eps_rel, tol, max_iter, scaling, seed, method. Each run returns
 * a report whose machine-readable JSON is byte-identical for identical
 * inputs and configuration. */
gptm_status gptm_run_solve(const gptm_theory* t, const gptm_strategy* s,
                           const char* config_json, int relaxed_only,
                           gptm_report** out);
gptm_status gptm_run_broadcast(const gptm_theory* t, const gptm_strategy* s,
                               const char* config_json, gptm_report** out);
gptm_status gptm_run_vs(const gptm_theory* t, const gptm_strategy* s,
                        const char* config_json, gptm_report** out);
gptm_status gptm_run_product(const gptm_theory* ta, const gptm_strategy* sa,
                             const gptm_theory* tb, const gptm_strategy* sb,
                             const char* config_json, gptm_report** out);
gptm_status gptm_run_repeat(const gptm_theory* t, const gptm_strategy* s,
                            double delta, const char* config_json,
                            gptm_report** out);

/* The report JSON; owned by the report handle. */
const char* gptm_report_json(const gptm_report* r);
/* Numeric lookup by dotted path, e.g. "results.alpha.value". */
gptm_status gptm_report_get_number(const gptm_report* r, const char* path,
                                   double* out);
void gptm_report_free(gptm_report* r);

#ifdef __cplusplus
}
#endif

#endif /* GPTMINT_H */
