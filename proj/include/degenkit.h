/* Copyright 2026 The degenkit Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the degenkit engine. Objects are opaque handles created
 * from JSON documents; results are returned as JSON strings that the caller
 * releases with dk_string_free. Every function returns a dk_status; on
 * failure dk_last_error_message and dk_last_error_json describe the error
 * for the calling thread. */

#ifndef DEGENKIT_H_
#define DEGENKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DK_API __declspec(dllexport)
#else
#define DK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dk_status {
  DK_OK = 0,
  DK_ERR_FAILED = 1,       /* check failed or internal error */
  DK_ERR_INVALID = 2,      /* malformed or inconsistent input */
  DK_ERR_BUDGET = 3,       /* enumeration budget exhausted */
  DK_ERR_MISSING_KEYS = 4, /* invariant table lacks entries */
  DK_ERR_SCALE = 5         /* instance too large */
} dk_status;

typedef enum dk_convention {
  DK_CONVENTION_STANDARD_DUAL = 0,
  DK_CONVENTION_CHEN_RUAN = 1
} dk_convention;

typedef enum dk_normalization {
  DK_NORMALIZATION_LABELED = 0,
  DK_NORMALIZATION_ORBITS = 1
} dk_normalization;

typedef struct dk_options {
  dk_convention convention;
  dk_normalization normalization;
  unsigned threads;     /* enumeration workers, at least 1 */
  uint64_t budget;      /* enumeration nodes, 0 = unlimited */
  uint64_t resume_from; /* first enumeration branch */
  int record_terms;     /* nonzero: evaluation output lists every term */
} dk_options;

typedef struct dk_catalog dk_catalog;
typedef struct dk_problem dk_problem;
typedef struct dk_table dk_table;
typedef struct dk_twisting dk_twisting;

DK_API const char* dk_version(void);
DK_API dk_options dk_default_options(void);

/* Valid until the next failing call on the same thread. */
DK_API const char* dk_last_error_message(void);
/* {"error": kind, "message": ..., "path"?, "keys"?, "next_branch"?, ...} */
DK_API const char* dk_last_error_json(void);

DK_API void dk_string_free(char* text);

DK_API dk_status dk_catalog_from_json(const char* json, dk_catalog** out);
DK_API void dk_catalog_free(dk_catalog* catalog);
/* [{class, dual, chen_ruan_dual}] with coordinates in the basis. */
DK_API dk_status dk_catalog_dual_basis_json(const dk_catalog* catalog, char** out);
/* Array of warning strings. */
DK_API dk_status dk_catalog_warnings_json(const dk_catalog* catalog, char** out);

DK_API dk_status dk_problem_from_json(const char* json, dk_problem** out);
DK_API void dk_problem_free(dk_problem* problem);

DK_API dk_status dk_table_from_json(const char* json, dk_table** out);
DK_API void dk_table_free(dk_table* table);
DK_API size_t dk_table_size(const dk_table* table);

/* "minimal" or "multiple:K". */
DK_API dk_status dk_twisting_parse(const char* rule, dk_twisting** out);
/* [{multiset: "2,3", value: 6}], lcm outside the listed multisets. */
DK_API dk_status dk_twisting_from_json(const char* json, dk_twisting** out);
DK_API void dk_twisting_free(dk_twisting* twisting);
DK_API dk_status dk_twisting_describe(const dk_twisting* twisting, char** out);

/* Splittings with orbit annotations. */
DK_API dk_status dk_splittings_json(const dk_problem* problem, const dk_options* options, char** out);
/* Canonical keys needed to evaluate, as a sorted array of strings. */
DK_API dk_status dk_needed_keys_json(const dk_problem* problem, const char* insertions_json,
                                     const dk_options* options, char** out);
DK_API dk_status dk_evaluate_json(const dk_problem* problem, const char* insertions_json,
                                  const dk_table* table, const dk_twisting* twisting,
                                  const dk_options* options, char** out);

DK_API dk_status dk_lift_json(int64_t contact, int64_t target_index, int64_t source_index, char** out);
DK_API dk_status dk_ledger_json(const int* contacts, size_t count, const dk_twisting* twisting,
                                char** out);

DK_API dk_status dk_oracle_table_json(int d_max, int g_max, char** out);
/* left_legs < 0 selects the default split of the legs. */
DK_API dk_status dk_oracle_check_json(int degree, int genus, int left_legs, const dk_options* options,
                                      char** out);
/* profiles_json: array of partitions, e.g. [[3],[2,1]]; may be NULL. */
DK_API dk_status dk_hurwitz_json(int degree, int genus, const char* profiles_json, char** out);

/* Writes the report; returns DK_ERR_FAILED if some check failed and
 * DK_ERR_INVALID for an unknown suite. */
DK_API dk_status dk_run_check(const char* suite, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DEGENKIT_H_ */
