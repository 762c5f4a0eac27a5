/* Copyright 2026 The degenkit Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "degenkit.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static char* slurp(const char* name) {
  char path[1024];
  snprintf(path, sizeof path, "%s/%s", DEGENKIT_TEST_DATA, name);
  FILE* f = fopen(path, "rb");
  if (!f) {
    fprintf(stderr, "cannot open %s\n", path);
    exit(2);
  }
  fseek(f, 0, SEEK_END);
  long n = ftell(f);
  fseek(f, 0, SEEK_SET);
  char* buf = malloc((size_t)n + 1);
  size_t got = fread(buf, 1, (size_t)n, f);
  buf[got] = '\0';
  fclose(f);
  return buf;
}

/* Copies the string value of the first "name": "..." pair into out. */
static int field(const char* json, const char* name, char* out, size_t size) {
  char pattern[128];
  snprintf(pattern, sizeof pattern, "\"%s\": \"", name);
  const char* at = strstr(json, pattern);
  if (!at) return 0;
  at += strlen(pattern);
  const char* end = strchr(at, '"');
  size_t n = (size_t)(end - at);
  if (n + 1 > size) return 0;
  memcpy(out, at, n);
  out[n] = '\0';
  return 1;
}

int main(void) {
  EXPECT(strcmp(dk_version(), "0.1.0") == 0);

  char* problem_text = slurp("p1_d2_problem.json");
  char* insertions = slurp("p1_d2_insertions.json");
  char* table_text = slurp("p1_d2_table.json");

  dk_problem* problem = NULL;
  dk_table* table = NULL;
  dk_twisting* minimal = NULL;
  dk_twisting* doubled = NULL;
  EXPECT(dk_problem_from_json(problem_text, &problem) == DK_OK);
  EXPECT(dk_table_from_json(table_text, &table) == DK_OK);
  EXPECT(dk_table_size(table) > 10);
  EXPECT(dk_twisting_parse("minimal", &minimal) == DK_OK);
  EXPECT(dk_twisting_parse("multiple:2", &doubled) == DK_OK);

  dk_options opts = dk_default_options();
  EXPECT(opts.threads >= 1);
  EXPECT(opts.budget == 0);

  char* out = NULL;
  EXPECT(dk_splittings_json(problem, &opts, &out) == DK_OK);
  EXPECT(out && strstr(out, "\"M\"") != NULL);
  dk_string_free(out);

  EXPECT(dk_needed_keys_json(problem, insertions, &opts, &out) == DK_OK);
  EXPECT(out && strstr(out, "X1;") != NULL && strstr(out, "X2;") != NULL);
  dk_string_free(out);

  char value[64] = "", value2[64] = "", value3[64] = "", expected[64] = "";
  EXPECT(dk_oracle_check_json(2, 0, 1, &opts, &out) == DK_OK);
  EXPECT(field(out, "oracle_value", expected, sizeof expected));
  dk_string_free(out);

  EXPECT(dk_evaluate_json(problem, insertions, table, minimal, &opts, &out) == DK_OK);
  EXPECT(field(out, "value", value, sizeof value));
  EXPECT(strcmp(value, expected) == 0);
  EXPECT(strstr(out, "\"terms\"") == NULL);
  dk_string_free(out);

  opts.convention = DK_CONVENTION_CHEN_RUAN;
  opts.normalization = DK_NORMALIZATION_ORBITS;
  opts.threads = 4;
  EXPECT(dk_evaluate_json(problem, insertions, table, doubled, &opts, &out) == DK_OK);
  EXPECT(field(out, "value", value2, sizeof value2));
  EXPECT(strcmp(value, value2) == 0);
  dk_string_free(out);

  opts = dk_default_options();
  opts.record_terms = 1;
  EXPECT(dk_evaluate_json(problem, insertions, table, minimal, &opts, &out) == DK_OK);
  EXPECT(strstr(out, "\"terms\"") != NULL);
  EXPECT(field(out, "value", value3, sizeof value3));
  EXPECT(strcmp(value, value3) == 0);
  dk_string_free(out);

  /* Missing keys. */
  dk_table* empty = NULL;
  EXPECT(dk_table_from_json("[]", &empty) == DK_OK);
  out = NULL;
  EXPECT(dk_evaluate_json(problem, insertions, empty, minimal, NULL, &out) == DK_ERR_MISSING_KEYS);
  EXPECT(out == NULL);
  EXPECT(strstr(dk_last_error_json(), "\"keys\"") != NULL);
  dk_table_free(empty);

  /* Budget. */
  opts = dk_default_options();
  opts.budget = 1;
  EXPECT(dk_splittings_json(problem, &opts, &out) == DK_ERR_BUDGET);
  EXPECT(strstr(dk_last_error_json(), "\"next_branch\"") != NULL);

  /* Validation with a field path. */
  dk_problem* bad = NULL;
  EXPECT(dk_problem_from_json("{\"monoid\": [], \"genus\": 0, \"legs\": [], \"beta\": {}}", &bad) == DK_ERR_INVALID);
  EXPECT(bad == NULL);
  EXPECT(strstr(dk_last_error_json(), "\"path\"") != NULL);
  EXPECT(dk_problem_from_json("{", &bad) == DK_ERR_INVALID);
  EXPECT(strlen(dk_last_error_message()) > 0);
  EXPECT(dk_problem_from_json(NULL, &bad) == DK_ERR_INVALID);
  EXPECT(dk_twisting_parse("sometimes", &doubled) == DK_ERR_INVALID);

  /* Catalogs. */
  dk_catalog* cat = NULL;
  EXPECT(dk_catalog_from_json("{\"sectors\": [{\"id\": \"u\", \"band_order\": 1}],"
                              " \"basis\": [{\"id\": \"x\", \"sector\": \"u\"}], \"pairing\": [[\"2\"]]}",
                              &cat) == DK_OK);
  EXPECT(dk_catalog_dual_basis_json(cat, &out) == DK_OK);
  EXPECT(strstr(out, "1/2") != NULL);
  dk_string_free(out);
  EXPECT(dk_catalog_warnings_json(cat, &out) == DK_OK);
  dk_string_free(out);
  dk_catalog_free(cat);

  /* Small operations. */
  EXPECT(dk_lift_json(2, 6, 3, &out) == DK_OK);
  EXPECT(strstr(out, "\"representable\": true") != NULL);
  dk_string_free(out);
  EXPECT(dk_lift_json(4, 6, 3, &out) == DK_ERR_INVALID);

  const int contacts[] = {2, 3};
  char net[32] = "";
  EXPECT(dk_ledger_json(contacts, 2, minimal, &out) == DK_OK);
  EXPECT(field(out, "net", net, sizeof net));
  EXPECT(strcmp(net, "3/1") == 0);
  dk_string_free(out);

  char count[32] = "";
  EXPECT(dk_hurwitz_json(2, 0, NULL, &out) == DK_OK);
  EXPECT(field(out, "count", count, sizeof count) || strstr(out, "1/2") != NULL);
  dk_string_free(out);
  EXPECT(dk_hurwitz_json(3, 0, "[[3],[3]]", &out) == DK_OK);
  EXPECT(strstr(out, "1/3") != NULL);
  dk_string_free(out);
  EXPECT(dk_hurwitz_json(6, 0, NULL, &out) == DK_ERR_SCALE);

  EXPECT(dk_oracle_table_json(1, 0, &out) == DK_OK);
  dk_string_free(out);

  EXPECT(dk_run_check("lifts", &out) == DK_OK);
  dk_string_free(out);
  EXPECT(dk_run_check("nope", &out) == DK_ERR_INVALID);

  dk_twisting_free(minimal);
  dk_twisting_free(doubled);
  dk_table_free(table);
  dk_problem_free(problem);
  dk_problem_free(NULL);
  free(problem_text);
  free(insertions);
  free(table_text);

  if (failures == 0) printf("capi_test: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
