/* Exercises the shared library through its C interface only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "bandsurg/bandsurg.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: failed: %s (%s)\n", __FILE__, __LINE__, #cond, \
              bs_last_error());                                        \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

int main(int argc, char** argv) {
  const char* data = argc > 1 ? argv[1] : NULL;
  bs_table* t = NULL;
  char* s = NULL;
  char* h = NULL;
  int64_t num = 0, den = 0;
  int v = -1;

  EXPECT(bs_version() != NULL && strlen(bs_version()) > 0);
  EXPECT(strcmp(bs_status_name(BS_ERR_PARSE), "parse error") == 0);

  EXPECT(bs_table_load(data, &t) == BS_OK);
  if (!t) return 1;
  EXPECT(bs_table_size(t) > 60);

  EXPECT(bs_lens_d(5, 1, 0, &num, &den) == BS_OK);
  EXPECT(num == 1 && den == 1);
  EXPECT(bs_lens_d(3, 1, 1, &num, &den) == BS_OK);
  EXPECT(num == -1 && den == 6);
  EXPECT(bs_lens_d(4, 2, 0, &num, &den) == BS_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(bs_last_error()) > 0);

  EXPECT(bs_chirally_cosmetic(5, &v) == BS_OK && v == 1);
  EXPECT(bs_chirally_cosmetic(7, &v) == BS_OK && v == 0);

  EXPECT(bs_obstruct(t, "7_1", "5_2", &v, &s) == BS_OK && v == 0);
  bs_string_free(s);
  s = NULL;
  EXPECT(bs_obstruct(t, "6_2", "7_2", &v, &s) == BS_OK && v == 1);
  bs_string_free(s);
  s = NULL;
  EXPECT(bs_obstruct(t, "8_8", "8_8*", &v, &s) == BS_OK && v == 2);
  bs_string_free(s);
  s = NULL;
  EXPECT(bs_obstruct(t, "3_1", "no_such_knot", &v, &s) == BS_ERR_INVALID_ARGUMENT);

  EXPECT(bs_identify_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", t, &s, &h) == BS_OK);
  EXPECT(s && strncmp(s, "3_1", 3) == 0);
  bs_string_free(s);
  bs_string_free(h);
  s = h = NULL;
  EXPECT(bs_identify_pd("(1,4,2,5)(3,6,4,1)(5,2,6,3)", t, &s, &h) == BS_OK);
  EXPECT(s && strncmp(s, "3_1", 3) == 0);
  bs_string_free(s);
  bs_string_free(h);
  s = h = NULL;
  EXPECT(bs_identify_pd("(1,2", t, &s, &h) == BS_ERR_PARSE);

  EXPECT(bs_stats("/nonexistent/transitions.csv", t, 10, NULL, 0, &s) == BS_ERR_IO);
  EXPECT(bs_polygons_read("/nonexistent/polys.txt", NULL) != BS_OK);

  bs_table_free(t);
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
