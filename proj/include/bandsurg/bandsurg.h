#ifndef BANDSURG_BANDSURG_H
#define BANDSURG_BANDSURG_H

/* C interface to the band surgery toolkit. Every call returns a bs_status;
 * on failure bs_last_error() describes the problem (per thread). Strings
 * handed out through char** are heap copies released with bs_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BS_API __declspec(dllexport)
#else
#define BS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bs_status {
  BS_OK = 0,
  BS_ERR_INVALID_ARGUMENT = 1, /* bad value: unknown knot, invalid (p,q), ... */
  BS_ERR_USAGE = 2,            /* missing or malformed configuration parameter */
  BS_ERR_IO = 3,
  BS_ERR_PARSE = 4,            /* malformed input file */
  BS_ERR_DOMAIN = 5,           /* request outside where a result is defined */
  BS_ERR_INTERNAL = 6
} bs_status;

typedef struct bs_table bs_table;
typedef struct bs_config bs_config;
typedef struct bs_polygons bs_polygons;

BS_API const char* bs_version(void);
BS_API const char* bs_last_error(void);
BS_API const char* bs_status_name(bs_status s);
BS_API void bs_string_free(char* s);

/* Knot table. data_dir may be NULL for the default location. */
BS_API bs_status bs_table_load(const char* data_dir, bs_table** out);
BS_API void bs_table_free(bs_table* t);
BS_API size_t bs_table_size(const bs_table* t);
/* Recomputes the table from the bundled diagrams and writes knot_table.csv. */
BS_API bs_status bs_table_build(const char* data_dir, const char* out_path);
/* One line per record: name crossing_number det signature chiral qa homfly. */
BS_API bs_status bs_table_dump(const bs_table* t, char** out);

/* nomenclature: "table", "rolfsen" or "knotplot". */
BS_API bs_status bs_convert_name(const char* name, const char* nomenclature, char** out);

/* Configuration: key=value file plus overrides. path may be NULL. */
BS_API bs_status bs_config_load(const char* path, bs_config** out);
BS_API bs_status bs_config_set(bs_config* c, const char* key, const char* value);
/* present receives 1 when the key is set. */
BS_API bs_status bs_config_has(const bs_config* c, const char* key, int* present);
BS_API void bs_config_free(bs_config* c);

/* Runs the sampler; writes the samples file and manifest named by the config.
 * summary receives a short human-readable report. */
BS_API bs_status bs_sample(const bs_config* c, const bs_table* t, char** summary);
/* Runs the reconnection survey; writes transitions CSV, ambiguous log, manifest. */
BS_API bs_status bs_reconnect(const bs_config* c, const bs_table* t, char** summary);

/* Polygon files. */
BS_API bs_status bs_polygons_read(const char* path, bs_polygons** out);
BS_API void bs_polygons_free(bs_polygons* p);
BS_API size_t bs_polygons_count(const bs_polygons* p);
BS_API size_t bs_polygon_length(const bs_polygons* p, size_t k);
/* Identification label ("3_1", "ambiguous(...)", "unknown") of polygon k. */
BS_API bs_status bs_polygon_identify(const bs_polygons* p, size_t k, const bs_table* t, uint64_t seed,
                                     char** label);
/* Checks every polygon of a file without rejecting invalid ones; report lists
 * each violation. n_invalid counts polygons breaking an invariant. */
BS_API bs_status bs_validate_file(const char* path, char** report, size_t* n_invalid);

/* Identification of a planar diagram code "(a,b,c,d)(...)". */
BS_API bs_status bs_identify_pd(const char* pd, const bs_table* t, char** label, char** homfly);

/* Band obstruction verdict for two knots named in the table convention.
 * verdict: 0 excluded, 1 not excluded, 2 inapplicable. */
BS_API bs_status bs_obstruct(const bs_table* t, const char* a, const char* b, int* verdict, char** reason);
/* Classification of every same-determinant pair of the table. csv != 0 gives CSV. */
BS_API bs_status bs_obstruct_table(const bs_table* t, int csv, char** out);

/* d(L(p,q), i) as an exact fraction. */
BS_API bs_status bs_lens_d(int64_t p, int64_t q, int64_t i, int64_t* num, int64_t* den);
/* Self-conjugate labels of L(p,q) with their d-invariants, one "i d" line each. */
BS_API bs_status bs_lens_self_conjugate(int64_t p, int64_t q, char** out);
/* Whether L(m,1) arises as -L(m,1) through a chirally cosmetic banding; m odd, square-free. */
BS_API bs_status bs_chirally_cosmetic(int64_t m, int* result);

/* Transition-probability report from a reconnection CSV. targets is a comma
 * separated list or NULL for the defaults. */
BS_API bs_status bs_stats(const char* transitions_path, const bs_table* t, size_t n_blocks, const char* targets,
                          int csv, char** out);

#ifdef __cplusplus
}
#endif

#endif
