/*
 * topotwin — metamorphic tester for spatial database engines.
 *
 * C interface to the shared library. Handles are opaque; every function
 * returns a ttw_status (TTW_OK on success) or, where noted, a snprintf-style
 * length. ttw_last_error() describes the most recent failure on the calling
 * thread.
 */

#ifndef TOPOTWIN_H
#define TOPOTWIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ttw_status {
  TTW_OK = 0,
  TTW_ERR_PARSE = 1,             /* malformed WKT / SQL / config text */
  TTW_ERR_INVALID_GEOMETRY = 2,  /* oracle refused a semantically bad shape */
  TTW_ERR_UNSUPPORTED = 3,
  TTW_ERR_CONFIG = 4,
  TTW_ERR_TRANSPORT = 5,
  TTW_ERR_ENGINE = 6,
  TTW_ERR_BAD_BUNDLE = 7,
  TTW_ERR_NOT_REPRODUCING = 8,
  TTW_ERR_BUFFER = 9, /* output buffer too small */
  TTW_ERR_INTERNAL = 10
} ttw_status;

const char* ttw_version(void);

/* Thread-local message for the last failing call; never NULL. */
const char* ttw_last_error(void);

/* ------------------------------------------------------------------ */
/* Configuration                                                       */

typedef struct ttw_config ttw_config;

ttw_config* ttw_config_new(void);
void ttw_config_free(ttw_config* cfg);

/* Merges a flat key = value file into the config. */
ttw_status ttw_config_load(ttw_config* cfg, const char* path);

/* Sets one key, overriding file values. */
ttw_status ttw_config_set(ttw_config* cfg, const char* key, const char* value);

/* Returns the stored value or NULL when unset. */
const char* ttw_config_get(const ttw_config* cfg, const char* key);

/* ------------------------------------------------------------------ */
/* Campaigns                                                           */

typedef struct ttw_campaign_stats {
  uint64_t runs;
  uint64_t verdicts;
  uint64_t discrepancies;
  uint64_t skipped_rows;
  uint64_t skipped_queries;
  uint64_t divergent_errors;
  uint64_t oracle_mismatches;
  int aborted;
  double sdbms_ms;
  double total_ms;
} ttw_campaign_stats;

/* Runs the configured campaign; bundles and the report land in the
 * configured output directory. Returns TTW_OK even when discrepancies were
 * found — inspect stats->discrepancies. */
ttw_status ttw_campaign_run(const ttw_config* cfg, ttw_campaign_stats* stats);

/* Re-executes a reproduction bundle against the configured target and
 * returns both counts. */
ttw_status ttw_replay(const ttw_config* cfg, const char* bundle_dir,
                      long long* count1, long long* count2);

/* Minimizes a reproduction bundle in place; the original files are archived
 * under <bundle_dir>/pre_reduction. */
ttw_status ttw_reduce(const ttw_config* cfg, const char* bundle_dir);

typedef struct ttw_timing_row {
  uint64_t n;
  double mean_sdbms_ms;
  double mean_total_ms;
  double ratio;
} ttw_timing_row;

/* Timing split over a sweep of geometry counts; `rows` must hold n_count
 * entries. Each point is averaged over `repetitions` runs. */
ttw_status ttw_timing_sweep(const ttw_config* cfg, const uint64_t* n_values,
                            size_t n_count, int repetitions,
                            ttw_timing_row* rows);

/* ------------------------------------------------------------------ */
/* Geometry utilities (stateless)                                      */

/* Writes the canonical form of a WKT geometry. Returns the full length
 * (snprintf convention, truncating when cap is small) or a negative
 * ttw_status on failure. */
long ttw_canonical_wkt(const char* wkt, char* buf, size_t cap);

/* Applies an affine map (matrix text as stored in bundles) to a WKT
 * geometry. Same length/STATUS convention as ttw_canonical_wkt. */
long ttw_transform_wkt(const char* wkt, const char* matrix_text, char* buf,
                       size_t cap);

/* DE-9IM code of two WKT geometries; out must hold 10 bytes. */
ttw_status ttw_relate(const char* wkt1, const char* wkt2, char out[10]);

/* Named predicate ("Covers", "Intersects", ...) on two WKT geometries;
 * *result becomes 0 or 1. */
ttw_status ttw_predicate(const char* name, const char* wkt1, const char* wkt2,
                         int* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TOPOTWIN_H */
