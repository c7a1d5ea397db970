#ifndef MORSECONE_H
#define MORSECONE_H

/*
 * C interface to the mapping-cone Morse library. All functions return an
 * mc_status; on failure mc_last_error() holds a message for the calling
 * thread until the next failing call. Strings returned through char** are
 * heap allocated and must be released with mc_string_free().
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mc_status {
  MC_OK = 0,
  MC_ERR_IO = 1,
  MC_ERR_VALIDATION = 2,
  MC_ERR_NUMERIC = 3
} mc_status;

typedef struct mc_dataset mc_dataset;
typedef struct mc_scan mc_scan;

const char* mc_version(void);

/* Message from the most recent failing call on this thread, never NULL. */
const char* mc_last_error(void);

int mc_builtin_count(void);
/* Name of the i-th builtin dataset, NULL when out of range. The pointer is
 * static and must not be freed. */
const char* mc_builtin_name(int i);

mc_status mc_dataset_builtin(const char* name, mc_dataset** out);
mc_status mc_dataset_load_file(const char* path, mc_dataset** out);
mc_status mc_dataset_load_string(const char* text, mc_dataset** out);
mc_status mc_dataset_save_file(const mc_dataset* d, const char* path);
void mc_dataset_free(mc_dataset* d);

/* Exact structural checks: grading, nilpotency, anticommutation. */
mc_status mc_dataset_validate(const mc_dataset* d);

/*
 * Cohomology report as a JSON document: point counts and classical Betti
 * numbers per base degree, cup ranks, and per cone degree the block
 * dimension, cohomology dimension and differential rank.
 */
mc_status mc_cohomology_json(const mc_dataset* d, char** out_json);

/* Equalities, inequalities (with slack) and the cohomology decomposition. */
mc_status mc_corollaries_json(const mc_dataset* d, char** out_json);

/*
 * Generate `count` random valid datasets from `seed` and run the full check
 * battery on each; the report lists any failures by generation index.
 */
mc_status mc_random_suite_json(unsigned long long seed, int count, char** out_json);

/*
 * Run a spectral scan from a JSON config object. Recognized keys: builtin,
 * n, T_list, c0, threshold, gap_mode, bump_eps, threads; unknown keys are
 * rejected. Missing keys take the library defaults.
 */
mc_status mc_scan_run(const char* config_json, mc_scan** out);
mc_status mc_scan_csv(const mc_scan* s, char** out_text);
mc_status mc_scan_json(const mc_scan* s, char** out_text);
void mc_scan_free(mc_scan* s);

void mc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
