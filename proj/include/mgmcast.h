/* Public C interface of the mgmcast shared library.
 *
 * Every object is an opaque handle created by an mgm_* function and
 * released with the matching *_free. Functions return MGM_OK on success;
 * on failure they return a status code and leave a human-readable detail
 * string readable through mgm_last_error() (thread local).
 */
#ifndef MGMCAST_H_
#define MGMCAST_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mgm_status {
  MGM_OK = 0,
  MGM_ERR_INVALID_ARGUMENT = 1,
  MGM_ERR_INFEASIBLE = 2,
  MGM_ERR_SINGULAR = 3,
  MGM_ERR_IO = 4,
  MGM_ERR_INTERNAL = 5,
} mgm_status;

typedef enum mgm_scheme {
  MGM_MRT_UNDP = 0,
  MGM_ZF_UNDP = 1,
  MGM_MRT_MUDP = 2,
  MGM_ZF_MUDP = 3,
  MGM_MRT_MUCP = 4,
  MGM_ZF_MUCP = 5,
} mgm_scheme;

typedef struct mgm_config mgm_config;
typedef struct mgm_profile mgm_profile;
typedef struct mgm_solution mgm_solution;
typedef struct mgm_table mgm_table;

/* Detail message of the most recent failure on this thread. Never NULL. */
const char* mgm_last_error(void);

const char* mgm_scheme_name(mgm_scheme scheme);
mgm_status mgm_scheme_parse(const char* name, mgm_scheme* out);

/* --- configuration ------------------------------------------------- */

mgm_status mgm_config_from_json(const char* json_text, mgm_config** out);
mgm_status mgm_config_from_file(const char* path, mgm_config** out);
void mgm_config_free(mgm_config* config);

int mgm_config_n_antennas(const mgm_config* config);
int mgm_config_n_groups(const mgm_config* config);
int mgm_config_total_users(const mgm_config* config);
int mgm_config_coherence_symbols(const mgm_config* config);
/* Noise-normalized downlink budget. */
double mgm_config_dl_power(const mgm_config* config);

/* Physical watts -> noise-normalized power. */
double mgm_normalize_power(double p_watts, double noise_psd_dbm_per_hz,
                           double bw_hz);

/* Sets *feasible to 0/1; when infeasible and reason != NULL, copies a
 * machine-readable reason (truncated to reason_len). */
mgm_status mgm_scheme_feasible(const mgm_config* config, mgm_scheme scheme,
                               int* feasible, char* reason, size_t reason_len);

/* --- user drops ----------------------------------------------------- */

mgm_status mgm_drop_users(const mgm_config* config, uint64_t seed,
                          mgm_profile** out);
void mgm_profile_free(mgm_profile* profile);
size_t mgm_profile_user_count(const mgm_profile* profile);
/* Copies up to len large-scale fading coefficients into out. */
mgm_status mgm_profile_betas(const mgm_profile* profile, double* out,
                             size_t len);

/* --- max-min fairness ------------------------------------------------ */

/* Solves the max-min problem at a fixed pilot length. */
mgm_status mgm_solve_mmf(const mgm_config* config, const mgm_profile* profile,
                         mgm_scheme scheme, int tau_p, mgm_solution** out);
/* Solves with the pilot length optimized over the admissible grid. */
mgm_status mgm_optimize_pilot_length(const mgm_config* config,
                                     const mgm_profile* profile,
                                     mgm_scheme scheme, mgm_solution** out);
void mgm_solution_free(mgm_solution* solution);

double mgm_solution_min_se(const mgm_solution* solution);
double mgm_solution_common_sinr(const mgm_solution* solution);
int mgm_solution_tau_p(const mgm_solution* solution);
size_t mgm_solution_dl_power_count(const mgm_solution* solution);
mgm_status mgm_solution_dl_powers(const mgm_solution* solution, double* out,
                                  size_t len);
mgm_status mgm_solution_ul_powers(const mgm_solution* solution, double* out,
                                  size_t len);

/* Monte Carlo validation of the closed-form SINR at a solution. Writes the
 * largest per-user relative deviation and the number of users whose closed
 * form fell outside 3 standard errors. */
mgm_status mgm_validate_bound(const mgm_config* config,
                              const mgm_profile* profile,
                              const mgm_solution* solution, int n_samples,
                              uint64_t seed, double* max_rel_dev,
                              int* n_flagged);

/* CSI-free time-shared broadcast baseline. */
mgm_status mgm_omnicast_se(const mgm_config* config, int n_drops,
                           int n_fading_samples, uint64_t seed, double* se,
                           double* std_error);

/* --- experiments ------------------------------------------------------ */

/* Runs a sweep described by a JSON document (see README for the schema). */
mgm_status mgm_run_sweep_json(const mgm_config* config, const char* sweep_json,
                              mgm_table** out);
void mgm_table_free(mgm_table* table);
/* format is "csv" or "json". */
mgm_status mgm_table_write(const mgm_table* table, const char* path,
                           const char* format);
/* Returns a malloc'd string; release with mgm_string_free. */
mgm_status mgm_table_to_string(const mgm_table* table, const char* format,
                               char** out);
void mgm_string_free(char* text);

/* Picks the best scheme for one profile. per_scheme_se may be NULL or an
 * array of 6 doubles indexed by mgm_scheme (NaN marks infeasible). */
mgm_status mgm_recommend(const mgm_config* config, const mgm_profile* profile,
                         mgm_scheme* best, double* best_se, double* margin,
                         double* per_scheme_se);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MGMCAST_H_ */
