/* C interface to the statuspref library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every fallible
 * call returns an sp_status; on failure sp_last_error() describes the cause
 * (per thread, valid until the next call on that thread). Strings returned
 * through char** are released with sp_string_free. */
#ifndef STATUSPREF_H
#define STATUSPREF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SP_API __declspec(dllexport)
#else
#define SP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_INVALID_ARGUMENT = 1,
  SP_ERR_CONFIG = 2,
  SP_ERR_NUMERICAL = 3,
  SP_ERR_SEARCH_EXHAUSTED = 4,
  SP_ERR_NO_DISPERSION_INCENTIVE = 5,
  SP_ERR_IO = 6,
  SP_ERR_INTERNAL = 7
} sp_status;

typedef struct sp_game sp_game;
typedef struct sp_fitness sp_fitness;
typedef struct sp_distribution sp_distribution;
typedef struct sp_equilibrium sp_equilibrium;

SP_API const char* sp_version(void);
SP_API const char* sp_last_error(void);
SP_API void sp_string_free(char* s);

/* Games. `lead` is the payoff for hawk against dove, `defer` for dove
 * against hawk; both diagonal payoffs are zero. */
SP_API sp_status sp_game_new(double lead, double defer, sp_game** out);
SP_API sp_status sp_game_new_general(double s1, double s2, double s3, double s4,
                                     sp_game** out);
SP_API void sp_game_free(sp_game* game);
SP_API sp_status sp_game_interior_ess(const sp_game* game, double* hawk);
SP_API sp_status sp_game_nash_payoff(const sp_game* game, double* payoff);
SP_API sp_status sp_game_signal_payoffs(const sp_game* game, double mutant_follow,
                                        double incumbent_follow,
                                        double dove_given_hawk,
                                        double hawk_given_dove,
                                        double* given_dove, double* given_hawk);
SP_API sp_status sp_game_following_is_ess(const sp_game* game,
                                          double dove_given_hawk,
                                          double hawk_given_dove, int* is_ess,
                                          double* lead_margin,
                                          double* defer_margin);

typedef enum sp_fitness_family {
  SP_FITNESS_POWER = 0,    /* c^alpha (1 + s)^param */
  SP_FITNESS_ADDITIVE = 1  /* c^alpha + param * s */
} sp_fitness_family;

SP_API sp_status sp_fitness_new(sp_fitness_family family, double alpha,
                                double param, sp_fitness** out);
SP_API void sp_fitness_free(sp_fitness* fitness);
SP_API sp_status sp_fitness_eval(const sp_fitness* fitness, double c, double s,
                                 double* value);

/* Distributions use {"atoms": [[value, mass], ...],
 *                    "segments": [[lo, hi, mass], ...]}. */
SP_API sp_status sp_distribution_from_json(const char* json, sp_distribution** out);
SP_API sp_status sp_distribution_to_json(const sp_distribution* dist, char** json);
SP_API void sp_distribution_free(sp_distribution* dist);
SP_API sp_status sp_distribution_cdf(const sp_distribution* dist, double c,
                                     double* value);
SP_API sp_status sp_distribution_mean(const sp_distribution* dist, double* value);
SP_API sp_status sp_distribution_social_good(const sp_distribution* dist,
                                             const sp_game* game, double c,
                                             double* value);
SP_API sp_status sp_distribution_aggregate_social_good(const sp_distribution* dist,
                                                       const sp_game* game,
                                                       double* value);

/* Law of the near-degenerate lottery with parameters (c0, delta, n). */
SP_API sp_status sp_lottery_gn(double c0, double delta, uint64_t n, int corrected,
                               sp_distribution** law);
SP_API sp_status sp_find_nstar(double c0, double delta, const sp_fitness* fitness,
                               const sp_game* game, uint64_t n_max,
                               uint64_t* nstar, uint64_t* nstar_dominance);

SP_API sp_status sp_solve(double c0, const sp_fitness* fitness,
                          const sp_game* game, double tolerance,
                          size_t segments, sp_equilibrium** out);
SP_API sp_status sp_equilibrium_coefficients(const sp_equilibrium* eq,
                                             double* c_min, double* c_max,
                                             double* intercept, double* slope);
SP_API sp_status sp_equilibrium_cdf(const sp_equilibrium* eq, double c,
                                    double* value);
SP_API sp_status sp_equilibrium_to_json(const sp_equilibrium* eq, char** json);
SP_API void sp_equilibrium_free(sp_equilibrium* eq);

typedef enum sp_format { SP_FORMAT_JSON = 0, SP_FORMAT_CSV = 1 } sp_format;

typedef struct sp_command_options {
  const char* out_dir; /* NULL means the current directory */
  sp_format format;
  int compare;
  int has_seed;
  uint64_t seed;
} sp_command_options;

/* Runs ess-check, solve, simulate, invasion or lottery-nstar with a config
 * file. On SP_OK, *exit_code is 0, or 1 for a negative ess-check verdict, and
 * *report_json (if non-NULL) receives the report. */
SP_API sp_status sp_run_command(const char* command, const char* config_path,
                                const sp_command_options* options,
                                int* exit_code, char** report_json);

/* Process exit code for a failed call: 2 for configuration, argument and io
 * errors, 3 for numerical ones. */
SP_API int sp_exit_code_for_status(sp_status status);

#ifdef __cplusplus
}
#endif

#endif /* STATUSPREF_H */
