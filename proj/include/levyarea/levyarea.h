/* C interface to the levyarea engine.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Functions that can fail return a levy_status;
 * on failure levy_last_error() describes the problem for the calling thread.
 * Indices j are 1-based, matching t_1 < ... < t_n.
 */
#ifndef LEVYAREA_LEVYAREA_H
#define LEVYAREA_LEVYAREA_H

#include <stddef.h>
#include <stdint.h>

#if defined(LEVY_BUILDING_LIBRARY)
#define LEVY_API __attribute__((visibility("default")))
#else
#define LEVY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum levy_status {
  LEVY_OK = 0,
  LEVY_ERR_INVALID_ARGUMENT = 1,
  LEVY_ERR_VALIDATION = 2, /* bad times, dimensions, non-finite input */
  LEVY_ERR_BLOWUP = 3,     /* Riccati path left the finite region */
  LEVY_ERR_ILL_CONDITIONED = 4,
  LEVY_ERR_POLE = 5,
  LEVY_ERR_SINGULAR = 6,
  LEVY_ERR_GRID_MISS = 7,
  LEVY_ERR_SHAPE = 8, /* closed form asked for a non-Levy-area problem */
  LEVY_ERR_INTERNAL = 99
} levy_status;

typedef enum levy_mode {
  LEVY_MODE_CHARACTERISTIC = 0,
  LEVY_MODE_MGF = 1
} levy_mode;

typedef struct levy_problem levy_problem;
typedef struct levy_point levy_point;
typedef struct levy_result levy_result;
typedef struct levy_samples levy_samples;

LEVY_API const char* levy_version(void);
LEVY_API const char* levy_last_error(void);
LEVY_API const char* levy_status_name(levy_status status);

/* times: n values; matrices: n row-major d*d blocks. */
LEVY_API levy_status levy_problem_create(int d, int n, const double* times,
                                         const double* matrices,
                                         levy_problem** out);
LEVY_API void levy_problem_destroy(levy_problem* problem);
LEVY_API int levy_problem_dimension(const levy_problem* problem);
LEVY_API int levy_problem_count(const levy_problem* problem);

/* gammas: n blocks of d values; lambdas: n values. */
LEVY_API levy_status levy_point_create(int d, int n, const double* gammas,
                                       const double* lambdas, levy_mode mode,
                                       levy_point** out);
LEVY_API void levy_point_destroy(levy_point* point);
LEVY_API levy_status levy_point_set_lambda(levy_point* point, int j,
                                           double value);

/* Riccati/transport pipeline. grid_step <= 0 selects the default grid. */
LEVY_API levy_status levy_evaluate(const levy_problem* problem,
                                   const levy_point* point, double grid_step,
                                   levy_result** out);
/* Closed form for d = 2 with every matrix equal to [[0,-1],[1,0]]. */
LEVY_API levy_status levy_evaluate_closed2d(const levy_problem* problem,
                                            const levy_point* point,
                                            levy_result** out);

LEVY_API levy_status levy_simulate(const levy_problem* problem,
                                   uint64_t n_paths, int steps_per_unit,
                                   uint64_t seed, levy_samples** out);
LEVY_API void levy_samples_destroy(levy_samples* samples);
LEVY_API levy_status levy_estimate(const levy_samples* samples,
                                   const levy_point* point, levy_result** out);

LEVY_API void levy_result_destroy(levy_result* result);
LEVY_API void levy_result_value(const levy_result* result, double* re,
                                double* im);
LEVY_API void levy_result_log_value(const levy_result* result, double* re,
                                    double* im);
/* Number of per-time factors (0 for Monte Carlo results). */
LEVY_API int levy_result_factor_count(const levy_result* result);
/* trace and quadratic each receive {re, im}. */
LEVY_API levy_status levy_result_factor(const levy_result* result, int j,
                                        double* trace, double* quadratic);
LEVY_API double levy_result_grid_step(const levy_result* result);
LEVY_API double levy_result_max_k_norm(const levy_result* result);
LEVY_API int levy_result_warning_count(const levy_result* result);
LEVY_API const char* levy_result_warning(const levy_result* result, int i);
/* Monte Carlo results only; 0 otherwise. */
LEVY_API int levy_result_is_estimate(const levy_result* result);
LEVY_API void levy_result_std_error(const levy_result* result, double* re,
                                    double* im);
LEVY_API uint64_t levy_result_paths(const levy_result* result);

typedef struct levy_compare_report {
  double diff_re;
  double diff_im;
  double z_re; /* |diff| / se; +inf when se is 0 and diff is not */
  double z_im;
  int pass;    /* |diff| <= threshold * se + allowance in both parts */
} levy_compare_report;

LEVY_API levy_status levy_compare(double ref_re, double ref_im, double est_re,
                                  double est_im, double se_re, double se_im,
                                  double threshold, double allowance,
                                  levy_compare_report* out);

#ifdef __cplusplus
}
#endif

#endif /* LEVYAREA_LEVYAREA_H */
