/* Generated by cbindgen. Regenerate with `cargo build -p momfit-ffi --features headers`. */

#ifndef MOMFIT_H
#define MOMFIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum MomfitStatus {
  MOMFIT_STATUS_OK = 0,
  MOMFIT_STATUS_NULL_POINTER = 1,
  MOMFIT_STATUS_DOMAIN_ERROR = 2,
  MOMFIT_STATUS_INFEASIBLE_RATIO = 3,
  MOMFIT_STATUS_BRACKET_EXHAUSTED = 4,
  MOMFIT_STATUS_ITERATION_LIMIT = 5,
  MOMFIT_STATUS_PARSE_ERROR = 6,
  MOMFIT_STATUS_OVERFLOW = 7,
  MOMFIT_STATUS_IO_ERROR = 8,
  MOMFIT_STATUS_PANIC = 9,
} MomfitStatus;

/**
 * Opaque seeded random generator.
 */
typedef struct MomfitGenerator MomfitGenerator;

/**
 * Opaque solver settings.
 */
typedef struct MomfitSolver MomfitSolver;

/**
 * Distribution family selector. Any other value is a domain error.
 */
typedef uint32_t MomfitDist;

/**
 * Two-parameter record. `a`, `b` are (k, lambda), (alpha, beta) or
 * (mu, sigma) depending on `dist`.
 */
typedef struct MomfitParams {
  MomfitDist dist;
  double a;
  double b;
} MomfitParams;

typedef struct MomfitFitResult {
  struct MomfitParams params;
  uint32_t iterations;
  uint32_t expansions;
  double final_bracket_width;
  double log_ratio_residual;
  /**
   * Bracket the bisection started from.
   */
  double search_lo;
  double search_hi;
} MomfitFitResult;

#define MOMFIT_DIST_WEIBULL 0

#define MOMFIT_DIST_GAMMA 1

#define MOMFIT_DIST_LOGNORMAL 2

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *momfit_version(void);

/**
 * Static name of a status code, e.g. `"INFEASIBLE_RATIO"`.
 */
const char *momfit_status_string(enum MomfitStatus status);

/**
 * Message for the last call on this thread; empty after a success.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *momfit_last_error_message(void);

/**
 * New solver with default settings (tolerance 1e-10, 200 iterations,
 * initial bracket [1e-2, 1e3], 60 expansions per side).
 */
struct MomfitSolver *momfit_solver_new(void);

/**
 * # Safety
 * `solver` must come from [`momfit_solver_new`] and not be freed twice.
 */
void momfit_solver_free(struct MomfitSolver *solver);

/**
 * # Safety
 * `solver` must be a live handle.
 */
enum MomfitStatus momfit_solver_set_tolerance(struct MomfitSolver *solver, double delta);

/**
 * # Safety
 * `solver` must be a live handle.
 */
enum MomfitStatus momfit_solver_set_bracket(struct MomfitSolver *solver, double lo, double hi);

/**
 * # Safety
 * `solver` must be a live handle.
 */
enum MomfitStatus momfit_solver_set_max_iterations(struct MomfitSolver *solver,
                                                   uint32_t max_iterations);

/**
 * # Safety
 * `solver` must be a live handle.
 */
enum MomfitStatus momfit_solver_set_max_expansions(struct MomfitSolver *solver,
                                                   uint32_t max_expansions);

/**
 * Fit `dist` from raw moments `E(X^n) = moment_n`, `E(X^m) = moment_m`,
 * `n > m > 0`. `solver` may be null for default settings.
 *
 * # Safety
 * `solver` must be null or a live handle; `out` must be writable.
 */
enum MomfitStatus momfit_fit(const struct MomfitSolver *solver,
                             MomfitDist dist,
                             double n,
                             double m,
                             double moment_n,
                             double moment_m,
                             struct MomfitFitResult *out);

/**
 * As [`momfit_fit`] but takes natural logs of the moments, for moments
 * outside the double range.
 *
 * # Safety
 * `solver` must be null or a live handle; `out` must be writable.
 */
enum MomfitStatus momfit_fit_log(const struct MomfitSolver *solver,
                                 MomfitDist dist,
                                 double n,
                                 double m,
                                 double log_moment_n,
                                 double log_moment_m,
                                 struct MomfitFitResult *out);

/**
 * # Safety
 * `params` must be readable, `out` writable.
 */
enum MomfitStatus momfit_pdf(const struct MomfitParams *params, double x, double *out);

/**
 * Raw moment `E(X^order)`; `MOMFIT_STATUS_OVERFLOW` if it exceeds the double range.
 *
 * # Safety
 * `params` must be readable, `out` writable.
 */
enum MomfitStatus momfit_moment(const struct MomfitParams *params, double order, double *out);

/**
 * # Safety
 * `params` must be readable, `out` writable.
 */
enum MomfitStatus momfit_log_moment(const struct MomfitParams *params, double order, double *out);

/**
 * Sample raw moments of `data[0..len]` at each of `orders[0..n_orders]`,
 * written to `out[0..n_orders]`.
 *
 * # Safety
 * The three arrays must hold at least the stated number of elements.
 */
enum MomfitStatus momfit_raw_moments(const double *data,
                                     size_t len,
                                     const double *orders,
                                     size_t n_orders,
                                     double *out);

/**
 * Generator for `(seed, stream)`. Distinct streams of one seed do not overlap.
 */
struct MomfitGenerator *momfit_generator_new(uint64_t seed, uint64_t stream);

/**
 * # Safety
 * `generator` must come from [`momfit_generator_new`] and not be freed twice.
 */
void momfit_generator_free(struct MomfitGenerator *generator);

/**
 * Draw `count` variates into `out`. The generator advances.
 *
 * # Safety
 * `generator` must be live, `params` readable, `out` hold `count` doubles.
 */
enum MomfitStatus momfit_generator_sample(struct MomfitGenerator *generator,
                                          const struct MomfitParams *params,
                                          double *out,
                                          size_t count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOMFIT_H */
