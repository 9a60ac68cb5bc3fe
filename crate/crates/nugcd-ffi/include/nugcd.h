#ifndef NUGCD_H
#define NUGCD_H

/* Generated by cbindgen from the nugcd-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum NugcdStatus {
  NUGCD_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  NUGCD_STATUS_NULL_ARGUMENT = 1,
  /**
   * The coefficients do not form a valid nonzero polynomial
   * (zero-length, zero leading coefficient, or non-finite entries).
   */
  NUGCD_STATUS_INVALID_INPUT = 2,
  /**
   * The tolerance was not a positive finite number.
   */
  NUGCD_STATUS_INVALID_EPSILON = 3,
  /**
   * An output buffer was smaller than the reported length.
   */
  NUGCD_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * The computation failed numerically.
   */
  NUGCD_STATUS_NUMERIC_FAILURE = 5,
  /**
   * A panic was caught at the boundary.
   */
  NUGCD_STATUS_PANIC = 6,
} NugcdStatus;

/**
 * Opaque result handle.
 */
typedef struct NugcdResult NugcdResult;

/**
 * Solver options; obtain defaults from [`nugcd_options_default`].
 */
typedef struct NugcdOptions {
  /**
   * Backward-error tolerance.
   */
  double epsilon;
  /**
   * Nonzero: interpret epsilon relative to the pair norm.
   */
  uint8_t relative;
  /**
   * Nonzero: scale both inputs to unit norm first.
   */
  uint8_t normalize_inputs;
  uint64_t rng_seed;
  uintptr_t max_gn_steps;
  uintptr_t max_iter_steps;
  /**
   * Floor for the relative residual row weights, as a fraction of the
   * largest coefficient magnitude.
   */
  double weight_floor;
} NugcdOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct NugcdOptions nugcd_options_default(void);

/**
 * Computes the numerical GCD of the two polynomials within the tolerance.
 *
 * `p_im`/`q_im` may be NULL for real coefficients; `options` may be NULL
 * for defaults. On success `*out` owns the result and must be freed with
 * [`nugcd_result_free`].
 *
 * # Safety
 * Coefficient pointers must reference at least `p_len`/`q_len` readable
 * doubles; `out` must be a valid writable pointer.
 */
enum NugcdStatus nugcd_gcd(const double *p_re,
                           const double *p_im,
                           uintptr_t p_len,
                           const double *q_re,
                           const double *q_im,
                           uintptr_t q_len,
                           const struct NugcdOptions *options,
                           struct NugcdResult **out);

/**
 * Releases a result handle; NULL is a no-op.
 *
 * # Safety
 * `result` must come from [`nugcd_gcd`] and not have been freed before.
 */
void nugcd_result_free(struct NugcdResult *result);

/**
 * Certified numerical GCD degree.
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
uintptr_t nugcd_result_degree(const struct NugcdResult *result);

/**
 * Nonzero when a candidate degree passed certification.
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
uint8_t nugcd_result_certified(const struct NugcdResult *result);

/**
 * Certification residual (weighted nearness).
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
double nugcd_result_rho(const struct NugcdResult *result);

/**
 * Plain backward distance ||(u*v, u*w) - (p, q)||.
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
double nugcd_result_backward_error(const struct NugcdResult *result);

/**
 * Condition estimate (reciprocal smallest singular value of the Jacobian).
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
double nugcd_result_kappa(const struct NugcdResult *result);

/**
 * Nonzero when the inputs were exchanged internally to enforce
 * deg p >= deg q (the cofactors are already swapped back).
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
uint8_t nugcd_result_swapped(const struct NugcdResult *result);

/**
 * Effective absolute tolerance after the relative/normalize modes.
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
double nugcd_result_epsilon_used(const struct NugcdResult *result);

/**
 * Coefficient count of the GCD (degree + 1).
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
uintptr_t nugcd_result_gcd_len(const struct NugcdResult *result);

/**
 * Coefficient count of the first input's cofactor.
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
uintptr_t nugcd_result_cofactor_p_len(const struct NugcdResult *result);

/**
 * Coefficient count of the second input's cofactor.
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
uintptr_t nugcd_result_cofactor_q_len(const struct NugcdResult *result);

/**
 * Number of Sylvester indices visited by the sweep.
 *
 * # Safety
 * `result` must be a live handle from [`nugcd_gcd`].
 */
uintptr_t nugcd_result_sigma_trace_len(const struct NugcdResult *result);

/**
 * Copies the GCD coefficients (ascending) into the caller's buffers.
 *
 * # Safety
 * `result` must be live; `re`/`im` must hold at least `cap` doubles, with
 * `cap >= nugcd_result_gcd_len(result)`.
 */
enum NugcdStatus nugcd_result_gcd(const struct NugcdResult *result,
                                  double *re,
                                  double *im,
                                  uintptr_t cap);

/**
 * Copies the cofactor of the first input (u * v ~ p).
 *
 * # Safety
 * Same contract as [`nugcd_result_gcd`] with the v length.
 */
enum NugcdStatus nugcd_result_cofactor_p(const struct NugcdResult *result,
                                         double *re,
                                         double *im,
                                         uintptr_t cap);

/**
 * Copies the cofactor of the second input (u * w ~ q).
 *
 * # Safety
 * Same contract as [`nugcd_result_gcd`] with the w length.
 */
enum NugcdStatus nugcd_result_cofactor_q(const struct NugcdResult *result,
                                         double *re,
                                         double *im,
                                         uintptr_t cap);

/**
 * Copies the sweep trace: Sylvester index and smallest-singular-value
 * estimate per visited degree, in sweep order.
 *
 * # Safety
 * `indices` and `sigmas` must hold at least `cap` entries, with
 * `cap >= nugcd_result_sigma_trace_len(result)`.
 */
enum NugcdStatus nugcd_result_sigma_trace(const struct NugcdResult *result,
                                          uintptr_t *indices,
                                          double *sigmas,
                                          uintptr_t cap);

/**
 * Static description of a status code.
 */
const char *nugcd_status_message(enum NugcdStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NUGCD_H */
