#ifndef EXPSPACE_H
#define EXPSPACE_H

/* Generated by cbindgen from the expspace-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a library call. Anything other than `Ok` leaves the output
 * arguments untouched and records a message readable via
 * `expspace_last_error`.
 */
typedef enum {
  /**
   * The call succeeded and the outputs are valid.
   */
  EXPSPACE_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EXPSPACE_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument lies outside the mathematical domain of the operation.
   */
  EXPSPACE_STATUS_DOMAIN = 2,
  /**
   * A model or series violates a structural invariant.
   */
  EXPSPACE_STATUS_VALIDATION = 3,
  /**
   * A numerical routine exhausted its budget or lost finiteness.
   */
  EXPSPACE_STATUS_NUMERICAL = 4,
  /**
   * A config string is malformed.
   */
  EXPSPACE_STATUS_PARSE = 5,
  /**
   * A file could not be read.
   */
  EXPSPACE_STATUS_IO = 6,
} ExpspaceStatus;

/**
 * The result of a log-linear exponential fit behind an opaque pointer.
 */
typedef struct ExpspaceFit ExpspaceFit;

/**
 * A multi-exponential probability model behind an opaque pointer.
 */
typedef struct ExpspaceMultiExp ExpspaceMultiExp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *expspace_version(void);

/**
 * Copies the calling thread's most recent error message into `buf` as a
 * NUL-terminated string, truncating to `cap - 1` bytes, and returns the full
 * message length in bytes (excluding the terminator). With a null `buf` or
 * zero `cap` nothing is copied and only the length is returned; a return of
 * zero means no error has been recorded on this thread. The message is
 * meaningful only immediately after a call returned a non-`Ok` status.
 *
 * # Safety
 * `buf` must be null or point to at least `cap` writable bytes.
 */
size_t expspace_last_error(char *buf, size_t cap);

/**
 * Probability that the starting partition still holds the outcome after
 * scaled time `t_scaled`; `e^(-t_scaled)`.
 *
 * # Safety
 * `out` must point to a writable double.
 */
ExpspaceStatus expspace_mono_probability(double t_scaled, double *out);

/**
 * Entropy in nats accumulated by scaled time `t_scaled`; equals `t_scaled`.
 *
 * # Safety
 * `out` must point to a writable double.
 */
ExpspaceStatus expspace_mono_entropy(double t_scaled, double *out);

/**
 * Combined rate constant of `len` simultaneous independent expansion
 * processes: the plain sum of the rates, after validating each.
 *
 * # Safety
 * `rates` must point to `len` readable doubles; `out` must point to a
 * writable double.
 */
ExpspaceStatus expspace_combined_rate(const double *rates, size_t len, double *out);

/**
 * Annual growth fraction `e^lambda - 1` for a per-year rate constant.
 *
 * # Safety
 * `out` must point to a writable double.
 */
ExpspaceStatus expspace_annual_growth_rate(double lambda, double *out);

/**
 * Enumerates a sample space doubled `doublings` times (at most 20) and
 * writes the exact per-partition probability and Shannon entropy.
 *
 * # Safety
 * `probability_out` and `entropy_out` must each point to a writable double.
 */
ExpspaceStatus expspace_simulate_doubling(unsigned int doublings,
                                          double *probability_out,
                                          double *entropy_out);

/**
 * Largest time at which a contraction from `s0` alternatives is still
 * feasible: `ln(s0) / ln 2`.
 *
 * # Safety
 * `out` must point to a writable double.
 */
ExpspaceStatus expspace_contraction_t_max(uint64_t s0, double *out);

/**
 * Per-partition probability `e^(t ln 2) / s0` of a contracting space,
 * rejecting times past the stopping point.
 *
 * # Safety
 * `out` must point to a writable double.
 */
ExpspaceStatus expspace_contraction_probability(uint64_t s0, double t, double *out);

/**
 * Entropy change `-t ln 2` of a contracting space, rejecting times past the
 * stopping point.
 *
 * # Safety
 * `out` must point to a writable double.
 */
ExpspaceStatus expspace_contraction_entropy(uint64_t s0, double t, double *out);

/**
 * Builds a multi-exponential model from parallel `weights` and `rates`
 * arrays of length `len`. Requirements match the library: positive finite
 * entries, pairwise-distinct rates with the largest equal to 1, and weights
 * summing to 1 within 1e-9 (they are renormalized on construction). On
 * success `*out` owns the model; release it with `expspace_multiexp_free`.
 *
 * # Safety
 * `weights` and `rates` must each point to `len` readable doubles; `out`
 * must point to a writable pointer slot.
 */
ExpspaceStatus expspace_multiexp_new(const double *weights,
                                     const double *rates,
                                     size_t len,
                                     ExpspaceMultiExp **out);

/**
 * Builds a multi-exponential model from config text containing
 * `component = weight,rate` lines (comments with `#` allowed). On success
 * `*out` owns the model; release it with `expspace_multiexp_free`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must point to a
 * writable pointer slot.
 */
ExpspaceStatus expspace_multiexp_from_config(const char *text, ExpspaceMultiExp **out);

/**
 * Releases a model created by `expspace_multiexp_new` or
 * `expspace_multiexp_from_config`. A null pointer is ignored.
 *
 * # Safety
 * `model` must be null or a pointer previously returned by one of this
 * library's multiexp constructors, not yet freed.
 */
void expspace_multiexp_free(ExpspaceMultiExp *model);

/**
 * Number of exponential components in the model; 0 for a null handle.
 *
 * # Safety
 * `model` must be null or a live handle from this library.
 */
size_t expspace_multiexp_components(const ExpspaceMultiExp *model);

/**
 * Mixture probability `sum A_i e^(-c_i T)` at scaled time `t_scaled`.
 *
 * # Safety
 * `model` must be a live handle from this library; `out` must point to a
 * writable double.
 */
ExpspaceStatus expspace_multiexp_probability(const ExpspaceMultiExp *model,
                                             double t_scaled,
                                             double *out);

/**
 * Mixture entropy `-ln p` in nats at scaled time `t_scaled`, evaluated
 * stably even where the probability underflows.
 *
 * # Safety
 * `model` must be a live handle from this library; `out` must point to a
 * writable double.
 */
ExpspaceStatus expspace_multiexp_entropy(const ExpspaceMultiExp *model,
                                         double t_scaled,
                                         double *out);

/**
 * Late-time entropy asymptote `c_n T - ln A_n` from the slowest component.
 *
 * # Safety
 * `model` must be a live handle from this library; `out` must point to a
 * writable double.
 */
ExpspaceStatus expspace_multiexp_entropy_asymptote(const ExpspaceMultiExp *model,
                                                   double t_scaled,
                                                   double *out);

/**
 * Entropy at `t_scaled` as a fraction of the entropy at `t_max`.
 *
 * # Safety
 * `model` must be a live handle from this library; `out` must point to a
 * writable double.
 */
ExpspaceStatus expspace_multiexp_normalized_entropy(const ExpspaceMultiExp *model,
                                                    double t_scaled,
                                                    double t_max,
                                                    double *out);

/**
 * Mean residence time in scaled-time units, by the closed form
 * `(sum A_i/c_i^2) / (sum A_i/c_i)`.
 *
 * # Safety
 * `model` must be a live handle from this library; `out` must point to a
 * writable double.
 */
ExpspaceStatus expspace_multiexp_mrt(const ExpspaceMultiExp *model, double *out);

/**
 * Mean residence time by adaptive quadrature, as an independent
 * cross-check of the closed form. `rel_tol` and `truncation` configure the
 * integrator; pass 1e-6 and 1e-9 for the defaults.
 *
 * # Safety
 * `model` must be a live handle from this library; `out` must point to a
 * writable double.
 */
ExpspaceStatus expspace_multiexp_mrt_quadrature(const ExpspaceMultiExp *model,
                                                double rel_tol,
                                                double truncation,
                                                double *out);

/**
 * Fits `v(t) = s0 e^(lambda t)` to parallel `times`/`values` arrays of
 * length `len` by least squares on `ln v`. Requires `len >= 2`, strictly
 * increasing times, and positive values. On success `*out` owns the fit;
 * release it with `expspace_fit_free` and read it with the `expspace_fit_*`
 * getters.
 *
 * # Safety
 * `times` and `values` must each point to `len` readable doubles; `out`
 * must point to a writable pointer slot.
 */
ExpspaceStatus expspace_fit_new(const double *times,
                                const double *values,
                                size_t len,
                                ExpspaceFit **out);

/**
 * Releases a fit created by `expspace_fit_new`. A null pointer is ignored.
 *
 * # Safety
 * `fit` must be null or a pointer previously returned by
 * `expspace_fit_new`, not yet freed.
 */
void expspace_fit_free(ExpspaceFit *fit);

/**
 * Estimated initial size `s0` of a fit.
 *
 * # Safety
 * `fit` must be a live handle from `expspace_fit_new`; `out` must point to
 * a writable double.
 */
ExpspaceStatus expspace_fit_s0(const ExpspaceFit *fit, double *out);

/**
 * Estimated rate constant `lambda` of a fit.
 *
 * # Safety
 * `fit` must be a live handle from `expspace_fit_new`; `out` must point to
 * a writable double.
 */
ExpspaceStatus expspace_fit_lambda(const ExpspaceFit *fit, double *out);

/**
 * Log-space coefficient of determination of a fit, in `[0, 1]`.
 *
 * # Safety
 * `fit` must be a live handle from `expspace_fit_new`; `out` must point to
 * a writable double.
 */
ExpspaceStatus expspace_fit_r_squared(const ExpspaceFit *fit, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXPSPACE_H */
