#ifndef MIXMEAN_H
#define MIXMEAN_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum MmStatus {
  MM_STATUS_OK = 0,
  MM_STATUS_NULL_POINTER = 1,
  MM_STATUS_INVALID_INPUT = 2,
  MM_STATUS_NOT_APPLICABLE = 3,
  MM_STATUS_OUT_OF_RANGE = 4,
  MM_STATUS_INTERNAL = 5,
} MmStatus;

// Certification route, mirroring `mixmean::Route`.
typedef enum MmRoute {
  MM_ROUTE_HOLLAND = 0,
  MM_ROUTE_EXTENDED = 1,
  MM_ROUTE_NUMERIC_ONLY = 2,
  MM_ROUTE_REFUTED_NUMERIC = 3,
} MmRoute;

// Opaque weight sequence handle.
typedef struct MmWeights MmWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a weight sequence from `len` positive doubles.
//
// # Safety
// `w` must point to `len` readable doubles and `out` must be writable.
// The handle must be released with [`mm_weights_free`].
enum MmStatus mm_weights_new(const double *w, size_t len, struct MmWeights **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `handle` must come from [`mm_weights_new`] and not have been freed.
void mm_weights_free(struct MmWeights *handle);

// Number of weights, or 0 for NULL.
//
// # Safety
// `handle` must be NULL or live.
size_t mm_weights_len(const struct MmWeights *handle);

// Weighted power mean with probability weights `q` (summing to 1).
//
// # Safety
// `q` and `x` must each point to `len` doubles; `out` must be writable.
enum MmStatus mm_power_mean(const double *q, const double *x, size_t len, double r, double *out);

// Rado increment at level `k` (2 <= k <= n).
//
// # Safety
// `x` must point to `len` doubles; `out` must be writable.
enum MmStatus mm_rado_increment(const struct MmWeights *handle,
                                const double *x,
                                size_t len,
                                double s,
                                size_t k,
                                double *out);

// Popoviciu (log-domain) increment at level `k`.
//
// # Safety
// As [`mm_rado_increment`].
enum MmStatus mm_popoviciu_increment(const struct MmWeights *handle,
                                     const double *x,
                                     size_t len,
                                     size_t k,
                                     double *out);

// Left side of the ratio form of the level-n inequality; at most 1 when it holds.
//
// # Safety
// As [`mm_rado_increment`].
enum MmStatus mm_ratio_form_lhs(const struct MmWeights *handle,
                                const double *x,
                                size_t len,
                                double *out);

// Nanjundiah's condition. `out_holds` receives the verdict.
//
// # Safety
// `handle` must be live; `out_holds` writable.
enum MmStatus mm_nanjundiah_condition(const struct MmWeights *handle, bool *out_holds);

// Holland's condition: the single margin `W_{n-1}^2 - w_n S_{n-2}` and its verdict.
//
// # Safety
// `handle` must be live; both out-pointers writable.
enum MmStatus mm_holland_condition(const struct MmWeights *handle,
                                   double *out_margin,
                                   bool *out_holds);

// The four extended-condition margins (a)..(d) and the verdict. Needs n >= 3.
//
// # Safety
// `out_margins` must point to 4 writable doubles; `out_holds` writable.
enum MmStatus mm_extended_conditions(const struct MmWeights *handle,
                                     double *out_margins,
                                     bool *out_holds);

// Critical last weight `W_{n-1}^2 / S_{n-2}` for a head `w_1..w_{n-1}`.
//
// # Safety
// `head` must be live; `out` writable.
enum MmStatus mm_critical_weight(const struct MmWeights *head, double *out);

// Reduced objective at `y` (length n-1, inside the box).
//
// # Safety
// `y` must point to `len` doubles; `out` writable.
enum MmStatus mm_objective_f(const struct MmWeights *handle,
                             const double *y,
                             size_t len,
                             double *out);

// Larger of the face suprema of the reduced objective `g`. Needs n >= 3.
//
// # Safety
// `handle` must be live; `out` writable.
enum MmStatus mm_boundary_bound(const struct MmWeights *handle, double *out);

// Bound on interior stationary values; only when Holland's condition fails.
//
// # Safety
// `handle` must be live; `out` writable.
enum MmStatus mm_interior_bound(const struct MmWeights *handle, double *out);

// Runs certification. `resolution == 0` picks the lattice size automatically.
//
// # Safety
// `handle` must be live; out-pointers writable.
enum MmStatus mm_certify(const struct MmWeights *handle,
                         size_t resolution,
                         enum MmRoute *out_route,
                         double *out_slack);

// Certificate as a JSON string. Free it with [`mm_string_free`].
//
// # Safety
// `handle` must be live; `out_json` writable.
enum MmStatus mm_certify_json(const struct MmWeights *handle, size_t resolution, char **out_json);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void mm_string_free(char *s);

// Message for the last failure on this thread, or NULL. Valid until the
// next failing call on the same thread.
const char *mm_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXMEAN_H */
