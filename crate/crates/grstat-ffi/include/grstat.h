/* C interface to the greatest-root statistics library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of a C-ABI call.
typedef enum GrsStatus {
  // Success.
  GRS_STATUS_OK = 0,
  // A required pointer argument was null.
  GRS_STATUS_NULL_POINTER = 1,
  // An argument was outside its domain.
  GRS_STATUS_INVALID_ARGUMENT = 2,
  // The computation failed numerically.
  GRS_STATUS_NUMERICAL_ERROR = 3,
} GrsStatus;

// Opaque tabulated Tracy-Widom distribution (beta = 1 or 2).
typedef struct GrsTwTable GrsTwTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a Tracy-Widom table for `beta_index` (1 or 2). On success writes
// a handle to `out`; release it with [`grs_tw_table_free`].
//
// # Safety
// `out` must be a valid pointer to writable memory for one pointer.
enum GrsStatus grs_tw_table_new(uint32_t beta_index, struct GrsTwTable **out);

// Releases a table created by [`grs_tw_table_new`]. Null is a no-op.
//
// # Safety
// `table` must be a pointer previously returned by [`grs_tw_table_new`]
// that has not been freed yet.
void grs_tw_table_free(struct GrsTwTable *table);

// F_beta(s) from a table handle.
//
// # Safety
// `table` must be a live handle from [`grs_tw_table_new`]; `out` must be
// valid for one f64 write.
enum GrsStatus grs_tw_cdf(const struct GrsTwTable *table, double s, double *out);

// Quantile of F_beta from a table handle; `prob` must lie in (0, 1).
//
// # Safety
// As for [`grs_tw_cdf`].
enum GrsStatus grs_tw_quantile(const struct GrsTwTable *table, double prob, double *out);

// Logit-scale centering and scaling constants for (p, m, n).
//
// # Safety
// `out_center` and `out_scale` must each be valid for one f64 write.
enum GrsStatus grs_logit_scaling(uint32_t p,
                                 uint32_t m,
                                 uint32_t n,
                                 bool complex_data,
                                 double *out_center,
                                 double *out_scale);

// Theta-scale centering and scaling constants (real ensemble).
//
// # Safety
// As for [`grs_logit_scaling`].
enum GrsStatus grs_theta_scaling(uint32_t p,
                                 uint32_t m,
                                 uint32_t n,
                                 double *out_center,
                                 double *out_scale);

// Upper-tail p-value of an observed greatest root `theta` in (0, 1).
//
// # Safety
// `out` must be valid for one f64 write.
enum GrsStatus grs_pvalue(uint32_t p,
                          uint32_t m,
                          uint32_t n,
                          bool complex_data,
                          double theta,
                          double *out);

// Critical value of the greatest root at significance level `alpha`:
// the returned theta satisfies P(root > theta) = alpha.
//
// # Safety
// `out` must be valid for one f64 write.
enum GrsStatus grs_critical_value(uint32_t p,
                                  uint32_t m,
                                  uint32_t n,
                                  bool complex_data,
                                  double alpha,
                                  double *out);

// P(smallest root <= theta) under the reflected approximation.
//
// # Safety
// `out` must be valid for one f64 write.
enum GrsStatus grs_smallest_root_cdf(uint32_t p, uint32_t m, uint32_t n, double theta, double *out);

// Static description of a status code.
const char *grs_status_message(enum GrsStatus status);

// Library version as a static C string.
const char *grs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
