#ifndef ROTSURF_H
#define ROTSURF_H

/* Generated from the rotsurf-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every FFI call.
typedef enum RsStatus {
  RS_STATUS_OK = 0,
  // A required pointer argument was null.
  RS_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  RS_STATUS_INVALID_UTF8 = 2,
  // An expression failed to parse.
  RS_STATUS_PARSE_ERROR = 3,
  // No builtin curve has the requested name.
  RS_STATUS_UNKNOWN_CURVE = 4,
  // An argument was out of range (pair digits, generator id, shape, ...).
  RS_STATUS_BAD_ARGUMENT = 5,
  // A parameter left the curve domain, or the curve needs a domain.
  RS_STATUS_DOMAIN_ERROR = 6,
  // The metric or frame degenerates at the requested point, or the
  // evaluation left the representable range.
  RS_STATUS_DEGENERATE = 7,
  // The operation needs a restricted patch and the curve does not vanish
  // on the components the pair requires.
  RS_STATUS_NOT_RESTRICTED = 8,
  // A panic was caught at the boundary; report this as a bug.
  RS_STATUS_INTERNAL = 9,
} RsStatus;

// Opaque profile curve handle.
typedef struct RsCurve RsCurve;

// Opaque surface patch handle.
typedef struct RsSurface RsSurface;

// Induced metric coefficients and tangent causal signs.
typedef struct RsMetric {
  double e;
  double f;
  double g;
  int32_t sign_t;
  int32_t sign_s;
} RsMetric;

// Projection-road curvature data at one parameter point.
typedef struct RsCurvature {
  // Curvature scalar.
  double gauss;
  // Mean curvature vector.
  double mean[4];
  // Absolute scalar square of the mean curvature vector.
  double mean_norm_sq;
} RsCurvature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string.
const char *rs_version(void);

// Static name of a status code.
const char *rs_status_name(enum RsStatus status);

// Indefinite ambient inner product of two length-4 vectors.
//
// # Safety
// `u` and `v` must point to 4 readable doubles, `out` to one writable.
enum RsStatus rs_inner_product(const double *u, const double *v, double *out);

// Matrix of rotational generator `id` (1..=6), row-major into `out16`.
//
// # Safety
// `out16` must point to 16 writable doubles.
enum RsStatus rs_generator(uint32_t id, double *out16);

// Closed one parameter subgroup matrix of generator `id` at parameter `p`.
//
// # Safety
// `out16` must point to 16 writable doubles.
enum RsStatus rs_one_param_matrix(uint32_t id, double p, double *out16);

// Two parameter subgroup matrix of a commuting pair (14, 23, or 56).
//
// # Safety
// `out16` must point to 16 writable doubles.
enum RsStatus rs_two_param_matrix(uint32_t pair, double p1, double p2, double *out16);

// Bracket table of the six generators into `out36`, row-major: entry
// `[i][j]` is 0 when `[O_{i+1}, O_{j+1}]` vanishes, and otherwise `+-k`
// meaning `+-O_k`.
//
// # Safety
// `out36` must point to 36 writable ints.
enum RsStatus rs_bracket_table(int32_t *out36);

// Create a builtin curve by name. `shape` may be null to keep the default
// shape constant. The handle must be released with `rs_curve_free`.
//
// # Safety
// `name` must be a NUL-terminated string; `shape` null or one readable
// double; `out` one writable pointer.
enum RsStatus rs_curve_builtin(const char *name, const double *shape, struct RsCurve **out);

// Parse a curve from four comma separated component expressions in `s`.
// `shape` may be null when no component mentions `c`. The domain is
// `[lo, hi]` when `lo < hi` and the whole line otherwise (pass infinities
// or `0, 0` for unbounded). The handle must be released with
// `rs_curve_free`.
//
// # Safety
// `source` must be a NUL-terminated string; `shape` null or one readable
// double; `out` one writable pointer.
enum RsStatus rs_curve_parse(const char *source,
                             const double *shape,
                             double lo,
                             double hi,
                             struct RsCurve **out);

// Evaluate a curve at `s`. Each of `values`, `d1`, `d2` is either null or a
// buffer of 4 doubles receiving component values, first, and second
// derivatives.
//
// # Safety
// `curve` must be a live handle; non-null buffers must hold 4 writable
// doubles.
enum RsStatus rs_curve_eval(const struct RsCurve *curve,
                            double s,
                            double *values,
                            double *d1,
                            double *d2);

// Release a curve handle. Null is a no-op.
//
// # Safety
// `curve` must be null or a pointer from `rs_curve_builtin`/`rs_curve_parse`
// not freed before.
void rs_curve_free(struct RsCurve *curve);

// Build a surface patch from a pair (14, 23, 56), a curve (copied, the
// handle stays owned by the caller), and two reparametrisation expressions
// in `t` (null means the identity). With `restricted` set the curve must
// vanish on the pair's two required components. The handle must be released
// with `rs_surface_free`.
//
// # Safety
// `curve` must be a live handle; `reparam1`/`reparam2` null or
// NUL-terminated strings; `out` one writable pointer.
enum RsStatus rs_surface_new(uint32_t pair,
                             const struct RsCurve *curve,
                             const char *reparam1,
                             const char *reparam2,
                             bool restricted,
                             struct RsSurface **out);

// Release a surface handle. Null is a no-op.
//
// # Safety
// `surface` must be null or a pointer from `rs_surface_new` not freed
// before.
void rs_surface_free(struct RsSurface *surface);

// Patch position at `(t, s)` into `out4`.
//
// # Safety
// `surface` must be a live handle, `out4` 4 writable doubles.
enum RsStatus rs_surface_point(const struct RsSurface *surface, double t, double s, double *out4);

// Induced metric at `(t, s)`.
//
// # Safety
// `surface` must be a live handle, `out` one writable struct.
enum RsStatus rs_surface_metric(const struct RsSurface *surface,
                                double t,
                                double s,
                                struct RsMetric *out);

// Projection-road curvature at `(t, s)`: curvature scalar, mean curvature
// vector, and its absolute scalar square. Works for restricted and general
// patches.
//
// # Safety
// `surface` must be a live handle, `out` one writable struct.
enum RsStatus rs_surface_curvature(const struct RsSurface *surface,
                                   double t,
                                   double s,
                                   struct RsCurvature *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROTSURF_H */
