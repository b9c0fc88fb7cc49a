#ifndef REGAMMA_H
#define REGAMMA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RegammaFlag {
  REGAMMA_FLAG_OK = 0,
  REGAMMA_FLAG_NEAR_INTEGER_AMPLIFICATION = 1,
  REGAMMA_FLAG_TOLERANCE_NOT_MET = 2,
} RegammaFlag;

typedef enum RegammaMethod {
  REGAMMA_METHOD_REAL_AXIS = 0,
  REGAMMA_METHOD_POWER_SUBST = 1,
  REGAMMA_METHOD_LOG_FORM = 2,
  REGAMMA_METHOD_CAUCHY_SAALSCHUTZ = 3,
  REGAMMA_METHOD_HANKEL = 4,
} RegammaMethod;

typedef enum RegammaStatus {
  REGAMMA_STATUS_OK = 0,
  REGAMMA_STATUS_NULL_POINTER = 1,
  REGAMMA_STATUS_INTEGER_ARGUMENT = 2,
  REGAMMA_STATUS_NON_POSITIVE_ARGUMENT = 3,
  REGAMMA_STATUS_OVERFLOW = 4,
  REGAMMA_STATUS_POLE = 5,
  REGAMMA_STATUS_INVALID_CONFIG = 6,
  REGAMMA_STATUS_CONTOUR_DEGENERATE = 7,
  REGAMMA_STATUS_INVALID_ARGUMENT = 8,
  REGAMMA_STATUS_INTERNAL = 9,
} RegammaStatus;

/*
 Tolerance and contour settings shared by calls on one context.
 */
typedef struct RegammaContext RegammaContext;

typedef struct RegammaResult {
  double value;
  double abs_error;
  uint64_t evaluations;
  enum RegammaFlag flag;
  /*
   Non-zero when the value came from a closed form, not quadrature.
   */
  uint8_t exact;
} RegammaResult;

typedef struct RegammaComplex {
  double re;
  double im;
} RegammaComplex;

typedef struct RegammaComplexResult {
  struct RegammaComplex value;
  double abs_error;
  uint64_t evaluations;
  enum RegammaFlag flag;
} RegammaComplexResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 New context with relative tolerance `1e-8` and the default contour.
 Free it with `regamma_context_free`.
 */
struct RegammaContext *regamma_context_new(void);

/*
 Release a context. Null is ignored.

 # Safety
 `ctx` must come from `regamma_context_new` and not be used afterwards.
 */
void regamma_context_free(struct RegammaContext *ctx);

/*
 # Safety
 `ctx` must be a live context.
 */
enum RegammaStatus regamma_context_set_eps_rel(struct RegammaContext *ctx, double eps_rel);

/*
 Ray angle `delta` in `(π/2, π)` and arc radius `r0 > 0`; the outer radius
 stays automatic.

 # Safety
 `ctx` must be a live context.
 */
enum RegammaStatus regamma_context_set_contour(struct RegammaContext *ctx, double delta, double r0);

/*
 `1/Γ(z)` by `method` (a `RegammaMethod` value).

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_recip_gamma(const struct RegammaContext *ctx,
                                       double z,
                                       int32_t method,
                                       struct RegammaResult *out);

/*
 `Γ(z)`.

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_gamma(const struct RegammaContext *ctx,
                                 double z,
                                 struct RegammaResult *out);

/*
 `Γ(-z)` for non-integer `z > 0`.

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_gamma_negative(const struct RegammaContext *ctx,
                                          double z,
                                          struct RegammaResult *out);

/*
 `Γ(-z)` from the integral with one more subtracted term.

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_gamma_cauchy_saalschutz(const struct RegammaContext *ctx,
                                                   double z,
                                                   struct RegammaResult *out);

/*
 `1/Γ(-z)` for `z > 0`.

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_recip_gamma_neg_reflection(const struct RegammaContext *ctx,
                                                      double z,
                                                      struct RegammaResult *out);

/*
 `Γ(a)/Γ(b)` for `a, b > 0`.

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_gamma_ratio(const struct RegammaContext *ctx,
                                       double a,
                                       double b,
                                       struct RegammaResult *out);

/*
 `1/Γ(z)` along the context's Hankel contour; the imaginary part should be
 round-off.

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_hankel_recip_gamma(const struct RegammaContext *ctx,
                                              double z,
                                              struct RegammaComplexResult *out);

/*
 Inverse Laplace transform of `Γ(k+1)/s^{k+1}` at `t`, i.e. `t^k`.

 # Safety
 `ctx` must be a live context and `out` writable.
 */
enum RegammaStatus regamma_inverse_laplace_monomial(const struct RegammaContext *ctx,
                                                    double k,
                                                    double t,
                                                    double *out);

/*
 Static description of a status code (a `RegammaStatus` value). Never null.
 */
const char *regamma_status_message(int32_t status);

/*
 Library version, e.g. `"0.1.0"`.
 */
const char *regamma_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGAMMA_H */
