#ifndef FFH_H
#define FFH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FfhStatus {
  FFH_STATUS_OK = 0,
  FFH_STATUS_NULL_POINTER = 1,
  FFH_STATUS_INVALID_UTF8 = 2,
  FFH_STATUS_PARSE = 3,
  FFH_STATUS_INVALID_ARGUMENT = 4,
  FFH_STATUS_NUMERIC = 5,
  FFH_STATUS_PANIC = 6,
} FfhStatus;

typedef enum FfhClassKind {
  FFH_CLASS_KIND_ZERO = 0,
  FFH_CLASS_KIND_HOMOGENEOUS = 1,
  FFH_CLASS_KIND_INHOMOGENEOUS = 2,
  FFH_CLASS_KIND_NON_POLYNOMIAL = 3,
} FfhClassKind;

/**
 * Opaque transform result.
 */
typedef struct FfhTransform FfhTransform;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library.
 */
const char *ffh_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ffh_string_free(char *s);

/**
 * Exact biaxial transform of the seed `h` with the built-in monogenics.
 * With `normalize` the result is divided by its leading coefficient.
 *
 * # Safety
 * `h` must be a valid C string and `out` a valid pointer.
 */
enum FfhStatus ffh_transform_new(const char *h,
                                 uint32_t p,
                                 uint32_t q,
                                 uint32_t k,
                                 uint32_t l,
                                 bool normalize,
                                 struct FfhTransform **out);

/**
 * # Safety
 * `h` must be null or a handle from [`ffh_transform_new`], not yet freed.
 */
void ffh_transform_free(struct FfhTransform *h);

/**
 * # Safety
 * `h` must be a live handle; `kind` and `degree` valid pointers.
 */
enum FfhStatus ffh_transform_classification(const struct FfhTransform *h,
                                            enum FfhClassKind *kind,
                                            uint32_t *degree);

/**
 * The result as text, `(M) + (N)*wn` in `r`, `rho`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum FfhStatus ffh_transform_to_string(const struct FfhTransform *h, char **out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum FfhStatus ffh_transform_to_latex(const struct FfhTransform *h, char **out);

/**
 * Divisor applied by normalization, as a rational string and a power of π.
 *
 * # Safety
 * `h` must be a live handle; `rat` and `pi_pow` valid pointers.
 */
enum FfhStatus ffh_transform_normalization(const struct FfhTransform *h,
                                           char **rat,
                                           uint32_t *pi_pow);

/**
 * `M(r, ρ)` and `N(r, ρ)`.
 *
 * # Safety
 * `h` must be a live handle; `m` and `n` valid pointers.
 */
enum FfhStatus ffh_transform_eval(const struct FfhTransform *h,
                                  double r,
                                  double rho,
                                  double *m,
                                  double *n);

/**
 * Exact Vekua and Dirac checks.
 *
 * # Safety
 * `h` must be a live handle and `passed` a valid pointer.
 */
enum FfhStatus ffh_transform_verify(const struct FfhTransform *h, bool *passed);

/**
 * # Safety
 * `kind` and `degree` must be valid pointers.
 */
enum FfhStatus ffh_classify_power(uint32_t n,
                                  uint32_t k,
                                  uint32_t l,
                                  uint32_t p,
                                  uint32_t q,
                                  enum FfhClassKind *kind,
                                  uint32_t *degree);

/**
 * Numeric `M`, `N` at `(r, ρ)`. `h` is a polynomial seed or `1/(1+z^2)`;
 * `quad_order` 0 selects the default.
 *
 * # Safety
 * `h` must be a valid C string; `m` and `n` valid pointers.
 */
enum FfhStatus ffh_transform_numeric(const char *h,
                                     uint32_t p,
                                     uint32_t q,
                                     uint32_t k,
                                     uint32_t l,
                                     double r,
                                     double rho,
                                     uint32_t quad_order,
                                     double *m,
                                     double *n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FFH_H */
