#ifndef HOOKSCHUR_H
#define HOOKSCHUR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Non-negative values match the command-line exit codes.
 */
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_CHECK_FAILED = 1,
  HS_STATUS_INVALID = 2,
  HS_STATUS_SIZE_LIMIT = 3,
  HS_STATUS_NULL_POINTER = -1,
  HS_STATUS_PANIC = -2,
} HsStatus;

/**
 * `N_m(V)` together with its cohomology.
 */
typedef struct HsComplex HsComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the library and
 * valid until the next call on the same thread.
 */
const char *hs_last_error(void);

/**
 * Builds `N_m(V)` for `dim V = n` over `F_p` and computes its cohomology.
 *
 * # Safety
 * `out` must be a valid pointer. On success `*out` owns a handle to release with
 * [`hs_complex_free`].
 */
enum HsStatus hs_complex_build(uint32_t m, uint32_t n, uint32_t p, struct HsComplex **out);

/**
 * # Safety
 * `c` must be null or a handle from [`hs_complex_build`] not yet freed.
 */
void hs_complex_free(struct HsComplex *c);

/**
 * Number of terms, `m`. Zero for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t hs_complex_num_terms(const struct HsComplex *c);

/**
 * Dimension of term `i`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum HsStatus hs_complex_term_dim(const struct HsComplex *c, size_t i, size_t *out);

/**
 * Dimension of `H^i`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum HsStatus hs_complex_cohomology_dim(const struct HsComplex *c, size_t i, size_t *out);

/**
 * `dim S_{(m/p-i,1^i)}(V)`, the predicted dimension of `H^i`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum HsStatus hs_complex_expected_cohomology_dim(const struct HsComplex *c, size_t i, size_t *out);

/**
 * Whether every cohomology dimension and character matches its prediction.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum HsStatus hs_complex_cohomology_matches(const struct HsComplex *c, bool *out);

/**
 * The cohomology report as JSON. Release the string with [`hs_string_free`].
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum HsStatus hs_complex_report_json(const struct HsComplex *c, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void hs_string_free(char *s);

/**
 * Dimension of `S_{(a,1^b)}(V)` for `dim V = n` over `F_p`. Zero when `a <= 0`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_hook_module_dimension(int64_t a, uint32_t b, uint32_t n, uint32_t p, size_t *out);

/**
 * Checks `p_m = Σ (-1)^i s_{(m-i,1^i)}` in `n` variables.
 *
 * # Safety
 * `holds` must be a valid pointer.
 */
enum HsStatus hs_verify_power_sum_identity(uint32_t m, uint32_t n, bool *holds);

/**
 * Checks that `ψ^k[V]` computed by the alternating hook sum is the power sum `p_k`.
 *
 * # Safety
 * `holds` must be a valid pointer.
 */
enum HsStatus hs_adams_power_sum_check(int64_t k, uint32_t n, bool *holds);

/**
 * `C(n, k) mod p` by Lucas digits.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HsStatus hs_binomial_mod_p(uint64_t n, uint64_t k, uint32_t p, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOOKSCHUR_H */
