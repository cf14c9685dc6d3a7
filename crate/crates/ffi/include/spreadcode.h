/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SPREADCODE_H
#define SPREADCODE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  /**
   * Decoding finished without a codeword within the unique-decoding radius.
   */
  SC_STATUS_DECODE_FAILURE = 1,
  SC_STATUS_NULL_POINTER = 2,
  /**
   * Invalid `(q, k, r)` or modulus.
   */
  SC_STATUS_INVALID_PARAMS = 3,
  /**
   * Malformed points, matrices or buffer sizes.
   */
  SC_STATUS_INVALID_INPUT = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  SC_STATUS_INTERNAL = 5,
} ScStatus;

/**
 * Opaque code handle.
 */
typedef struct ScCode ScCode;

/**
 * Summary of a code instance.
 */
typedef struct ScCodeInfo {
  uint32_t q;
  size_t k;
  size_t r;
  size_t n;
  size_t min_distance;
  /**
   * Number of codewords, or 0 if it does not fit in 64 bits.
   */
  uint64_t cardinality;
} ScCodeInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `sc_*` call on the same thread.
 */
const char *sc_last_error_message(void);

/**
 * Creates the spread code over `F_q` with `r` blocks of size `k`, using the
 * library's default irreducible polynomial.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum ScStatus sc_code_new(uint32_t q, size_t k, size_t r, struct ScCode **out);

/**
 * Like [`sc_code_new`] with the monic modulus `x^k + p_{k-1} x^{k-1} + … + p_0`
 * given as `p[0..k]`.
 *
 * # Safety
 * `p` must point to `k` readable values and `out` to writable storage for
 * one handle.
 */
enum ScStatus sc_code_new_with_poly(uint32_t q,
                                    size_t r,
                                    const uint32_t *p,
                                    size_t k,
                                    struct ScCode **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `code` must be null or a handle from `sc_code_new*` not yet freed.
 */
void sc_code_free(struct ScCode *code);

/**
 * # Safety
 * `code` must be a live handle and `info` writable.
 */
enum ScStatus sc_code_info(const struct ScCode *code, struct ScCodeInfo *info);

/**
 * Writes the degree-`k` modulus coefficients `p_0 … p_{k-1}` into `p`.
 *
 * # Safety
 * `code` must be a live handle and `p` must have room for `len` values.
 */
enum ScStatus sc_code_modulus(const struct ScCode *code, uint32_t *p, size_t len);

/**
 * Encodes the projective point given as `r·k` coefficients (`r` elements of
 * `F_{q^k}`, `k` coefficients each) into its codeword. The `k×n` RREF basis
 * is written row-major to `basis`; `basis_len` must be at least `k·n`.
 *
 * # Safety
 * `code` must be a live handle, `point` must hold `r·k` values and `basis`
 * `basis_len` writable values.
 */
enum ScStatus sc_encode(const struct ScCode *code,
                        const uint32_t *point,
                        uint32_t *basis,
                        size_t basis_len);

/**
 * Decodes the received space spanned by the `nrows` rows of `rows`
 * (row-major, `n` columns each). On success the codeword basis (`k×n`) goes
 * to `basis` and, if `point` is non-null, its normalized point (`r·k`
 * coefficients) to `point`. Returns `SC_STATUS_DECODE_FAILURE` when no
 * codeword lies within distance `< k`; `reason` (optional) then receives 1
 * for no codeword in range, 2 for ambiguous candidates and 3 for an
 * unusable received space.
 *
 * # Safety
 * `code` must be a live handle, `rows` must hold `nrows·n` values, `basis`
 * `basis_len` writable values and `point` (if non-null) `point_len`
 * writable values. `reason` may be null.
 */
enum ScStatus sc_decode(const struct ScCode *code,
                        const uint32_t *rows,
                        size_t nrows,
                        uint32_t *basis,
                        size_t basis_len,
                        uint32_t *point,
                        size_t point_len,
                        uint32_t *reason);

/**
 * Sets `*result` to whether the row space of `rows` is a codeword.
 *
 * # Safety
 * `code` must be a live handle, `rows` must hold `nrows·n` values and
 * `result` must be writable.
 */
enum ScStatus sc_is_codeword(const struct ScCode *code,
                             const uint32_t *rows,
                             size_t nrows,
                             bool *result);

/**
 * Subspace distance `dim(U+V) − dim(U∩V)` between two row spaces in `F_q^n`.
 *
 * # Safety
 * `code` must be a live handle, `a` and `b` must hold `a_rows·n` and
 * `b_rows·n` values, and `result` must be writable.
 */
enum ScStatus sc_subspace_distance(const struct ScCode *code,
                                   const uint32_t *a,
                                   size_t a_rows,
                                   const uint32_t *b,
                                   size_t b_rows,
                                   size_t *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPREADCODE_H */
