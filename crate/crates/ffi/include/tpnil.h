#ifndef TPNIL_H
#define TPNIL_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TpnilStatus {
  TPNIL_STATUS_OK = 0,
  TPNIL_STATUS_INVALID_ARGUMENT = 1,
  TPNIL_STATUS_NULL_POINTER = 2,
  TPNIL_STATUS_OUT_OF_RANGE = 3,
  TPNIL_STATUS_OVERFLOW = 4,
  TPNIL_STATUS_PANIC = 5,
} TpnilStatus;

/**
 * Reduced homology of one weight piece.
 */
typedef struct TpnilHomology TpnilHomology;

/**
 * A truncated `TP_j` factor table with its verdicts.
 */
typedef struct TpnilTpReport TpnilTpReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *tpnil_last_error(void);

const char *tpnil_version(void);

/**
 * Computes reduced integral homology of the weight-`i` piece of `N^cy(Π_k)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle pointer.
 */
enum TpnilStatus tpnil_homology_new(uint32_t k, uint64_t i, struct TpnilHomology **out);

/**
 * # Safety
 * `h` must be null or a handle from `tpnil_homology_new` not yet freed.
 */
void tpnil_homology_free(struct TpnilHomology *h);

/**
 * Number of degrees reported, `0..n`. Zero for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t tpnil_homology_num_degrees(const struct TpnilHomology *h);

/**
 * Number of nondegenerate simplices in `degree`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum TpnilStatus tpnil_homology_basis_size(const struct TpnilHomology *h,
                                           size_t degree,
                                           size_t *out);

/**
 * Free rank of `H̃_degree`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum TpnilStatus tpnil_homology_rank(const struct TpnilHomology *h, size_t degree, size_t *out);

/**
 * Number of torsion invariant factors of `H̃_degree`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum TpnilStatus tpnil_homology_torsion_len(const struct TpnilHomology *h,
                                            size_t degree,
                                            size_t *out);

/**
 * The `index`-th torsion coefficient of `H̃_degree`; `Overflow` if it exceeds 64 bits.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum TpnilStatus tpnil_homology_torsion(const struct TpnilHomology *h,
                                        size_t degree,
                                        size_t index,
                                        uint64_t *out);

/**
 * JSON rendering of the homology table; NULL on failure.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
char *tpnil_homology_to_json(const struct TpnilHomology *h);

/**
 * Checks the weight-`i` homology against `Z` in degrees `2⌊(i-1)/k⌋` and one above.
 *
 * # Safety
 * `matches` must be writable.
 */
enum TpnilStatus tpnil_verify_weight_piece(uint32_t k, uint64_t i, bool *matches);

/**
 * Builds the factor table of `TP_j(F_p[x]/(x^k), (x))` for weights `1..=truncation`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle pointer.
 */
enum TpnilStatus tpnil_tp_new(uint64_t p,
                              uint32_t k,
                              int64_t j,
                              uint64_t truncation,
                              struct TpnilTpReport **out);

/**
 * # Safety
 * `r` must be null or a handle from `tpnil_tp_new` not yet freed.
 */
void tpnil_tp_free(struct TpnilTpReport *r);

/**
 * Number of listed factors; zero in even degrees or for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
size_t tpnil_tp_num_factors(const struct TpnilTpReport *r);

/**
 * The factor `Z/p^exponent` at position `index`, with its source weight and branch.
 *
 * # Safety
 * `r` must be a live handle; the three output pointers must be writable.
 */
enum TpnilStatus tpnil_tp_factor(const struct TpnilTpReport *r,
                                 size_t index,
                                 uint64_t *weight,
                                 uint32_t *exponent,
                                 bool *multiple_of_k);

/**
 * # Safety
 * `r` must be a live handle; both output pointers must be writable.
 */
enum TpnilStatus tpnil_tp_verdicts(const struct TpnilTpReport *r,
                                   bool *integral_iso,
                                   bool *p_inverted_iso);

/**
 * JSON rendering of the report; NULL on failure.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
char *tpnil_tp_to_json(const struct TpnilTpReport *r);

/**
 * Nil-invariance verdicts for `(p, k)`. `exponent_sup` receives the supremum of
 * factor exponents, or -1 when it is infinite.
 *
 * # Safety
 * All output pointers must be writable.
 */
enum TpnilStatus tpnil_verdict(uint64_t p,
                               uint32_t k,
                               bool *integral_iso,
                               bool *p_inverted_iso,
                               int64_t *exponent_sup);

/**
 * # Safety
 * `out` must be writable.
 */
enum TpnilStatus tpnil_p_adic_valuation(uint64_t p, uint64_t i, uint32_t *out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void tpnil_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TPNIL_H */
