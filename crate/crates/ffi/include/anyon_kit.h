#ifndef ANYON_KIT_H
#define ANYON_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum {
  AK_STATUS_OK = 0,
  AK_STATUS_NULL_POINTER = 1,
  AK_STATUS_INVALID_ARGUMENT = 2,
  AK_STATUS_PARSE = 3,
  AK_STATUS_INVALID_FAMILY = 4,
  AK_STATUS_NOT_EVEN = 5,
  AK_STATUS_SINGULAR = 6,
  AK_STATUS_NOT_POSITIVE_DEFINITE = 7,
  AK_STATUS_BUDGET_EXCEEDED = 8,
  AK_STATUS_NO_SOLUTION = 9,
  AK_STATUS_VERIFICATION = 10,
  AK_STATUS_OUT_OF_RANGE = 11,
  AK_STATUS_INTERNAL = 12,
} AkStatus;

/**
 * A square integer matrix.
 */
typedef struct AkMatrix AkMatrix;

/**
 * A metric group parsed from a spec string.
 */
typedef struct AkModel AkModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *ak_last_error(void);

/**
 * Parses a spec such as `"E[2]*A[2]"`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
AkStatus ak_model_parse(const char *spec, AkModel **out);

/**
 * # Safety
 * `model` must come from [`ak_model_parse`] and not be used afterwards.
 */
void ak_model_free(AkModel *model);

/**
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_model_order(const AkModel *model, uint64_t *out);

/**
 * Central charge mod 8 from the Gauss sum.
 *
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_model_central_charge(const AkModel *model, uint8_t *out);

/**
 * `|Aut(A, q)|` by enumeration.
 *
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_model_aut_order(const AkModel *model, uint64_t *out);

/**
 * A K-matrix realizing `model` (Wall route, or positive definite).
 *
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_kmatrix(const AkModel *model, bool positive_definite, AkMatrix **out);

/**
 * Copies an `n x n` row-major matrix.
 *
 * # Safety
 * `entries` must point to `n * n` values and `out` must be valid.
 */
AkStatus ak_matrix_new(uintptr_t n, const int64_t *entries, AkMatrix **out);

/**
 * # Safety
 * `matrix` must come from this library and not be used afterwards.
 */
void ak_matrix_free(AkMatrix *matrix);

/**
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_matrix_dim(const AkMatrix *matrix, uintptr_t *out);

/**
 * Entry `(i, j)`; [`AkStatus::OutOfRange`] if the indices are out of
 * bounds or the entry does not fit in 64 bits.
 *
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_matrix_get(const AkMatrix *matrix, uintptr_t i, uintptr_t j, int64_t *out);

/**
 * Sets `passed` to whether `matrix` realizes `model`.
 *
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_verify(const AkMatrix *matrix, const AkModel *model, bool *passed);

/**
 * Complement of the lattice inside its eight-copy self-dual gluing.
 *
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_complement(const AkMatrix *matrix, AkMatrix **out);

/**
 * Extremality score as a fraction `num / den` in lowest terms.
 *
 * # Safety
 * Pointers must be valid.
 */
AkStatus ak_extremality(const AkMatrix *matrix, int64_t *num, int64_t *den);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANYON_KIT_H */
