#ifndef DIVCODES_H
#define DIVCODES_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call.
 */
typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_UTF8 = 2,
  DC_STATUS_PARSE = 3,
  DC_STATUS_RANK_DEFICIENT = 4,
  DC_STATUS_TOO_LARGE = 5,
  DC_STATUS_PRECONDITION = 6,
  DC_STATUS_INFEASIBLE = 7,
  /**
   * A count does not fit the caller's 64-bit buffer.
   */
  DC_STATUS_OVERFLOW = 8,
  DC_STATUS_BUFFER_TOO_SMALL = 9,
  /**
   * A mathematical check did not hold.
   */
  DC_STATUS_FAILS = 10,
  DC_STATUS_INTERNAL = 99,
} DcStatus;

/**
 * Existence status of a projective divisible code of a given length.
 */
typedef enum DcLengthStatus {
  DC_LENGTH_STATUS_EXISTS = 0,
  DC_LENGTH_STATUS_NOT_EXISTS = 1,
  DC_LENGTH_STATUS_OPEN = 2,
} DcLengthStatus;

/**
 * Opaque generator matrix.
 */
typedef struct DcMatrix DcMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or NULL. The pointer is
 * owned by the library and valid until the next failing call.
 */
const char *dc_last_error(void);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void dc_string_free(char *s);

/**
 * Parses `n k c_1 ... c_n` with hexadecimal columns.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum DcStatus dc_matrix_parse(const char *text, struct DcMatrix **out);

/**
 * Builds one of the named codes (`C1`, `C2`, `C3`, `golay24`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum DcStatus dc_matrix_named(const char *name, struct DcMatrix **out);

/**
 * # Safety
 * `m` must be NULL or a live handle; it is invalid afterwards.
 */
void dc_matrix_free(struct DcMatrix *m);

/**
 * Length of the code, 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
size_t dc_matrix_n(const struct DcMatrix *m);

/**
 * Number of rows, 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
size_t dc_matrix_k(const struct DcMatrix *m);

/**
 * Text form of the matrix, in the format accepted by [`dc_matrix_parse`].
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DcStatus dc_matrix_to_string(const struct DcMatrix *m, char **out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DcStatus dc_matrix_is_projective(const struct DcMatrix *m, bool *out);

/**
 * Writes `A_0, ..., A_n` into `buf`, which must hold `n + 1` entries.
 *
 * # Safety
 * `m` must be a live handle and `buf` valid for `len` writes.
 */
enum DcStatus dc_weight_distribution(const struct DcMatrix *m, uint64_t *buf, size_t len);

/**
 * MacWilliams transform of `a[0..=n]` for a code of dimension `k`; writes
 * `B_0, ..., B_n` into `out` (`n + 1` entries, where `a_len = n + 1`).
 *
 * # Safety
 * `a` must be valid for `a_len` reads and `out` for `a_len` writes.
 */
enum DcStatus dc_macwilliams(const uint64_t *a, size_t a_len, size_t k, uint64_t *out);

/**
 * Canonical key (sorted hexadecimal column list) and automorphism group
 * order in decimal. Either output may be NULL.
 *
 * # Safety
 * `m` must be a live handle; non-NULL outputs must be writable.
 */
enum DcStatus dc_canonical_form(const struct DcMatrix *m, char **key, char **aut_order);

/**
 * Known status of a projective `q^r`-divisible code of length `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DcStatus dc_length_status(uint32_t q, uint32_t r, size_t n, enum DcLengthStatus *out);

/**
 * Nonnegative integer solutions of the first `identities` MacWilliams
 * identities for length `n`, nonzero weights `weights[0..len]` and
 * dimension `k` (0 scans every dimension), as TSV with a header line.
 *
 * # Safety
 * `weights` must be valid for `len` reads and `out` writable.
 */
enum DcStatus dc_feasible_distributions(size_t n,
                                        const size_t *weights,
                                        size_t len,
                                        size_t k,
                                        size_t identities,
                                        bool projective,
                                        char **out);

/**
 * Runs the length-59 nonexistence check. Returns `Ok` when every step
 * holds and `Fails` otherwise; `report` (may be NULL) receives the
 * line-oriented records.
 *
 * # Safety
 * `report` must be NULL or writable.
 */
enum DcStatus dc_verify59(char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIVCODES_H */
