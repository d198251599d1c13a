/* psl C ABI — generated by cbindgen; do not edit. */

#pragma once

/* Generated with cbindgen:0.26.0 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status of every fallible call in this ABI.
typedef enum PslStatus {
  PSL_STATUS_OK = 0,
  PSL_STATUS_CAPACITY = 1,
  PSL_STATUS_OVERFLOW = 2,
  PSL_STATUS_OUT_OF_PROVEN_RANGE = 3,
  PSL_STATUS_INVALID_ARGUMENT = 4,
  PSL_STATUS_DOMAIN = 5,
  PSL_STATUS_NO_ROOT = 6,
  PSL_STATUS_DIGEST_MISMATCH = 7,
  PSL_STATUS_CORRUPT_CHECKPOINT = 8,
  PSL_STATUS_INSUFFICIENT_DATA = 9,
  PSL_STATUS_IO = 10,
  PSL_STATUS_PARSE = 11,
  PSL_STATUS_UNKNOWN_SUITE = 12,
  PSL_STATUS_NULL_POINTER = 13,
  PSL_STATUS_BUFFER_TOO_SMALL = 14,
  PSL_STATUS_INVALID_UTF8 = 15,
} PslStatus;

// Opaque prime table handle.
typedef struct PslPrimeTable PslPrimeTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the calling thread's last error message into `buf` (NUL-terminated,
// truncated to fit). Returns the full message length in bytes.
//
// # Safety
// `buf` must point to `buf_len` writable bytes, or be null (query length).
uintptr_t psl_last_error(char *buf, uintptr_t buf_len);

// Sieve all primes up to `limit` (inclusive) and hand back an owned table.
// Free it with `psl_prime_table_free`.
//
// # Safety
// `out` must be a valid pointer to a table-handle slot.
enum PslStatus psl_prime_table_new(uint64_t limit, struct PslPrimeTable **out);

// Release a table created by `psl_prime_table_new`. Null is a no-op.
//
// # Safety
// `table` must be a pointer previously returned by `psl_prime_table_new`
// and not freed since.
void psl_prime_table_free(struct PslPrimeTable *table);

// π(x): number of primes ≤ x. Grows the table when x exceeds its limit.
//
// # Safety
// `table` must be a live handle; `out` a valid u64 slot.
enum PslStatus psl_prime_table_pi(struct PslPrimeTable *table, uint64_t x, uint64_t *out);

// The n-th prime (p_1 = 2), extending the table as needed.
//
// # Safety
// `table` must be a live handle; `out` a valid u64 slot.
enum PslStatus psl_prime_table_nth(struct PslPrimeTable *table, uint64_t n, uint64_t *out);

// Deterministic primality for a decimal value below 3.317e24.
// Writes 1 (prime) or 0 (composite) to `out`.
//
// # Safety
// `value_decimal` must be a NUL-terminated string; `out` a valid i32 slot.
enum PslStatus psl_is_prime(const char *value_decimal, int32_t *out);

// The n-th term of a sum sequence (`plain`, `offset:<d>`, `shifted:<k>`)
// as a decimal string.
//
// # Safety
// `table` must be a live handle; `variant` a NUL-terminated string; `buf`
// must point to `buf_len` writable bytes.
enum PslStatus psl_sum_term(struct PslPrimeTable *table,
                            const char *variant,
                            uint64_t n,
                            char *buf,
                            uintptr_t buf_len);

// Count the primes among the first `n_max` terms of a sum sequence.
// `threads = 0` uses the default worker pool.
//
// # Safety
// `table` must be a live handle; `variant` a NUL-terminated string; `out`
// a valid u64 slot.
enum PslStatus psl_scan_count(struct PslPrimeTable *table,
                              const char *variant,
                              uint64_t n_max,
                              uintptr_t threads,
                              uint64_t *out);

// Scan a sum sequence and write the hits CSV (`m,k,q`) to `hits_path`;
// optionally write the final checkpoint JSON to `checkpoint_path` (pass
// null to skip). Returns the number of hits through `out_hits`.
//
// # Safety
// `table` must be a live handle; paths are NUL-terminated strings
// (`checkpoint_path` may be null); `out_hits` may be null.
enum PslStatus psl_scan_to_csv(struct PslPrimeTable *table,
                               const char *variant,
                               uint64_t n_max,
                               uintptr_t threads,
                               const char *hits_path,
                               const char *checkpoint_path,
                               uint64_t *out_hits);

// Solve q = 2 M^5 k² ln²k (ln k + ln ln k + 2 ln M) for M, with q decimal.
//
// # Safety
// `q_decimal` must be a NUL-terminated string; output pointers may be null
// if the corresponding value is not wanted (at least one should not be).
enum PslStatus psl_solve_mk(uint64_t k,
                            const char *q_decimal,
                            double *out_m_k,
                            double *out_residual);

// Logarithmic integral ∫_2^x dt/ln t.
//
// # Safety
// `out` must be a valid f64 slot.
enum PslStatus psl_li(double x, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus
