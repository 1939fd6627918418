#ifndef WITTKIT_H
#define WITTKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WkStatus {
  WK_STATUS_OK = 0,
  WK_STATUS_NULL_POINTER = 1,
  WK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed ring spec, vector or kind name.
   */
  WK_STATUS_PARSE = 3,
  /**
   * A well-formed request the mathematics rejects.
   */
  WK_STATUS_DOMAIN = 4,
  WK_STATUS_BUFFER_TOO_SMALL = 5,
  WK_STATUS_IO = 6,
  WK_STATUS_PANIC = 7,
} WkStatus;

typedef enum WkWittOp {
  WK_WITT_OP_ADD = 0,
  WK_WITT_OP_SUB = 1,
  WK_WITT_OP_MUL = 2,
  WK_WITT_OP_NEG = 3,
  WK_WITT_OP_TRUNCATE = 4,
  WK_WITT_OP_DELTA = 5,
  WK_WITT_OP_FROBENIUS = 6,
  WK_WITT_OP_VERSCHIEBUNG = 7,
  WK_WITT_OP_GHOST = 8,
  WK_WITT_OP_TO_WITT_COORDS = 9,
  WK_WITT_OP_FROM_WITT_COORDS = 10,
} WkWittOp;

/**
 * Directory of cached universal polynomials.
 */
typedef struct WkCache WkCache;

/**
 * W_n over a finite local ring, in Buium–Joyal coordinates.
 */
typedef struct WkWitt WkWitt;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf`.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes; `needed` may be null.
 */
enum WkStatus wk_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Opens (creating if needed) a polynomial cache directory.
 *
 * # Safety
 * `dir` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WkStatus wk_cache_open(const char *dir, struct WkCache **out);

/**
 * # Safety
 * `cache` must come from [`wk_cache_open`] and not be used afterwards.
 */
void wk_cache_free(struct WkCache *cache);

/**
 * Loads levels 0..=n of a law family from the cache, generating missing
 * files, and makes them the process-wide laws used by Witt arithmetic.
 * `kind` is one of sum, product, negation, ghost, wittghost, bjfromwitt,
 * wittfrombj.
 *
 * # Safety
 * `cache` must be a live handle and `kind` a NUL-terminated string.
 */
enum WkStatus wk_cache_install(const struct WkCache *cache, uint64_t p, size_t n, const char *kind);

/**
 * Creates W_n(R) for a ring spec such as `f5`, `z9` or `gf:2:3`.
 *
 * # Safety
 * `ring` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WkStatus wk_witt_new(uint64_t p, size_t n, const char *ring, struct WkWitt **out);

/**
 * # Safety
 * `w` must come from [`wk_witt_new`] and not be used afterwards.
 */
void wk_witt_free(struct WkWitt *w);

/**
 * Number of components n+1, or 0 for a null handle.
 *
 * # Safety
 * `w` must be null or a live handle.
 */
size_t wk_witt_len(const struct WkWitt *w);

/**
 * Applies `op` to vectors written as `(a0,...,an)`. `b` is read only by
 * the binary operations and may be null otherwise. Verschiebung reads a
 * vector of length n and returns one of length n+1.
 *
 * # Safety
 * `w` must be a live handle, `a` (and `b` when used) NUL-terminated strings,
 * `buf` valid for `cap` bytes; `needed` may be null.
 */
enum WkStatus wk_witt_apply(const struct WkWitt *w,
                            enum WkWittOp op,
                            const char *a,
                            const char *b,
                            char *buf,
                            size_t cap,
                            size_t *needed);

/**
 * j-invariant of the canonical lift of y^2 = x^3 + ax + b over F_p,
 * modulo p^k, as a decimal string.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes; `needed` may be null.
 */
enum WkStatus wk_canonical_lift_j(uint64_t p,
                                  int64_t a,
                                  int64_t b,
                                  uint32_t k,
                                  char *buf,
                                  size_t cap,
                                  size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WITTKIT_H */
