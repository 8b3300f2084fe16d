#ifndef SCHUBLOC_H
#define SCHUBLOC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_ARGUMENT = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  SL_STATUS_PARSE = 3,
  SL_STATUS_ILL_FORMED = 4,
  SL_STATUS_UNSUPPORTED = 5,
  SL_STATUS_NOT_IN_IMAGE = 6,
  SL_STATUS_DIVERGES = 7,
  SL_STATUS_PANIC = 8,
} SlStatus;

/**
 * Finite Weyl group with its Hecke algebra and, on first use, its SMC table.
 */
typedef struct SlGroup SlGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *sl_last_error(void);

/**
 * Builds a group from a type string such as `"A3"`, `"B2"` or `"GL4"`.
 *
 * # Safety
 * `ty` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SlStatus sl_group_new(const char *ty, struct SlGroup **out);

/**
 * # Safety
 * `g` must come from [`sl_group_new`] and not be freed twice. Null is ignored.
 */
void sl_group_free(struct SlGroup *g);

/**
 * # Safety
 * `g` must be a live group and `out` a valid pointer.
 */
enum SlStatus sl_group_order(const struct SlGroup *g, size_t *out);

/**
 * `R_{u,w}` as ascending coefficients in `q`, space separated.
 * Words are dot-separated, e.g. `"s1.s2"`, or `"e"`.
 *
 * # Safety
 * Strings must be NUL-terminated; free `*out` with [`sl_string_free`].
 */
enum SlStatus sl_rpoly(const struct SlGroup *g, const char *u, const char *w, char **out);

/**
 * Restriction of the SMC class of the Schubert cell of `w` to the fixed point `u`.
 *
 * # Safety
 * Strings must be NUL-terminated; free `*out` with [`sl_string_free`].
 */
enum SlStatus sl_smc_restrict(const struct SlGroup *g, const char *u, const char *w, char **out);

/**
 * Checks the affine restriction identity for every pair `(u, w)` of the
 * partial flag variety of `lambda`. `*passed` is 1 when all rows agree.
 *
 * # Safety
 * `lambda` must point to `len` integers.
 */
enum SlStatus sl_verify_main(const char *ty, const int64_t *lambda, size_t len, int32_t *passed);

/**
 * Number of `k`-row periodic pipe dreams with reading permutation `f`, given in window notation.
 *
 * # Safety
 * `f` must point to `n` integers.
 */
enum SlStatus sl_pipedream_count(const int64_t *f, size_t n, size_t k, uint64_t *out);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void sl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUBLOC_H */
