#ifndef CFK_CALC_H
#define CFK_CALC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CfkStatus {
  CFK_STATUS_OK = 0,
  CFK_STATUS_NULL_POINTER = 1,
  CFK_STATUS_INVALID_UTF8 = 2,
  CFK_STATUS_PARSE_ERROR = 3,
  CFK_STATUS_UNSUPPORTED = 4,
  CFK_STATUS_RANK_NOT_ONE = 5,
  CFK_STATUS_EPSILON_NOT_ONE = 6,
  CFK_STATUS_INVALID_INPUT = 7,
  CFK_STATUS_INTERNAL = 8,
  CFK_STATUS_PANIC = 9,
} CfkStatus;

/**
 * Opaque owner of a complex.
 */
typedef struct CfkComplexHandle CfkComplexHandle;

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *cfk_last_error_message(void);

/**
 * Builds the reduced class complex of a knot expression such as
 * `"C(D;3,4) + -T(3,4)"`.
 *
 * # Safety
 * `expr` must be a nul-terminated string; `out` must be writable.
 */
enum CfkStatus cfk_complex_from_expr(const char *expr, struct CfkComplexHandle **out);

/**
 * Parses the `cfk v1` text format. Complexes whose arrows break the
 * grading rules or whose differential does not square to zero are
 * rejected with `CFK_STATUS_INVALID_INPUT`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum CfkStatus cfk_complex_from_text(const char *text, struct CfkComplexHandle **out);

/**
 * Releases a handle. Passing null is allowed.
 *
 * # Safety
 * `h` must come from this library and not be used afterwards.
 */
void cfk_complex_free(struct CfkComplexHandle *h);

/**
 * Releases a string returned by this library. Passing null is allowed.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cfk_string_free(char *s);

/**
 * Canonical `cfk v1` text of the complex.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CfkStatus cfk_complex_to_text(const struct CfkComplexHandle *h, char **out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CfkStatus cfk_complex_generator_count(const struct CfkComplexHandle *h, size_t *out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CfkStatus cfk_tau(const struct CfkComplexHandle *h, int64_t *out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CfkStatus cfk_epsilon(const struct CfkComplexHandle *h, int8_t *out);

/**
 * Fails with `CFK_STATUS_EPSILON_NOT_ONE` unless epsilon is 1.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CfkStatus cfk_a1(const struct CfkComplexHandle *h, int64_t *out);

/**
 * Sets `*defined` to false (and leaves `*out` untouched) when a2 is
 * undefined.
 *
 * # Safety
 * `h` must be a live handle; `out` and `defined` must be writable.
 */
enum CfkStatus cfk_a2(const struct CfkComplexHandle *h, int64_t *out, bool *defined);

/**
 * Writes -1, 0 or 1 as the first class is smaller, equal or larger.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum CfkStatus cfk_class_cmp(const struct CfkComplexHandle *a,
                             const struct CfkComplexHandle *b,
                             int8_t *out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum CfkStatus cfk_tensor(const struct CfkComplexHandle *a,
                          const struct CfkComplexHandle *b,
                          struct CfkComplexHandle **out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CfkStatus cfk_dual(const struct CfkComplexHandle *h, struct CfkComplexHandle **out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum CfkStatus cfk_reduce(const struct CfkComplexHandle *h, struct CfkComplexHandle **out);

/**
 * Alexander polynomial of a knot expression, as text.
 *
 * # Safety
 * `expr` must be a nul-terminated string; `out` must be writable.
 */
enum CfkStatus cfk_alexander(const char *expr, char **out);

/**
 * `tau` of the `(p, q)` cable of a knot with the given `tau` and
 * `epsilon`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CfkStatus cfk_cable_tau(int64_t tau, int8_t epsilon, int64_t p, int64_t q, int64_t *out);

/**
 * Never null; exists so the header documents the status names.
 */
const char *cfk_status_name(enum CfkStatus status);

#endif  /* CFK_CALC_H */
