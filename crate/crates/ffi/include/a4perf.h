#ifndef A4PERF_H
#define A4PERF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define A4_OK 0

/**
 * A required pointer argument was null.
 */
#define A4_ERR_NULL 1

/**
 * Input text was not UTF-8 or did not parse.
 */
#define A4_ERR_PARSE 2

/**
 * The input is well-formed but mathematically invalid or out of range.
 */
#define A4_ERR_DOMAIN 3

/**
 * An internal consistency check failed.
 */
#define A4_ERR_INVARIANT 4

/**
 * A panic was caught at the boundary.
 */
#define A4_ERR_PANIC 5

#define A4_FIELD_F2 2

#define A4_FIELD_F4 4

/**
 * A validated perfect complex.
 */
typedef struct A4Complex A4Complex;

/**
 * A classifying triple together with its group.
 */
typedef struct A4Triple A4Triple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call into this library on the same thread.
 */
const char *a4_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void a4_string_free(char *s);

/**
 * Parse and validate a complex file.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
int a4_complex_from_json(const char *json, struct A4Complex **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
int a4_complex_to_json(const struct A4Complex *c, char **out);

/**
 * Total dimension of the homology.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
int a4_complex_homology_dim(const struct A4Complex *c, size_t *out);

/**
 * # Safety
 * `c` must be null or a handle from this library, not used afterwards.
 */
void a4_complex_free(struct A4Complex *c);

/**
 * Parse a triple file and check it is admissible.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
int a4_triple_from_json(const char *json, struct A4Triple **out);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
int a4_triple_to_json(const struct A4Triple *t, char **out);

/**
 * # Safety
 * `t` must be null or a handle from this library, not used afterwards.
 */
void a4_triple_free(struct A4Triple *t);

/**
 * The classifying triple of a complex with four-dimensional homology.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
int a4_classify(const struct A4Complex *c, struct A4Triple **out);

/**
 * A complex realizing the triple.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
int a4_realize(const struct A4Triple *t, struct A4Complex **out);

/**
 * The finiteness-obstruction report as JSON; `*vanishes` is set to 1 if
 * the obstruction vanishes and 0 otherwise. Either output may be null.
 *
 * # Safety
 * `c` must be a live handle; non-null outputs must be writable.
 */
int a4_obstruction(const struct A4Complex *c, int *vanishes, char **report);

/**
 * Number of parameter ideals with generator degrees `(d1, d2)` over
 * `field` (`A4_FIELD_F2` or `A4_FIELD_F4`), optionally filtered.
 *
 * # Safety
 * `out` must be writable.
 */
int a4_enumerate_count(int field, size_t d1, size_t d2, bool invariant, bool steenrod, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* A4PERF_H */
