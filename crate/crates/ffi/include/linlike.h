#ifndef LINLIKE_H
#define LINLIKE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible entry point.
 */
typedef enum LinlikeStatus {
  LINLIKE_STATUS_OK = 0,
  LINLIKE_STATUS_NULL_POINTER = 1,
  LINLIKE_STATUS_INVALID_UTF8 = 2,
  LINLIKE_STATUS_PARSE = 3,
  LINLIKE_STATUS_NOT_SUBMERSION = 4,
  LINLIKE_STATUS_ORACLE_SCOPE = 5,
  LINLIKE_STATUS_RENDER = 6,
  LINLIKE_STATUS_INVALID_ARGUMENT = 7,
  LINLIKE_STATUS_INTERNAL = 8,
} LinlikeStatus;

/**
 * A validated map together with its configuration.
 */
typedef struct LinlikeMap LinlikeMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates `expr`, storing a new handle in `*out`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string and `out` valid for writing.
 */
enum LinlikeStatus linlike_map_parse(const char *expr, struct LinlikeMap **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from [`linlike_map_parse`] not yet freed.
 */
void linlike_map_free(struct LinlikeMap *m);

/**
 * Number of real zeros of `s`, or -1 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
int64_t linlike_map_vertical_count(const struct LinlikeMap *m);

/**
 * Configuration JSON of `m`.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum LinlikeStatus linlike_analyze_json(const struct LinlikeMap *m, char **out);

/**
 * Verdict JSON comparing `p` and `q`.
 *
 * # Safety
 * `p`, `q` must be live handles and `out` valid for writing.
 */
enum LinlikeStatus linlike_compare_json(const struct LinlikeMap *p,
                                        const struct LinlikeMap *q,
                                        char **out);

/**
 * Oracle report JSON. `transformation` may be null, meaning the witness of
 * the comparison or Identity; `budget` 0 selects the default.
 *
 * # Safety
 * `p`, `q` must be live handles, `transformation` null or a NUL-terminated
 * string, and `out` valid for writing.
 */
enum LinlikeStatus linlike_oracle_json(const struct LinlikeMap *p,
                                       const struct LinlikeMap *q,
                                       const char *transformation,
                                       uint32_t budget,
                                       char **out);

/**
 * SVG portrait of `m` in the default viewport at `width` by `height` pixels.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for writing.
 */
enum LinlikeStatus linlike_render_svg(const struct LinlikeMap *m,
                                      uint32_t width,
                                      uint32_t height,
                                      char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void linlike_string_free(char *s);

/**
 * JSON error object of the last failed call on this thread, or null.
 * Valid until the next call into the library on the same thread.
 */
const char *linlike_last_error(void);

/**
 * Library version as a static string.
 */
const char *linlike_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINLIKE_H */
