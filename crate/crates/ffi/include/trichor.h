#ifndef TRICHOR_H
#define TRICHOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrichorStatus {
  TRICHOR_STATUS_OK = 0,
  TRICHOR_STATUS_NULL_POINTER = 1,
  TRICHOR_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Input is degenerate: collinear triples, duplicates, not simple.
   */
  TRICHOR_STATUS_GEOMETRY = 3,
  TRICHOR_STATUS_CAP_EXCEEDED = 4,
  TRICHOR_STATUS_OUT_OF_RANGE = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  TRICHOR_STATUS_INTERNAL = 6,
} TrichorStatus;

/**
 * Opaque point set.
 */
typedef struct TrichorPointSet TrichorPointSet;

/**
 * Opaque simple polygon.
 */
typedef struct TrichorPolygon TrichorPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *trichor_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *trichor_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void trichor_string_free(char *s);

/**
 * `C_m` as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TrichorStatus trichor_catalan(uint32_t m, char **out);

/**
 * `C^(r)_n` as a decimal string; `OutOfRange` unless `2r <= n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TrichorStatus trichor_catalan_generalized(uint32_t n, uint32_t r, char **out);

/**
 * Builds a point set from coordinate arrays of length `len`. Rejects sets
 * that are not in general position.
 *
 * # Safety
 * `xs` and `ys` must point to `len` readable values; `out` must be valid.
 */
enum TrichorStatus trichor_point_set_new(const int64_t *xs,
                                         const int64_t *ys,
                                         size_t len,
                                         struct TrichorPointSet **out);

/**
 * # Safety
 * `set` must come from [`trichor_point_set_new`] and not have been freed.
 */
void trichor_point_set_free(struct TrichorPointSet *set);

/**
 * Number of points, or 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t trichor_point_set_len(const struct TrichorPointSet *set);

/**
 * Number of triangulations as a decimal string. A set whose hull is a
 * triangle with points inside is counted as the framed set; `cap = 0`
 * means no cap.
 *
 * # Safety
 * `set` must be a live handle; `out` must be valid.
 */
enum TrichorStatus trichor_count_triangulations(const struct TrichorPointSet *set,
                                                uint64_t cap,
                                                char **out);

/**
 * Runs the charging audit and writes the JSON report to `out`;
 * `*passed` is set to whether every check held. `cap = 0` means no cap.
 *
 * # Safety
 * `set` must be a live handle; `out` and `passed` must be valid.
 */
enum TrichorStatus trichor_audit(const struct TrichorPointSet *set,
                                 uint64_t cap,
                                 char **out,
                                 bool *passed);

/**
 * Builds a simple polygon from CCW vertex arrays of length `len`.
 *
 * # Safety
 * `xs` and `ys` must point to `len` readable values; `out` must be valid.
 */
enum TrichorStatus trichor_polygon_new(const int64_t *xs,
                                       const int64_t *ys,
                                       size_t len,
                                       struct TrichorPolygon **out);

/**
 * # Safety
 * `poly` must come from [`trichor_polygon_new`] and not have been freed.
 */
void trichor_polygon_free(struct TrichorPolygon *poly);

/**
 * Number of triangulations of the polygon as a decimal string.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid.
 */
enum TrichorStatus trichor_polygon_count(const struct TrichorPolygon *poly, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRICHOR_H */
