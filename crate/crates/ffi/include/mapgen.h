#ifndef MAPGEN_H
#define MAPGEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum MapgenStatus {
  MAPGEN_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MAPGEN_STATUS_NULL_POINTER = 1,
  /**
   * Malformed text input.
   */
  MAPGEN_STATUS_PARSE = 2,
  /**
   * An argument outside the domain of the operation.
   */
  MAPGEN_STATUS_DOMAIN = 3,
  /**
   * A configured cap was exceeded.
   */
  MAPGEN_STATUS_RESOURCE = 4,
  /**
   * A precondition of the operation was broken.
   */
  MAPGEN_STATUS_CONTRACT = 5,
  /**
   * A bug in the library, including caught panics.
   */
  MAPGEN_STATUS_INTERNAL = 6,
} MapgenStatus;

/**
 * Values accepted for the `mode` argument of [`mapgen_enumerate`].
 */
typedef enum MapgenMode {
  MAPGEN_MODE_FINAL = 0,
  MAPGEN_MODE_INCREMENTAL = 1,
  MAPGEN_MODE_LIST = 2,
  MAPGEN_MODE_EXHAUSTIVE = 3,
} MapgenMode;

/**
 * Values accepted for the `target_kind` argument of [`mapgen_enumerate`].
 */
typedef enum MapgenTargetKind {
  MAPGEN_TARGET_KIND_GENUS = 0,
  MAPGEN_TARGET_KIND_FACES = 1,
} MapgenTargetKind;

/**
 * An undirected simple graph.
 */
typedef struct MapgenGraph MapgenGraph;

/**
 * The maps produced by one enumeration, as rotation-code records.
 */
typedef struct MapgenResult MapgenResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mapgen_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mapgen_version(void);

/**
 * Parses one graph6 record into a new graph handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum MapgenStatus mapgen_graph_from_graph6(const char *text, struct MapgenGraph **out);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs of 0-based
 * endpoints stored consecutively in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (it may be null
 * when `edge_count` is 0) and `out` must be writable.
 */
enum MapgenStatus mapgen_graph_from_edges(size_t n,
                                          const uint32_t *edges,
                                          size_t edge_count,
                                          struct MapgenGraph **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void mapgen_graph_free(struct MapgenGraph *graph);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t mapgen_graph_order(const struct MapgenGraph *graph);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t mapgen_graph_size(const struct MapgenGraph *graph);

/**
 * Order of the automorphism group, failing with `RESOURCE` above `cap`.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum MapgenStatus mapgen_automorphism_count(const struct MapgenGraph *graph,
                                            uint64_t cap,
                                            uint64_t *out);

/**
 * Number of rotation systems up to mirror image, as a decimal string to be
 * released with [`mapgen_string_free`].
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum MapgenStatus mapgen_total_embedding_count(const struct MapgenGraph *graph, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `text` must come from this library and not be used afterwards.
 */
void mapgen_string_free(char *text);

/**
 * Enumerates the maps of a connected graph meeting the target, one per
 * isomorphism class. `limit` 0 means no limit.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum MapgenStatus mapgen_enumerate(const struct MapgenGraph *graph,
                                   uint32_t target_kind,
                                   uint32_t target_value,
                                   uint32_t mode,
                                   uint64_t limit,
                                   struct MapgenResult **out);

/**
 * Number of maps in a result, or 0 for a null handle.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t mapgen_result_count(const struct MapgenResult *result);

/**
 * Search nodes visited, or 0 for a null handle.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t mapgen_result_nodes_visited(const struct MapgenResult *result);

/**
 * Rotation-code record `index` (1-based labels, one line per vertex), or
 * null when out of range. Owned by the result.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
const char *mapgen_result_record(const struct MapgenResult *result, size_t index);

/**
 * Releases a result handle. Null is ignored.
 *
 * # Safety
 * `result` must come from this library and not be used afterwards.
 */
void mapgen_result_free(struct MapgenResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAPGEN_H */
