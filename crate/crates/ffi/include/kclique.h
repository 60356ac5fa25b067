#ifndef KCLIQUE_H
#define KCLIQUE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum KcStatus {
  KC_STATUS_OK = 0,
  KC_STATUS_NULL_POINTER = 1,
  KC_STATUS_INVALID_ARGUMENT = 2,
  KC_STATUS_IO = 3,
  KC_STATUS_PARSE = 4,
  KC_STATUS_FORMAT = 5,
  KC_STATUS_OVERFLOW = 6,
  KC_STATUS_ORACLE_GUARD = 7,
  KC_STATUS_PANIC = 8,
} KcStatus;

/**
 * Values for `KcConfig::ordering`.
 */
typedef enum KcOrdering {
  KC_ORDERING_CORE = 0,
  KC_ORDERING_DEGREE = 1,
} KcOrdering;

/**
 * Values for `KcConfig::strategy`.
 */
typedef enum KcStrategy {
  KC_STRATEGY_BASELINE = 0,
  KC_STRATEGY_CITRON = 1,
} KcStrategy;

/**
 * Values for `KcConfig::schedule`.
 */
typedef enum KcSchedule {
  KC_SCHEDULE_STATIC = 0,
  KC_SCHEDULE_CYCLIC = 1,
  KC_SCHEDULE_DYNAMIC = 2,
} KcSchedule;

/**
 * Values for `KcConfig::prune`.
 */
typedef enum KcPrune {
  KC_PRUNE_OFF = 0,
  KC_PRUNE_TIGHT = 1,
  KC_PRUNE_PAPER = 2,
} KcPrune;

/**
 * Opaque graph handle.
 */
typedef struct KcGraph KcGraph;

typedef struct KcConfig {
  uint32_t k;
  /**
   * A `KcOrdering` value.
   */
  uint32_t ordering;
  /**
   * A `KcStrategy` value.
   */
  uint32_t strategy;
  /**
   * Worker threads; 0 uses every available core.
   */
  uint32_t workers;
  /**
   * A `KcSchedule` value.
   */
  uint32_t schedule;
  /**
   * Chunk size for `KC_SCHEDULE_DYNAMIC`.
   */
  uint32_t chunk;
  /**
   * A `KcPrune` value.
   */
  uint32_t prune;
  /**
   * Nonzero to count array accesses.
   */
  uint8_t instrument;
} KcConfig;

/**
 * Statistics of one `kc_count` call. Counters that are unavailable hold
 * `UINT64_MAX`.
 */
typedef struct KcStats {
  double ordering_seconds;
  double counting_seconds;
  double total_seconds;
  uint64_t array_accesses;
  uint64_t max_subgraph_bytes;
  uint64_t max_out_degree;
  uint64_t work_model;
  double load_imbalance;
} KcStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library defaults: k = 3, degree ordering, compact subgraphs, every
 * core, dynamic schedule with chunk 64, tight pruning, no instrumentation.
 */
struct KcConfig kc_config_default(void);

/**
 * Loads a text edge list, or a `.csrbin` cache by extension.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum KcStatus kc_graph_load(const char *path, struct KcGraph **out);

/**
 * Builds a graph from `num_edges` pairs stored flat in `edges`
 * (`u0, v0, u1, v1, ...`). Self-loops and duplicates are dropped.
 *
 * # Safety
 * `edges` must point to `2 * num_edges` readable values (it may be null
 * when `num_edges` is 0) and `out` must be writable.
 */
enum KcStatus kc_graph_from_edges(uint32_t num_vertices,
                                  const uint32_t *edges,
                                  size_t num_edges,
                                  struct KcGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void kc_graph_free(struct KcGraph *graph);

/**
 * Vertex count, or 0 for null.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
uint64_t kc_graph_num_vertices(const struct KcGraph *graph);

/**
 * Undirected edge count, or 0 for null.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
uint64_t kc_graph_num_edges(const struct KcGraph *graph);

/**
 * Counts `config->k`-cliques. `stats` may be null.
 *
 * # Safety
 * `graph` must be a live handle; `config` and `count` must be valid
 * pointers; `stats` must be null or writable.
 */
enum KcStatus kc_count(const struct KcGraph *graph,
                       const struct KcConfig *config,
                       uint64_t *count,
                       struct KcStats *stats);

/**
 * Reference count by exhaustive search; refuses graphs above 10,000
 * vertices with `KC_STATUS_ORACLE_GUARD`.
 *
 * # Safety
 * `graph` must be a live handle and `count` writable.
 */
enum KcStatus kc_brute_force_count(const struct KcGraph *graph, uint32_t k, uint64_t *count);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *kc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KCLIQUE_H */
