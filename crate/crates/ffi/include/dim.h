#ifndef DIM_H
#define DIM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DimResultKind {
  DIM_RESULT_KIND_FOUND = 0,
  DIM_RESULT_KIND_NONE = 1,
  DIM_RESULT_KIND_HYPOTHESIS_VIOLATED = 2,
} DimResultKind;

/**
 * Status codes; zero is success.
 */
typedef enum DimStatus {
  DIM_STATUS_OK = 0,
  DIM_STATUS_NULL_POINTER = 1,
  DIM_STATUS_INVALID_GRAPH = 2,
  DIM_STATUS_PARSE_ERROR = 3,
  DIM_STATUS_BUDGET_EXCEEDED = 4,
  DIM_STATUS_BUFFER_TOO_SMALL = 5,
  DIM_STATUS_PANIC = 6,
} DimStatus;

/**
 * Opaque graph handle.
 */
typedef struct DimGraph DimGraph;

/**
 * Opaque solver result handle.
 */
typedef struct DimResult DimResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *dim_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dim_version(void);

/**
 * Builds a graph on `n` vertices from `m` pairs stored flat in `edges`
 * (`2 * m` entries).
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (it may be null when
 * `m == 0`), and `out` must be writable.
 */
enum DimStatus dim_graph_new(size_t n, const size_t *edges, size_t m, struct DimGraph **out);

/**
 * Parses one graph in the edge-list text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum DimStatus dim_graph_parse(const char *text, struct DimGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from `dim_graph_new`/`dim_graph_parse` not yet freed.
 */
void dim_graph_free(struct DimGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t dim_graph_vertex_count(const struct DimGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t dim_graph_edge_count(const struct DimGraph *g);

/**
 * Runs the solver.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum DimStatus dim_solve(const struct DimGraph *g, struct DimResult **out);

/**
 * # Safety
 * `r` must be a live result handle.
 */
enum DimResultKind dim_result_kind(const struct DimResult *r);

/**
 * Number of matching edges in a `Found` result.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t dim_result_edge_count(const struct DimResult *r);

/**
 * Copies the matching edges into `buf` as flat pairs; `cap` counts pairs.
 *
 * # Safety
 * `r` must be a live result handle and `buf` must have room for `2 * cap` values.
 */
enum DimStatus dim_result_edges(const struct DimResult *r, size_t *buf, size_t cap);

/**
 * Number of witness vertices in a `HypothesisViolated` result.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t dim_result_witness_len(const struct DimResult *r);

/**
 * Copies the witness vertices, in role order, into `buf`.
 *
 * # Safety
 * `r` must be a live result handle and `buf` must have room for `cap` values.
 */
enum DimStatus dim_result_witness(const struct DimResult *r, size_t *buf, size_t cap);

/**
 * # Safety
 * `r` must be null or a handle from `dim_solve` not yet freed.
 */
void dim_result_free(struct DimResult *r);

/**
 * Exhaustive existence check, bounded by `DIM_ORACLE_BUDGET`.
 *
 * # Safety
 * `g` must be a live graph handle and `exists` writable.
 */
enum DimStatus dim_oracle_exists(const struct DimGraph *g, bool *exists);

/**
 * Checks whether the `m` flat pairs in `edges` form a d.i.m. of `g`.
 * Pairs that are not edges, or do not form a matching, give `false`.
 *
 * # Safety
 * `g` must be a live graph handle, `edges` must point to `2 * m` values
 * (or be null when `m == 0`), and `valid` must be writable.
 */
enum DimStatus dim_verify(const struct DimGraph *g, const size_t *edges, size_t m, bool *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIM_H */
