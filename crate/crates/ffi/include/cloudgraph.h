#ifndef CLOUDGRAPH_H
#define CLOUDGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CgSide {
  CG_SIDE_A = 0,
  CG_SIDE_S = 1,
  CG_SIDE_B = 2,
} CgSide;

typedef enum CgStatus {
  CG_STATUS_OK = 0,
  CG_STATUS_NULL_ARGUMENT = 1,
  CG_STATUS_INVALID_ARGUMENT = 2,
  CG_STATUS_PARSE = 3,
  CG_STATUS_IO = 4,
  // Self-loop, repeated edge, disconnected input or a violated density bound.
  CG_STATUS_INVALID_GRAPH = 5,
  CG_STATUS_FORMAT = 6,
  CG_STATUS_OUT_OF_RANGE = 7,
  CG_STATUS_INTERNAL = 8,
  CG_STATUS_PANIC = 9,
} CgStatus;

// Succinct adjacency encoding.
typedef struct CgEncoding CgEncoding;

// Simple undirected graph.
typedef struct CgGraph CgGraph;

// Balanced vertex separator.
typedef struct CgSeparator CgSeparator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Owned by the library.
const char *cg_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *cg_version(void);

// Builds a graph on `n` vertices from `m` edges given as `2m` labels.
//
// # Safety
// `edges` must point to `2 * m` readable `u32` values (or be null when `m` is 0);
// `out` must be writable.
enum CgStatus cg_graph_new(size_t n, const uint32_t *edges, size_t m, struct CgGraph **out);

// Reads a canonical (`metis == false`) or METIS graph file. Disconnected
// graphs are rejected.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum CgStatus cg_graph_load(const char *path, bool metis, struct CgGraph **out);

// # Safety
// `g` must be null or a handle from this library that was not yet freed.
void cg_graph_free(struct CgGraph *g);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t cg_graph_vertex_count(const struct CgGraph *g);

// Edge count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t cg_graph_edge_count(const struct CgGraph *g);

// Encodes a connected planar graph with cloud factor `c` and mini-graph
// exponent `delta`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum CgStatus cg_encoding_build(const struct CgGraph *g,
                                double c,
                                uint32_t delta,
                                struct CgEncoding **out);

// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum CgStatus cg_encoding_load(const char *path, struct CgEncoding **out);

// # Safety
// `e` must be a live handle; `path` must be a NUL-terminated string.
enum CgStatus cg_encoding_save(const struct CgEncoding *e, const char *path);

// # Safety
// `e` must be null or a handle from this library that was not yet freed.
void cg_encoding_free(struct CgEncoding *e);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `e` must be null or a live handle.
size_t cg_encoding_vertex_count(const struct CgEncoding *e);

// # Safety
// `e` must be a live handle; `out` must be writable.
enum CgStatus cg_encoding_adjacent(const struct CgEncoding *e, uint32_t u, uint32_t v, bool *out);

// # Safety
// `e` must be a live handle; `out` must be writable.
enum CgStatus cg_encoding_degree(const struct CgEncoding *e, uint32_t v, size_t *out);

// Writes up to `cap` neighbours of `v` in increasing order into `buf` and
// the full degree into `len`. Pass `cap == 0` to query the size.
//
// # Safety
// `e` must be a live handle; `buf` must have room for `cap` values;
// `len` must be writable.
enum CgStatus cg_encoding_neighbors(const struct CgEncoding *e,
                                    uint32_t v,
                                    uint32_t *buf,
                                    size_t cap,
                                    size_t *len);

// Finds a balanced separator of a connected planar graph; `alpha` bounds
// each side's share of the vertices and must lie in [2/3, 1).
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum CgStatus cg_separator_find(const struct CgGraph *g,
                                double c,
                                double alpha,
                                struct CgSeparator **out);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum CgStatus cg_separator_side(const struct CgSeparator *s, uint32_t v, enum CgSide *out);

// Sizes of `A`, `S` and `B`; null outputs are skipped.
//
// # Safety
// `s` must be a live handle; non-null outputs must be writable.
enum CgStatus cg_separator_sizes(const struct CgSeparator *s, size_t *a, size_t *sep, size_t *b);

// # Safety
// `s` must be null or a handle from this library that was not yet freed.
void cg_separator_free(struct CgSeparator *s);

// Writes a tree decomposition in PACE `.td` format to `path` and its width
// to `width` when non-null.
//
// # Safety
// `g` must be a live handle; `path` must be a NUL-terminated string.
enum CgStatus cg_treedec_write(const struct CgGraph *g, double c, const char *path, size_t *width);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLOUDGRAPH_H */
