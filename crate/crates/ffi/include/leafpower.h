#ifndef LEAFPOWER_H
#define LEAFPOWER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  /*
   The answer is no: not a member, no root exists.
   */
  LP_STATUS_NO = 1,
  LP_STATUS_NULL_POINTER = 2,
  LP_STATUS_INVALID_ARGUMENT = 3,
  LP_STATUS_PARSE = 4,
  /*
   A search bound was hit before an answer was found.
   */
  LP_STATUS_INCONCLUSIVE = 5,
  LP_STATUS_CONSTRUCTION = 6,
  LP_STATUS_PANIC = 7,
} LpStatus;

typedef enum LpTreeFormat {
  LP_TREE_FORMAT_EDGELIST = 0,
  LP_TREE_FORMAT_DOT = 1,
  LP_TREE_FORMAT_NEWICK = 2,
} LpTreeFormat;

/*
 Opaque graph handle.
 */
typedef struct LpGraph LpGraph;

/*
 Opaque leaf-root handle.
 */
typedef struct LpTree LpTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. Valid until
 the next call into this library on the same thread.
 */
const char *lp_last_error(void);

/*
 Parses the edge-list format: a `<n> <m>` header, then `m` lines `<u> <v>`.

 # Safety
 `text` must be a NUL-terminated string and `out` writable.
 */
enum LpStatus lp_graph_parse(const char *text, struct LpGraph **out);

/*
 Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.

 # Safety
 `edges` must point to `2 * m` readable values (or be null when `m == 0`)
 and `out` must be writable.
 */
enum LpStatus lp_graph_from_edges(uintptr_t n,
                                  const uintptr_t *edges,
                                  uintptr_t m,
                                  struct LpGraph **out);

/*
 # Safety
 `g` must be null or a handle from this library not yet freed.
 */
void lp_graph_free(struct LpGraph *g);

/*
 Number of vertices, or 0 for a null handle.

 # Safety
 `g` must be null or a live handle.
 */
uintptr_t lp_graph_vertex_count(const struct LpGraph *g);

/*
 Decides k-leaf power membership for `k` in 2..=4; returns `Ok` or `No`.

 # Safety
 `g` must be a live handle.
 */
enum LpStatus lp_recognize(const struct LpGraph *g, uint32_t k);

/*
 Builds a k-leaf root; `No` when none exists.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum LpStatus lp_root(const struct LpGraph *g, uint32_t k, struct LpTree **out);

/*
 Exhaustive search for a k-leaf root. Zero limits select the defaults.

 # Safety
 `g` must be a live handle and `out` writable.
 */
enum LpStatus lp_oracle_root(const struct LpGraph *g,
                             uint32_t k,
                             uintptr_t max_internal,
                             uintptr_t max_weight,
                             uint64_t budget_secs,
                             struct LpTree **out);

/*
 `Ok` when `t` is a k-leaf root of `g`, `No` otherwise (the violated
 pair is reported through [`lp_last_error`]).

 # Safety
 `g` and `t` must be live handles.
 */
enum LpStatus lp_verify(const struct LpGraph *g, const struct LpTree *t, uint32_t k);

/*
 # Safety
 `text` must be a NUL-terminated string and `out` writable.
 */
enum LpStatus lp_tree_parse(const char *text, enum LpTreeFormat format, struct LpTree **out);

/*
 Serializes `t`; release the string with [`lp_string_free`].

 # Safety
 `t` must be a live handle and `out` writable.
 */
enum LpStatus lp_tree_serialize(const struct LpTree *t, enum LpTreeFormat format, char **out);

/*
 Distance between the leaves labeled `u` and `v`.

 # Safety
 `t` must be a live handle and `out` writable.
 */
enum LpStatus lp_tree_leaf_distance(const struct LpTree *t,
                                    uintptr_t u,
                                    uintptr_t v,
                                    uintptr_t *out);

/*
 # Safety
 `t` must be null or a handle from this library not yet freed.
 */
void lp_tree_free(struct LpTree *t);

/*
 # Safety
 `s` must be null or a string returned by this library not yet freed.
 */
void lp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEAFPOWER_H */
