#ifndef NETFP_H
#define NETFP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NetfpStatus {
  NETFP_STATUS_OK = 0,
  NETFP_STATUS_NULL_POINTER = 1,
  NETFP_STATUS_INVALID_UTF8 = 2,
  NETFP_STATUS_PARSE = 3,
  NETFP_STATUS_INVALID_ARGUMENT = 4,
  // The requested quantity is undefined for this graph.
  NETFP_STATUS_UNDEFINED = 5,
  NETFP_STATUS_PANIC = 6,
} NetfpStatus;

// Opaque graph handle.
typedef struct NetfpGraph NetfpGraph;

// The eight-number fingerprint of a graph.
typedef struct NetfpFeatures {
  double clustering;
  // 0 when `assortativity_defined` is false.
  double assortativity;
  bool assortativity_defined;
  double sp[6];
} NetfpFeatures;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null if none.
// The pointer stays valid until the next failing call on the same thread.
const char *netfp_last_error_message(void);

// Parses GML text. Self-loops, duplicate and zero-weight edges are dropped.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum NetfpStatus netfp_graph_from_gml(const char *text, struct NetfpGraph **out);

// Builds a graph on `node_count` nodes from `edge_count` pairs stored
// flat in `pairs` (`2 * edge_count` entries). Loops and repeated edges are
// rejected.
//
// # Safety
// `pairs` must point to `2 * edge_count` readable values (it may be null
// when `edge_count` is 0) and `out` must be writable.
enum NetfpStatus netfp_graph_from_edges(size_t node_count,
                                        const size_t *pairs,
                                        size_t edge_count,
                                        struct NetfpGraph **out);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from this library and must not be used afterwards.
void netfp_graph_free(struct NetfpGraph *g);

// Number of nodes, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t netfp_graph_node_count(const struct NetfpGraph *g);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t netfp_graph_edge_count(const struct NetfpGraph *g);

// # Safety
// `g` must be a live handle and `out` writable.
enum NetfpStatus netfp_graph_degree(const struct NetfpGraph *g, size_t node, size_t *out);

// Serializes to GML. Free the result with `netfp_string_free`.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum NetfpStatus netfp_graph_to_gml(const struct NetfpGraph *g, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void netfp_string_free(char *s);

// Global clustering coefficient (0 when the graph has no connected triples).
//
// # Safety
// `g` must be a live handle and `out` writable.
enum NetfpStatus netfp_clustering(const struct NetfpGraph *g, double *out);

// Degree assortativity. Returns `NETFP_STATUS_UNDEFINED` and leaves `out`
// untouched when it is undefined.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum NetfpStatus netfp_assortativity(const struct NetfpGraph *g, double *out);

// Induced four-node census in the order clique, diamond, paw, 4-cycle,
// star, path.
//
// # Safety
// `g` must be a live handle and `out` must have room for 6 values.
enum NetfpStatus netfp_motif_census(const struct NetfpGraph *g, uint64_t *out);

// Computes the fingerprint against a degree-preserving null ensemble.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum NetfpStatus netfp_featurize(const struct NetfpGraph *g,
                                 size_t ensemble_size,
                                 size_t swaps_per_edge,
                                 uint64_t seed,
                                 struct NetfpFeatures *out);

// Erdős–Rényi G(n, p).
//
// # Safety
// `out` must be writable.
enum NetfpStatus netfp_gen_er(size_t n, double p, uint64_t seed, struct NetfpGraph **out);

// Watts–Strogatz ring with `k` neighbours per node and rewiring probability `p`.
//
// # Safety
// `out` must be writable.
enum NetfpStatus netfp_gen_ws(size_t n, size_t k, double p, uint64_t seed, struct NetfpGraph **out);

// Barabási–Albert growth with `m` links per new node from `m0` seed nodes.
//
// # Safety
// `out` must be writable.
enum NetfpStatus netfp_gen_ba(size_t n,
                              size_t m,
                              size_t m0,
                              uint64_t seed,
                              struct NetfpGraph **out);

// Forest Fire growth.
//
// # Safety
// `out` must be writable.
enum NetfpStatus netfp_gen_ff(size_t n,
                              double p_forward,
                              double p_backward,
                              size_t ambassadors,
                              uint64_t seed,
                              struct NetfpGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETFP_H */
