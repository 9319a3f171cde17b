#ifndef CTQW_H
#define CTQW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CtqwStatus {
  CTQW_STATUS_OK = 0,
  CTQW_STATUS_NULL_POINTER = 1,
  CTQW_STATUS_INVALID_ARGUMENT = 2,
  CTQW_STATUS_INVALID_GRAPH = 3,
  CTQW_STATUS_INVALID_ORIGIN = 4,
  CTQW_STATUS_NOT_DISTANCE_REGULAR = 5,
  CTQW_STATUS_NOT_QD_TYPE = 6,
  CTQW_STATUS_INVALID_JACOBI = 7,
  CTQW_STATUS_INDEX_OUT_OF_RANGE = 8,
  CTQW_STATUS_POLE_PROXIMITY = 9,
  CTQW_STATUS_NUMERICAL_FAILURE = 10,
  CTQW_STATUS_UNKNOWN_FAMILY = 11,
  CTQW_STATUS_INVALID_PARAMS = 12,
  CTQW_STATUS_LENGTH_MISMATCH = 13,
  CTQW_STATUS_PANIC = 14,
} CtqwStatus;

// Opaque graph handle.
typedef struct CtqwGraph CtqwGraph;

// Opaque walk handle: Jacobi coefficients, spectral measure and the
// amplitude kernel for one reference vertex.
typedef struct CtqwWalk CtqwWalk;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or an empty string.
// Valid until the next call into the library from the same thread.
const char *ctqw_last_error(void);

// Library version as a static NUL-terminated string.
const char *ctqw_version(void);

// Builds a simple undirected graph. `edges` holds `2 * edge_count`
// vertex indices as consecutive pairs.
//
// # Safety
// `edges` must point to `2 * edge_count` readable values; `out` must be writable.
enum CtqwStatus ctqw_graph_new(size_t n,
                               const size_t *edges,
                               size_t edge_count,
                               struct CtqwGraph **out);

// Parses the text edge-list format (`n m` header, then `u v` lines).
//
// # Safety
// `edge_list` must be a NUL-terminated string; `out` must be writable.
enum CtqwStatus ctqw_graph_parse(const char *edge_list, struct CtqwGraph **out);

// Explicit graph for a catalog spec such as `"petersen"` or `"johnson:7,3"`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum CtqwStatus ctqw_graph_from_catalog(const char *spec, struct CtqwGraph **out);

// # Safety
// `graph` must be a live handle or null; `n` must be writable.
enum CtqwStatus ctqw_graph_vertex_count(const struct CtqwGraph *graph, size_t *n);

// # Safety
// `graph` must come from a `ctqw_graph_*` constructor and not be used afterwards.
void ctqw_graph_free(struct CtqwGraph *graph);

// Exact vertex amplitudes `<v|exp(-iAt)|origin>` from dense diagonalization.
// `re` and `im` must each hold `n` values.
//
// # Safety
// `graph` must be a live handle; `re` and `im` must point to `len` writable values.
enum CtqwStatus ctqw_oracle_amplitudes(const struct CtqwGraph *graph,
                                       size_t origin,
                                       double t,
                                       double *re,
                                       double *im,
                                       size_t len);

// Walk from `origin`: distance shells when they are QD, Krylov strata otherwise.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum CtqwStatus ctqw_walk_new(const struct CtqwGraph *graph, size_t origin, struct CtqwWalk **out);

// Walk for a catalog spec, including entries known only by their
// intersection array.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum CtqwStatus ctqw_walk_from_catalog(const char *spec, struct CtqwWalk **out);

// Walk on the chain with diagonal `alpha[0..d]` and products `omega[1..d]`
// (`omega_len == alpha_len - 1`).
//
// # Safety
// `alpha` and `omega` must point to the given number of readable values; `out` must be writable.
enum CtqwStatus ctqw_walk_from_jacobi(const double *alpha,
                                      size_t alpha_len,
                                      const double *omega,
                                      size_t omega_len,
                                      struct CtqwWalk **out);

// Number of strata `d + 1`.
//
// # Safety
// `walk` must be a live handle; `strata` must be writable.
enum CtqwStatus ctqw_walk_strata(const struct CtqwWalk *walk, size_t *strata);

// Number of atoms in the spectral measure.
//
// # Safety
// `walk` must be a live handle; `atoms` must be writable.
enum CtqwStatus ctqw_walk_atoms(const struct CtqwWalk *walk, size_t *atoms);

// Copies `alpha` (strata values) and `omega` (strata - 1 values).
//
// # Safety
// `walk` must be a live handle; output buffers must hold the stated lengths.
enum CtqwStatus ctqw_walk_jacobi(const struct CtqwWalk *walk,
                                 double *alpha,
                                 size_t alpha_len,
                                 double *omega,
                                 size_t omega_len);

// Copies the ascending nodes and their weights (atoms values each).
//
// # Safety
// `walk` must be a live handle; output buffers must hold `len` values.
enum CtqwStatus ctqw_walk_measure(const struct CtqwWalk *walk,
                                  double *nodes,
                                  double *weights,
                                  size_t len);

// Stratum amplitudes `q_0(t)..q_d(t)`.
//
// # Safety
// `walk` must be a live handle; `re` and `im` must hold `len` values.
enum CtqwStatus ctqw_walk_amplitudes(const struct CtqwWalk *walk,
                                     double t,
                                     double *re,
                                     double *im,
                                     size_t len);

// Stieltjes function `G(z)` from the continued fraction.
//
// # Safety
// `walk` must be a live handle; `g_re` and `g_im` must be writable.
enum CtqwStatus ctqw_walk_stieltjes(const struct CtqwWalk *walk,
                                    double z_re,
                                    double z_im,
                                    double *g_re,
                                    double *g_im);

// # Safety
// `walk` must come from a `ctqw_walk_*` constructor and not be used afterwards.
void ctqw_walk_free(struct CtqwWalk *walk);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CTQW_H */
