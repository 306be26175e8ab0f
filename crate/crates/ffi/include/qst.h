#ifndef QST_FFI_H
#define QST_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QstStatus {
  QST_STATUS_OK = 0,
  QST_STATUS_NULL_POINTER = 1,
  QST_STATUS_PARSE = 2,
  QST_STATUS_BOUNDS = 3,
  QST_STATUS_VALIDATION = 4,
  QST_STATUS_DOMAIN = 5,
  QST_STATUS_CONVERGENCE = 6,
  QST_STATUS_STRUCTURE = 7,
  QST_STATUS_DEGENERATE_GAP = 8,
  QST_STATUS_OVERFLOW = 9,
  QST_STATUS_HYPOTHESIS = 10,
  QST_STATUS_CAPACITY = 11,
  QST_STATUS_IO = 12,
  QST_STATUS_INVALID_UTF8 = 13,
  QST_STATUS_BUFFER_SIZE = 14,
  QST_STATUS_PANIC = 15,
} QstStatus;

/**
 * Opaque handle holding the eigendecomposition of one Hamiltonian.
 */
typedef struct QstEvolution QstEvolution;

/**
 * Opaque graph handle.
 */
typedef struct QstGraph QstGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread; empty after a
 * success. The pointer stays valid until the next `qst_*` call on the
 * same thread.
 */
const char *qst_last_error_message(void);

/**
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum QstStatus qst_graph_path(size_t n, struct QstGraph **out);

/**
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum QstStatus qst_graph_cycle(size_t n, struct QstGraph **out);

/**
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum QstStatus qst_graph_complete_bipartite(size_t a, size_t b, struct QstGraph **out);

/**
 * Parses the edge-list text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` valid for one pointer write.
 */
enum QstStatus qst_graph_from_edge_list(const char *text, struct QstGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from a `qst_graph_*` constructor not yet freed.
 */
void qst_graph_free(struct QstGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t qst_graph_vertex_count(const struct QstGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t qst_graph_edge_count(const struct QstGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle; `out` valid for one write.
 */
enum QstStatus qst_graph_degree(const struct QstGraph *g, size_t v, size_t *out);

/**
 * Breadth-first distance; `-1` when disconnected.
 *
 * # Safety
 * `g` must be a live graph handle; `out` valid for one write.
 */
enum QstStatus qst_graph_distance(const struct QstGraph *g, size_t u, size_t v, int64_t *out);

/**
 * Builds and diagonalizes the Hamiltonian for `model` (`"adjacency"`,
 * `"laplacian"`, `"signless"`, `"generalized:<k>"`, `"loops:<u>,<v>,<Q>"`).
 *
 * # Safety
 * `g` must be a live graph handle, `model` NUL-terminated, `out` valid for
 * one pointer write.
 */
enum QstStatus qst_evolution_new(const struct QstGraph *g,
                                 const char *model,
                                 struct QstEvolution **out);

/**
 * # Safety
 * `e` must be null or a handle from [`qst_evolution_new`] not yet freed.
 */
void qst_evolution_free(struct QstEvolution *e);

/**
 * Copies the ascending eigenvalues of `H`; `len` must equal the vertex count.
 *
 * # Safety
 * `e` must be a live handle and `buf` valid for `len` writes.
 */
enum QstStatus qst_evolution_eigenvalues(const struct QstEvolution *e, double *buf, size_t len);

/**
 * `U(t)_{u,v}` of `exp(-iHt)`.
 *
 * # Safety
 * `e` must be a live handle; `re` and `im` valid for one write each.
 */
enum QstStatus qst_evolution_amplitude(const struct QstEvolution *e,
                                       double t,
                                       size_t u,
                                       size_t v,
                                       double *re,
                                       double *im);

/**
 * # Safety
 * `e` must be a live handle; `out` valid for one write.
 */
enum QstStatus qst_transfer_probability(const struct QstEvolution *e,
                                        double t,
                                        size_t u,
                                        size_t v,
                                        double *out);

/**
 * Peak `|U(t)_{u,v}|` near the two-level beat time, refined over
 * `t0 * (1 +- window_fraction)` with `refine_samples` samples.
 *
 * # Safety
 * `e` must be a live handle; `t_star` and `fidelity` valid for one write each.
 */
enum QstStatus qst_peak_two_level(const struct QstEvolution *e,
                                  size_t u,
                                  size_t v,
                                  double window_fraction,
                                  size_t refine_samples,
                                  double *t_star,
                                  double *fidelity);

/**
 * Peak `|U(t)_{u,v}|` over a uniform grid on `[0, t_max]`, locally refined.
 *
 * # Safety
 * `e` must be a live handle; `t_star` and `fidelity` valid for one write each.
 */
enum QstStatus qst_peak_grid(const struct QstEvolution *e,
                             size_t u,
                             size_t v,
                             double t_max,
                             size_t samples,
                             double *t_star,
                             double *fidelity);

/**
 * Cospectrality order (`-1` = infinite) and the first walk length where the
 * closed-walk counts differ (`-1` = none).
 *
 * # Safety
 * `g` must be a live graph handle; outputs valid for one write each.
 */
enum QstStatus qst_cospectrality(const struct QstGraph *g,
                                 size_t u,
                                 size_t v,
                                 int64_t *order,
                                 int64_t *first_divergence);

/**
 * Searches for an involutive automorphism mapping `u` to `v`. On success
 * `*found` says whether one exists and, if so, `buf[0..len]` holds it.
 *
 * # Safety
 * `g` must be a live graph handle; `buf` valid for `len` writes; `found`
 * valid for one write.
 */
enum QstStatus qst_find_involution(const struct QstGraph *g,
                                   size_t u,
                                   size_t v,
                                   size_t *buf,
                                   size_t len,
                                   bool *found);

/**
 * Threshold on `|Q|`. A negative `c` means infinite cospectrality.
 *
 * # Safety
 * `q_min` and `t_bound` valid for one write each.
 */
enum QstStatus qst_q_threshold(double epsilon,
                               uint64_t m,
                               int64_t c,
                               uint64_t d,
                               double *q_min,
                               double *t_bound);

/**
 * Threshold on `|k|` for a two-degree-class pair.
 *
 * # Safety
 * `g` must be a live graph handle; outputs valid for one write each.
 */
enum QstStatus qst_k_threshold_two_class(const struct QstGraph *g,
                                         size_t u,
                                         size_t v,
                                         double epsilon,
                                         double *k_min,
                                         double *q_min,
                                         double *t_bound);

/**
 * `2 pi (|q| + m)^(d - 1)`.
 */
double qst_readout_time_bound(double q, uint64_t m, uint64_t d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QST_FFI_H */
