#ifndef RESQ_H
#define RESQ_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum ResqStatus {
  RESQ_STATUS_OK = 0,
  RESQ_STATUS_NULL_POINTER = 1,
  RESQ_STATUS_INVALID_UTF8 = 2,
  RESQ_STATUS_PARSE_ERROR = 3,
  RESQ_STATUS_INVALID_ARGUMENT = 4,
  RESQ_STATUS_DISCONNECTED = 5,
  RESQ_STATUS_OUT_OF_RANGE = 6,
  RESQ_STATUS_BUFFER_TOO_SMALL = 7,
  RESQ_STATUS_NUMERIC_ERROR = 8,
  RESQ_STATUS_PANIC = 9,
} ResqStatus;

typedef enum ResqFamily {
  // `K_a`; `b` is ignored.
  RESQ_FAMILY_COMPLETE = 0,
  // `K_{a,b}`.
  RESQ_FAMILY_COMPLETE_BIPARTITE = 1,
  // `C_a`; `b` is ignored.
  RESQ_FAMILY_CYCLE = 2,
  // `P_a`; `b` is ignored.
  RESQ_FAMILY_PATH = 3,
} ResqFamily;

typedef enum ResqMatrixKind {
  RESQ_MATRIX_KIND_RESISTANCE = 0,
  RESQ_MATRIX_KIND_RESISTANCE_LAPLACIAN = 1,
  RESQ_MATRIX_KIND_RESISTANCE_SIGNLESS_LAPLACIAN = 2,
} ResqMatrixKind;

// Opaque graph handle.
typedef struct ResqGraph ResqGraph;

// Opaque dense square matrix handle.
typedef struct ResqMatrix ResqMatrix;

// Opaque spectrum handle; eigenvalues are stored in descending order.
typedef struct ResqSpectrum ResqSpectrum;

// Energy summary of a connected graph.
typedef struct ResqEnergy {
  size_t n;
  double mean_transmission;
  // Sum of squared resistances over unordered pairs.
  double f;
  double big_f;
  double le_r;
  double e_r;
  double lower_2sqrt_f;
  double upper_sqrt_2nf;
  double upper_mean_u;
  double upper_eta1;
  bool bounds_satisfied;
} ResqEnergy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *resq_version(void);

// Static description of a status code.
const char *resq_status_string(enum ResqStatus status);

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call into the library on the same thread.
const char *resq_last_error_message(void);

// Parses an edge list: first line `n`, then one `u v` pair per line.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum ResqStatus resq_graph_parse(const char *text, struct ResqGraph **out);

// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
// `edges` (`2 * edge_count` entries).
//
// # Safety
// `edges` must point to `2 * edge_count` readable values (may be null when
// `edge_count` is 0) and `out` must be valid.
enum ResqStatus resq_graph_from_edges(size_t n,
                                      const size_t *edges,
                                      size_t edge_count,
                                      struct ResqGraph **out);

// Generates a family instance; see [`ResqFamily`] for the meaning of `a`, `b`.
//
// # Safety
// `out` must be a valid pointer.
enum ResqStatus resq_graph_generate(enum ResqFamily family,
                                    size_t a,
                                    size_t b,
                                    struct ResqGraph **out);

// # Safety
// `graph` must be null or a handle returned by this library, not yet freed.
void resq_graph_free(struct ResqGraph *graph);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t resq_graph_vertex_count(const struct ResqGraph *graph);

// Edge count, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t resq_graph_edge_count(const struct ResqGraph *graph);

// Computes `R`, `R^L` or `R^Q` of a connected graph.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum ResqStatus resq_matrix_compute(const struct ResqGraph *graph,
                                    enum ResqMatrixKind kind,
                                    struct ResqMatrix **out);

// # Safety
// `matrix` must be null or a live handle.
void resq_matrix_free(struct ResqMatrix *matrix);

// Matrix order, or 0 for a null handle.
//
// # Safety
// `matrix` must be null or a live handle.
size_t resq_matrix_order(const struct ResqMatrix *matrix);

// # Safety
// `matrix` must be a live handle and `out` a valid pointer.
enum ResqStatus resq_matrix_get(const struct ResqMatrix *matrix, size_t i, size_t j, double *out);

// Copies the matrix into `buf` in row-major order. `len` is the capacity of
// `buf` in elements and must be at least `order * order`.
//
// # Safety
// `matrix` must be a live handle and `buf` must hold `len` writable values.
enum ResqStatus resq_matrix_copy(const struct ResqMatrix *matrix, double *buf, size_t len);

// Eigenvalues of `R`, `R^L` or `R^Q`, descending.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum ResqStatus resq_spectrum_compute(const struct ResqGraph *graph,
                                      enum ResqMatrixKind kind,
                                      struct ResqSpectrum **out);

// # Safety
// `spectrum` must be null or a live handle.
void resq_spectrum_free(struct ResqSpectrum *spectrum);

// Number of eigenvalues, or 0 for a null handle.
//
// # Safety
// `spectrum` must be null or a live handle.
size_t resq_spectrum_len(const struct ResqSpectrum *spectrum);

// Copies the eigenvalues into `buf`, which must hold at least
// `resq_spectrum_len` values.
//
// # Safety
// `spectrum` must be a live handle and `buf` must hold `len` writable values.
enum ResqStatus resq_spectrum_copy(const struct ResqSpectrum *spectrum, double *buf, size_t len);

// Resistance Laplacian energy, resistance energy and the four energy bounds.
//
// # Safety
// `graph` must be a live handle and `out` a valid pointer.
enum ResqStatus resq_energy(const struct ResqGraph *graph, struct ResqEnergy *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESQ_H */
