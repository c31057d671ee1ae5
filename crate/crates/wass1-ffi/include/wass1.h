/* C interface for the wass1 library. Generated by cbindgen; do not edit. */

#ifndef WASS1_H
#define WASS1_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum Wass1Status {
  WASS1_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WASS1_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  WASS1_STATUS_INVALID_UTF8 = 2,
  WASS1_STATUS_IO = 3,
  WASS1_STATUS_PARSE = 4,
  /**
   * Non-square input or mismatched sides.
   */
  WASS1_STATUS_DIMENSION = 5,
  /**
   * Negative mass, zero total, or a value outside its domain.
   */
  WASS1_STATUS_VALUE = 6,
  WASS1_STATUS_OVERFLOW = 7,
  WASS1_STATUS_INVALID_ARGUMENT = 8,
  WASS1_STATUS_ARC_CAP_EXCEEDED = 9,
  WASS1_STATUS_INFEASIBLE = 10,
  WASS1_STATUS_NUMERIC_LIMIT = 11,
  WASS1_STATUS_CERTIFICATE_FAILED = 12,
} Wass1Status;

/**
 * Histogram file format selector.
 */
typedef enum Wass1Format {
  WASS1_FORMAT_CSV_GRID = 0,
  WASS1_FORMAT_PGM = 1,
} Wass1Format;

/**
 * Ground distance selector.
 */
typedef enum Wass1Metric {
  WASS1_METRIC_L1 = 0,
  WASS1_METRIC_LINF = 1,
  WASS1_METRIC_L2 = 2,
} Wass1Metric;

/**
 * Opaque histogram handle; create with `wass1_histogram_load` or
 * `wass1_histogram_from_masses`, release with `wass1_histogram_free`.
 */
typedef struct Wass1Histogram Wass1Histogram;

/**
 * Result of a distance computation.
 */
typedef struct Wass1DistanceResult {
  /**
   * Raw integer-mass objective.
   */
  double value;
  /**
   * `value / total_mass` (earth-mover normalization).
   */
  double normalized;
  /**
   * Guaranteed relative error bound; 0 when the computation is exact.
   */
  double gamma_bar;
  int64_t total_mass;
  uint64_t nodes;
  uint64_t arcs;
  uint32_t side;
  /**
   * 1 when the network realizes the ground distance exactly.
   */
  uint8_t exact;
  double build_seconds;
  double solve_seconds;
} Wass1DistanceResult;

/**
 * Closed-form error bounds for the Euclidean metric at order `L`.
 */
typedef struct Wass1BoundReport {
  double gamma_lower;
  double gamma_upper;
  double gamma_bar;
  double asymptotic;
} Wass1BoundReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *wass1_version(void);

/**
 * Message of the last failing call on this thread; valid until the next
 * failing call on the same thread. Never null.
 */
const char *wass1_last_error(void);

/**
 * Loads a histogram from a file.
 *
 * # Safety
 * `path` must point to a NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns the histogram.
 */
enum Wass1Status wass1_histogram_load(const char *path,
                                      enum Wass1Format format,
                                      struct Wass1Histogram **out);

/**
 * Builds a histogram from a row-major mass array of length `side * side`.
 *
 * # Safety
 * `masses` must point to `len` readable `int64_t`s; `out` must be valid.
 */
enum Wass1Status wass1_histogram_from_masses(uint32_t side,
                                             const int64_t *masses,
                                             size_t len,
                                             struct Wass1Histogram **out);

/**
 * Releases a histogram handle; null is a no-op.
 *
 * # Safety
 * `h` must come from a `wass1_histogram_*` constructor and not be freed twice.
 */
void wass1_histogram_free(struct Wass1Histogram *h);

/**
 * Grid side of a histogram; 0 for a null handle.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
uint32_t wass1_histogram_side(const struct Wass1Histogram *h);

/**
 * Total mass of a histogram; 0 for a null handle.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
int64_t wass1_histogram_total(const struct Wass1Histogram *h);

/**
 * Wasserstein-1 distance between two histograms of equal side.
 *
 * For `WASS1_METRIC_L2`, `l` selects the approximation order; pass 0 for
 * the exact computation (`l = side - 1`). For the other metrics `l` must
 * be 0. The solve is certified internally; a failing certificate reports
 * `WASS1_STATUS_CERTIFICATE_FAILED` instead of returning a value.
 *
 * # Safety
 * `a`, `b` must be live histogram handles and `out` a valid pointer.
 */
enum Wass1Status wass1_distance(const struct Wass1Histogram *a,
                                const struct Wass1Histogram *b,
                                enum Wass1Metric metric,
                                uint32_t l,
                                struct Wass1DistanceResult *out);

/**
 * Closed-form error bounds of the order-`l` Euclidean network (`l >= 1`).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum Wass1Status wass1_gamma_bounds(uint32_t l, struct Wass1BoundReport *out);

/**
 * Number of arcs of the grid network for `side` and the metric, without
 * building it. For `WASS1_METRIC_L2`, `l = 0` means exact (`side - 1`).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum Wass1Status wass1_edge_count(uint32_t side,
                                  enum Wass1Metric metric,
                                  uint32_t l,
                                  uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WASS1_H */
