/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GRADBEAM_H
#define GRADBEAM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GbBasis {
  GB_BASIS_LAGRANGE = 0,
  GB_BASIS_HERMITE = 1,
} GbBasis;

typedef enum GbBoundary {
  GB_BOUNDARY_SIMPLY_SUPPORTED = 0,
  GB_BOUNDARY_FREE_FREE = 1,
  GB_BOUNDARY_CLAMPED_CLAMPED = 2,
  GB_BOUNDARY_CANTILEVER = 3,
} GbBoundary;

typedef enum GbEnd {
  GB_END_LEFT = 0,
  GB_END_RIGHT = 1,
} GbEnd;

typedef enum GbStatus {
  GB_STATUS_OK = 0,
  GB_STATUS_NULL_POINTER = 1,
  GB_STATUS_INVALID_ARGUMENT = 2,
  GB_STATUS_RANK_DEFICIENT = 3,
  GB_STATUS_NO_CONVERGENCE = 4,
  GB_STATUS_NO_POSITIVE_EIGENVALUE = 5,
  GB_STATUS_ILL_CONDITIONED = 6,
  GB_STATUS_BRACKET_FAILURE = 7,
  GB_STATUS_NOT_POSITIVE_DEFINITE = 8,
  GB_STATUS_UNSUPPORTED = 9,
  GB_STATUS_IO = 10,
  GB_STATUS_BUFFER_TOO_SMALL = 11,
  GB_STATUS_PANIC = 12,
} GbStatus;

/**
 * Which array [`gb_result_values`] copies out.
 */
typedef enum GbValues {
  /**
   * Elastic `omega_bar`, ascending.
   */
  GB_VALUES_FREQUENCIES = 0,
  /**
   * `omega_bar` of the discarded rigid-body modes.
   */
  GB_VALUES_RIGID_FREQUENCIES = 1,
  /**
   * `P_bar`, ascending.
   */
  GB_VALUES_BUCKLING_LOADS = 2,
  /**
   * Nondimensional deflection `w_bar` at the nodes.
   */
  GB_VALUES_NODAL_DEFLECTION = 3,
  /**
   * Full extended DOF vector of the static solution.
   */
  GB_VALUES_DISPLACEMENT = 4,
  /**
   * Quadrature nodes on [-1, 1].
   */
  GB_VALUES_NODES = 5,
} GbValues;

/**
 * Output of one solve.
 */
typedef struct GbResult GbResult;

/**
 * Element with boundary conditions applied.
 */
typedef struct GbSystem GbSystem;

typedef struct GbConfig {
  double length;
  double youngs_modulus;
  double inertia;
  double area;
  double density;
  double g1;
  double g2;
  double load;
  double axial_load;
} GbConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string, static and NUL-terminated.
 */
const char *gb_version(void);

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * always NUL-terminated when `cap > 0`). Returns the full message length
 * excluding the terminator.
 *
 * # Safety
 * `buf` must be null or valid for `cap` bytes.
 */
size_t gb_last_error(char *buf, size_t cap);

/**
 * Fills `out` with the benchmark configuration.
 *
 * # Safety
 * `out` must be null or a valid pointer.
 */
enum GbStatus gb_config_benchmark(struct GbConfig *out);

/**
 * Builds an `n`-node element and applies boundary conditions.
 *
 * # Safety
 * `cfg` and `out` must be null or valid pointers.
 */
enum GbStatus gb_system_new(const struct GbConfig *cfg,
                            enum GbBasis basis,
                            size_t n,
                            enum GbBoundary bc,
                            struct GbSystem **out);

/**
 * # Safety
 * `sys` must be null or a handle from [`gb_system_new`] not yet freed.
 */
void gb_system_free(struct GbSystem *sys);

/**
 * Number of retained DOFs after boundary conditions.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` null or valid.
 */
enum GbStatus gb_system_dofs(const struct GbSystem *sys, size_t *out);

/**
 * Static deflection under the configured load.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` null or valid.
 */
enum GbStatus gb_solve_static(const struct GbSystem *sys, struct GbResult **out);

/**
 * Lowest `modes` elastic frequencies; rigid-body modes are reported separately.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` null or valid.
 */
enum GbStatus gb_solve_modal(const struct GbSystem *sys, size_t modes, struct GbResult **out);

/**
 * Lowest `count` buckling loads.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` null or valid.
 */
enum GbStatus gb_solve_buckling(const struct GbSystem *sys, size_t count, struct GbResult **out);

/**
 * # Safety
 * `res` must be null or a handle from a solve not yet freed.
 */
void gb_result_free(struct GbResult *res);

/**
 * Copies one array out of a result. Call with `out` null to query the
 * length; a too-small `cap` returns `BufferTooSmall` with `len` set.
 *
 * # Safety
 * `res` must be a live handle, `out` null or valid for `cap` doubles,
 * `len` null or valid.
 */
enum GbStatus gb_result_values(const struct GbResult *res,
                               enum GbValues which,
                               double *out,
                               size_t cap,
                               size_t *len);

/**
 * Nondimensional centre deflection `100 EI w(0) / (q L^4)` of a static result.
 *
 * # Safety
 * `res` must be a live handle; `out` null or valid.
 */
enum GbStatus gb_result_center_deflection(const struct GbResult *res, double *out);

/**
 * Physical end slope `dw/dx` of a static result.
 *
 * # Safety
 * `res` must be a live handle; `out` null or valid.
 */
enum GbStatus gb_result_end_slope(const struct GbResult *res, enum GbEnd end, double *out);

/**
 * Analytical centre deflection, nondimensional.
 *
 * # Safety
 * `cfg` and `out` must be null or valid pointers.
 */
enum GbStatus gb_oracle_center_deflection(const struct GbConfig *cfg,
                                          enum GbBoundary bc,
                                          double *out);

/**
 * Lowest `count` analytical elastic frequencies into `out[..count]`.
 *
 * # Safety
 * `cfg` must be null or valid; `out` null or valid for `count` doubles.
 */
enum GbStatus gb_oracle_frequencies(const struct GbConfig *cfg,
                                    enum GbBoundary bc,
                                    size_t count,
                                    double *out);

/**
 * Lowest `count` analytical buckling loads into `out[..count]`.
 *
 * # Safety
 * `cfg` must be null or valid; `out` null or valid for `count` doubles.
 */
enum GbStatus gb_oracle_buckling(const struct GbConfig *cfg,
                                 enum GbBoundary bc,
                                 size_t count,
                                 double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRADBEAM_H */
