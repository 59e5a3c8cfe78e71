#ifndef SSING_H
#define SSING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SsingStatus {
  SSING_STATUS_OK = 0,
  SSING_STATUS_INVALID_ARGUMENT = 1,
  SSING_STATUS_CUTOFF = 2,
  SSING_STATUS_EXACT_SINGULARITY = 3,
  SSING_STATUS_DEGENERATE = 4,
  SSING_STATUS_NULL_POINTER = 5,
  SSING_STATUS_NO_SOLUTION = 6,
  SSING_STATUS_OUT_OF_RANGE = 7,
  SSING_STATUS_PANIC = 8,
} SsingStatus;

/**
 * Gain medium, guide geometry and search settings.
 */
typedef struct SsingDesign SsingDesign;

/**
 * Solutions returned by [`ssing_design_solve`], ordered by `ell`.
 */
typedef struct SsingSolutionList SsingSolutionList;

typedef struct SsingComplex {
  double re;
  double im;
} SsingComplex;

typedef struct SsingMatrix {
  struct SsingComplex m11;
  struct SsingComplex m12;
  struct SsingComplex m21;
  struct SsingComplex m22;
} SsingMatrix;

/**
 * One spectral-singularity design. Lengths in nm, energies in eV.
 */
typedef struct SsingSolution {
  uint32_t n;
  uint32_t ell;
  double omega;
  double k;
  double alpha;
  double lambda;
  struct SsingComplex epsilon;
  struct SsingComplex sqrt_epsilon;
  double residual;
  double rho;
  double sigma;
} SsingSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *ssing_last_error(void);

/**
 * Transfer matrix of the barrier of half-length `alpha` and coupling `z` at wave number `k`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SsingStatus ssing_transfer_matrix(struct SsingComplex z,
                                       double alpha,
                                       double k,
                                       struct SsingMatrix *out);

/**
 * Normalized distance from a spectral singularity; zero exactly at one.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SsingStatus ssing_m22_residual(struct SsingComplex z, double alpha, double k, double *out);

/**
 * Certified points of the curve `(n, -)` at `rho`. Writes up to `capacity`
 * values of `sigma` and `alpha k` and the total number found to `count`,
 * which may exceed `capacity`. The arrays may be null when `capacity` is 0.
 *
 * # Safety
 * `sigma` and `alpha_k` must be valid for `capacity` writes; `count` for one.
 */
enum SsingStatus ssing_solve_sigma(uint32_t n,
                                   double rho,
                                   double *sigma,
                                   double *alpha_k,
                                   size_t capacity,
                                   size_t *count);

/**
 * New design with the given Lorentz medium (eV, eV², eV) and guide height
 * `2 beta / m` in nm, using the default search settings.
 *
 * # Safety
 * `out` must be valid for writes. The handle must be released with
 * [`ssing_design_free`].
 */
enum SsingStatus ssing_design_new(double omega0,
                                  double omega_p_sq,
                                  double delta,
                                  double two_beta_over_m,
                                  struct SsingDesign **out);

/**
 * Sets both search grid sizes.
 *
 * # Safety
 * `design` must come from [`ssing_design_new`].
 */
enum SsingStatus ssing_design_set_grid(struct SsingDesign *design, size_t points);

/**
 * # Safety
 * `design` is null or came from [`ssing_design_new`] and was not freed.
 */
void ssing_design_free(struct SsingDesign *design);

/**
 * All certified designs of branch `n`. An empty result is
 * `SSING_STATUS_NO_SOLUTION` and still produces a (empty) list.
 *
 * # Safety
 * `design` must come from [`ssing_design_new`]; `out` must be valid for
 * writes. The list must be released with [`ssing_solutions_free`].
 */
enum SsingStatus ssing_design_solve(const struct SsingDesign *design,
                                    uint32_t n,
                                    struct SsingSolutionList **out);

/**
 * Number of solutions; 0 for a null list.
 *
 * # Safety
 * `list` is null or came from [`ssing_design_solve`].
 */
size_t ssing_solutions_len(const struct SsingSolutionList *list);

/**
 * # Safety
 * `list` must come from [`ssing_design_solve`]; `out` must be valid for writes.
 */
enum SsingStatus ssing_solutions_get(const struct SsingSolutionList *list,
                                     size_t index,
                                     struct SsingSolution *out);

/**
 * # Safety
 * `list` is null or came from [`ssing_design_solve`] and was not freed.
 */
void ssing_solutions_free(struct SsingSolutionList *list);

/**
 * `log10(|T|² + |R|²)` at each `omega / omega_s` in `ratios`, keeping the
 * gain length of solution `index` fixed. Exact singularities report 600.
 *
 * # Safety
 * `design` and `list` must be live handles; `ratios` and `out` must be valid
 * for `len` reads and writes.
 */
enum SsingStatus ssing_gain_scan(const struct SsingDesign *design,
                                 const struct SsingSolutionList *list,
                                 size_t index,
                                 const double *ratios,
                                 size_t len,
                                 double *out);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ssing_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SSING_H */
