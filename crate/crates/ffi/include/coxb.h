#ifndef COXB_H
#define COXB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every C API call.
 */
typedef enum CoxbStatus {
  COXB_STATUS_OK = 0,
  /**
   * malformed input or an out-of-range request
   */
  COXB_STATUS_USAGE = 1,
  /**
   * the request exceeds a practical computation bound
   */
  COXB_STATUS_CAPABILITY = 2,
  /**
   * a verification ran and failed
   */
  COXB_STATUS_VERIFY_FAILED = 3,
  /**
   * a NULL pointer argument
   */
  COXB_STATUS_NULL_ARGUMENT = 4,
  /**
   * an internal error; the operation did not complete
   */
  COXB_STATUS_INTERNAL = 5,
} CoxbStatus;

/**
 * Invariant route selector.
 */
typedef enum CoxbRoute {
  COXB_ROUTE_KAUFFMAN = 0,
  COXB_ROUTE_JONES = 1,
} CoxbRoute;

/**
 * An opaque braid word handle.
 */
typedef struct CoxbBraid CoxbBraid;

/**
 * An opaque handle holding the solved trace family and skein branch, so
 * repeated invariant evaluations amortize the setup cost.
 */
typedef struct CoxbInvariantContext CoxbInvariantContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version string; static storage, do not free.
 */
const char *coxb_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through an out-parameter of
 * this library and not yet freed.
 */
void coxb_string_free(char *s);

/**
 * Parses a braid word in the text format (`y`, `y'`, signed crossing
 * indices) on `strands` strands.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be valid for a
 * pointer write.
 */
enum CoxbStatus coxb_braid_parse(const char *text, uintptr_t strands, struct CoxbBraid **out);

/**
 * Releases a braid handle.
 *
 * # Safety
 * `b` must come from [`coxb_braid_parse`] and not be freed twice.
 */
void coxb_braid_free(struct CoxbBraid *b);

/**
 * Writes the exponent sum (crossing letters count, cylinder letters do
 * not).
 *
 * # Safety
 * `b` must be a live braid handle; `out` valid for a write.
 */
enum CoxbStatus coxb_braid_exponent_sum(const struct CoxbBraid *b, int64_t *out);

/**
 * Renders the signed-permutation image as a comma-separated list.
 *
 * # Safety
 * `b` must be a live braid handle; `out` valid for a pointer write.
 */
enum CoxbStatus coxb_braid_signed_permutation(const struct CoxbBraid *b, char **out);

/**
 * Builds an invariant context with tower depth `max_strands` (1 to 3).
 * Depth 3 is expensive (around a minute) but keeps values comparable
 * across strand counts.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CoxbStatus coxb_context_new(uintptr_t max_strands, struct CoxbInvariantContext **out);

/**
 * Releases an invariant context.
 *
 * # Safety
 * `ctx` must come from [`coxb_context_new`] and not be freed twice.
 */
void coxb_context_free(struct CoxbInvariantContext *ctx);

/**
 * Evaluates a link invariant of the braid closure and renders it
 * canonically.
 *
 * # Safety
 * `ctx` and `b` must be live handles; `out` valid for a pointer write.
 */
enum CoxbStatus coxb_invariant(const struct CoxbInvariantContext *ctx,
                               const struct CoxbBraid *b,
                               enum CoxbRoute route,
                               char **out);

/**
 * Writes the closed basis dimension of an algebra instance. `algebra` is
 * one of `heckeB`, `bmwA`, `bmwB`, `tlB`.
 *
 * # Safety
 * `algebra` must be a valid NUL-terminated string; `out` valid for a
 * write.
 */
enum CoxbStatus coxb_algebra_dimension(const char *algebra, uintptr_t n, uintptr_t *out);

/**
 * Writes whether the squared path counts at level `n` reproduce
 * `2^n (2n-1)!!` (levels up to 8).
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum CoxbStatus coxb_level_dimension_check(uint32_t n, bool *out);

/**
 * Runs an exact spectral verification: `target` is `ybe` or `re`.
 * Returns `Ok` on PASS, `VerifyFailed` on FAIL.
 *
 * # Safety
 * `target` must be a valid NUL-terminated string.
 */
enum CoxbStatus coxb_verify(const char *target);

/**
 * Evaluates the wall-coupled Potts partition function from the
 * line-oriented lattice format. With `check` set the transfer and
 * enumeration evaluations are compared and `VerifyFailed` reports a
 * mismatch; otherwise the best available evaluator is used.
 *
 * # Safety
 * `lattice` must be a valid NUL-terminated string; `out` valid for a
 * pointer write.
 */
enum CoxbStatus coxb_potts_partition(const char *lattice, uint32_t states, bool check, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXB_H */
