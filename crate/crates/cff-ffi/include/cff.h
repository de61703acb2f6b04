/* C ABI for the closed-form factoring toolkit. */

#ifndef CFF_H
#define CFF_H

/* Generated by cbindgen from cff-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Which backend computes chi and omega.
typedef enum CffBackend {
  CFF_BACKEND_FULL_TERM = 0,
  CFF_BACKEND_LAYERED = 1,
  CFF_BACKEND_NATIVE = 2,
} CffBackend;

// Divisor formula selector.
typedef enum CffMethod {
  CFF_METHOD_T = 0,
  CFF_METHOD_U = 1,
} CffMethod;

// Status codes returned by every entry point.
typedef enum CffStatus {
  CFF_STATUS_OK = 0,
  CFF_STATUS_PARSE_ERROR = 1,
  CFF_STATUS_UNBOUND_VARIABLE = 2,
  CFF_STATUS_DOMAIN_ERROR = 3,
  CFF_STATUS_CAPACITY_ERROR = 4,
  CFF_STATUS_INCONSISTENT_ERROR = 5,
  CFF_STATUS_RANGE_ERROR = 6,
  CFF_STATUS_PROPERTY_VIOLATION = 7,
  CFF_STATUS_UNSUPPORTED_EMISSION = 8,
  CFF_STATUS_NULL_POINTER = 9,
  CFF_STATUS_INVALID_ARGUMENT = 10,
} CffStatus;

// Opaque term handle.
typedef struct CffTerm CffTerm;

// Term size statistics.
typedef struct CffTermStats {
  uint64_t node_count;
  uint64_t depth;
  uint64_t pow_count;
} CffTermStats;

// Result of one divisor computation.
typedef struct CffFactorReport {
  uint64_t n;
  uint64_t divisor;
  uint64_t cofactor;
  uint64_t chi;
  uint64_t omega;
  uint64_t root;
  // 1 when 1 < divisor < n (always the case for composite n).
  uint8_t proper;
} CffFactorReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL when the last
// call succeeded. The pointer stays valid until the next failing call.
const char *cff_last_error_message(void);

// Frees a string returned by this library.
//
// # Safety
// `s` must have been returned by a `cff_*` function and not freed before.
void cff_string_free(char *s);

// Parses term text into an opaque handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum CffStatus cff_term_parse(const char *text, struct CffTerm **out);

// Emits a named formula (`hw`, `nu2`, `gcd`, `binom1`, `binom2`,
// `factorial`, `delta`, `pow`, `chi`, `omega`, or `gseries0/1/2/4`) as a
// term handle.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be a valid pointer.
enum CffStatus cff_emit_formula(const char *name, struct CffTerm **out);

// Renders a term to its canonical text.
//
// # Safety
// `term` must be a live handle; `out` must be a valid pointer. Free the
// string with [`cff_string_free`].
enum CffStatus cff_term_render(const struct CffTerm *term, char **out);

// Fills `out` with node count, depth and `^`-node count.
//
// # Safety
// `term` must be a live handle; `out` must be a valid pointer.
enum CffStatus cff_term_stats(const struct CffTerm *term, struct CffTermStats *out);

// Evaluates a term under bindings given as parallel arrays of variable
// names and decimal values, writing the exact decimal result. Intermediate
// sizes obey the `CFF_BIT_BUDGET` ceiling.
//
// # Safety
// `term` must be a live handle; `names` and `values` must point to
// `bindings_len` valid NUL-terminated strings; `out` must be valid. Free
// the result with [`cff_string_free`].
enum CffStatus cff_term_eval(const struct CffTerm *term,
                             const char *const *names,
                             const char *const *values,
                             uintptr_t bindings_len,
                             char **out);

// Releases a term handle.
//
// # Safety
// `term` must have come from this library and not been freed before.
void cff_term_free(struct CffTerm *term);

// χ(n): largest s with s² | n.
//
// # Safety
// `out` must be a valid pointer.
enum CffStatus cff_chi(uint64_t n, enum CffBackend backend, uint64_t *out);

// ω(n): number of distinct prime divisors.
//
// # Safety
// `out` must be a valid pointer.
enum CffStatus cff_omega(uint64_t n, enum CffBackend backend, uint64_t *out);

// Runs the divisor formula T or U on n >= 2 and fills the report. The
// divisor is proper whenever n is composite; for prime n the formulas
// return n itself with `proper = 0`.
//
// # Safety
// `out` must be a valid pointer.
enum CffStatus cff_factor(uint64_t n,
                          enum CffMethod method,
                          enum CffBackend backend,
                          struct CffFactorReport *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CFF_H */
