#ifndef BOHRLAB_H
#define BOHRLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum BohrStatus {
  BOHR_STATUS_OK = 0,
  BOHR_STATUS_NULL_POINTER = 1,
  BOHR_STATUS_INVALID_ARGUMENT = 2,
  BOHR_STATUS_INVALID_RADIUS = 3,
  BOHR_STATUS_INVALID_INDEX = 4,
  BOHR_STATUS_DOMAIN_ERROR = 5,
  BOHR_STATUS_EVALUATION_FAILURE = 6,
  BOHR_STATUS_UNKNOWN_SUITE = 7,
  BOHR_STATUS_IO_FAILURE = 8,
  BOHR_STATUS_VERIFICATION_ERROR = 9,
  BOHR_STATUS_PANIC = 10,
} BohrStatus;

// Verification report.
typedef struct BohrReport BohrReport;

// Truncated power series with certified tail.
typedef struct BohrSeries BohrSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length, 0 if none.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t bohr_last_error(char *buf, size_t len);

// Series from `len` coefficients `re[k] + i im[k]`, exact (no tail).
//
// # Safety
// `re` and `im` must be valid for `len` doubles; `out` must be writable.
enum BohrStatus bohr_series_new(const double *re,
                                const double *im,
                                size_t len,
                                struct BohrSeries **out);

// # Safety
// `s` must be null or a handle from this library, not yet freed.
void bohr_series_free(struct BohrSeries *s);

// Truncation order, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t bohr_series_order(const struct BohrSeries *s);

// `Σ_{n >= from_index} |a_n| r^n`: the computed value and the certified
// upper bound including the tail.
//
// # Safety
// `s` must be a live handle; `value` and `upper` writable or null.
enum BohrStatus bohr_series_majorant(const struct BohrSeries *s,
                                     double r,
                                     size_t from_index,
                                     double *value,
                                     double *upper);

// Product of two series as a new handle.
//
// # Safety
// `a`, `b` must be live handles; `out` writable.
enum BohrStatus bohr_series_mul(const struct BohrSeries *a,
                                const struct BohrSeries *b,
                                struct BohrSeries **out);

// Partial sum at `z = re + i im`.
//
// # Safety
// `s` must be a live handle; outputs writable.
enum BohrStatus bohr_series_eval(const struct BohrSeries *s,
                                 double re,
                                 double im,
                                 double *out_re,
                                 double *out_im);

// The modular function `J(z)` for `|z| < 1`.
//
// # Safety
// Outputs must be writable.
enum BohrStatus bohr_eval_j(double re, double im, double *out_re, double *out_im);

// Writes `M_0..M_{len-1}` of `-J(-z) = z Σ M_n z^n` into `out`.
//
// # Safety
// `out` must be valid for `len` doubles.
enum BohrStatus bohr_modular_coefficients(double *out, size_t len);

// Runs the comma-separated `suites` (e.g. `"classical,harmonic"` or
// `"all"`) at truncation `order` with `seed`.
//
// # Safety
// `suites` must be a NUL-terminated string; `out` writable.
enum BohrStatus bohr_report_run(const char *suites,
                                size_t order,
                                uint64_t seed,
                                struct BohrReport **out);

// # Safety
// `r` must be null or a live handle.
void bohr_report_free(struct BohrReport *r);

// # Safety
// `r` must be null or a live handle.
size_t bohr_report_passed(const struct BohrReport *r);

// # Safety
// `r` must be null or a live handle.
size_t bohr_report_failed(const struct BohrReport *r);

// The report as JSON; release with [`bohr_string_free`]. Null on a null
// handle.
//
// # Safety
// `r` must be null or a live handle.
char *bohr_report_json(const struct BohrReport *r);

// # Safety
// `s` must be null or a string returned by this library.
void bohr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOHRLAB_H */
