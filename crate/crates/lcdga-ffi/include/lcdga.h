#ifndef LCDGA_H
#define LCDGA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum LcdgaStatus {
  LCDGA_STATUS_OK = 0,
  LCDGA_STATUS_NULL_POINTER = 1,
  LCDGA_STATUS_INVALID_UTF8 = 2,
  LCDGA_STATUS_INVALID_INPUT = 3,
  LCDGA_STATUS_NOT_PROPER = 4,
  LCDGA_STATUS_NOT_FOUND = 5,
  LCDGA_STATUS_INTERNAL = 6,
  LCDGA_STATUS_PANIC = 7,
} LcdgaStatus;

// Verdict of an orbit certificate.
typedef enum LcdgaVerdict {
  LCDGA_VERDICT_ENTIRE_CERTIFIED = 0,
  LCDGA_VERDICT_MONOTONE_UP_TO_K = 1,
  LCDGA_VERDICT_INCONCLUSIVE = 2,
} LcdgaVerdict;

// An orbit-entirety certificate.
typedef struct LcdgaCertificate LcdgaCertificate;

// A filling augmentation with its pinching sequence.
typedef struct LcdgaFilling LcdgaFilling;

// A decorated closure of a positive braid.
typedef struct LcdgaSpec LcdgaSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failed call on this thread; empty after a
// successful call. Valid until the next call into the library.
const char *lcdga_last_error(void);

// Releases a string returned by the library.
//
// # Safety
// `s` must be null or a string returned through a `char **` out parameter.
void lcdga_string_free(char *s);

// Closure of a preset family such as `d4`, `lambda2`, `b11`, `torus:2,3`.
//
// # Safety
// `family` must be a NUL-terminated string; `out` must be writable.
enum LcdgaStatus lcdga_spec_from_family(const char *family, struct LcdgaSpec **out);

// Standard closure of a positive braid word such as `"1 2 1 1"`.
//
// # Safety
// `word` must be a NUL-terminated string; `out` must be writable.
enum LcdgaStatus lcdga_spec_from_braid(const char *word, uintptr_t strands, struct LcdgaSpec **out);

// # Safety
// `spec` must be null or a handle from this library, not yet freed.
void lcdga_spec_free(struct LcdgaSpec *spec);

// Strand count, crossing count and component count.
//
// # Safety
// `spec` must be a live handle; the out pointers must be writable or null.
enum LcdgaStatus lcdga_spec_sizes(const struct LcdgaSpec *spec,
                                  uintptr_t *strands,
                                  uintptr_t *crossings,
                                  uintptr_t *components);

// Canonical JSON of the contact DGA of `spec`.
//
// # Safety
// `spec` must be a live handle; `out` must be writable.
enum LcdgaStatus lcdga_dga_json(const struct LcdgaSpec *spec, char **out);

// Filling augmentation for a comma-separated pinching sequence.
//
// # Safety
// `spec` must be a live handle, `pinches` a NUL-terminated string and `out`
// writable.
enum LcdgaStatus lcdga_fill(const struct LcdgaSpec *spec,
                            const char *pinches,
                            struct LcdgaFilling **out);

// # Safety
// `filling` must be null or a live handle.
void lcdga_filling_free(struct LcdgaFilling *filling);

// Value of a crossing, chord or base point as canonical text.
//
// # Safety
// `filling` must be a live handle, `name` a NUL-terminated string and `out`
// writable.
enum LcdgaStatus lcdga_filling_value(const struct LcdgaFilling *filling,
                                     const char *name,
                                     char **out);

// Free rank of the coefficient ring.
//
// # Safety
// `filling` must be a live handle; `out` must be writable.
enum LcdgaStatus lcdga_filling_rank(const struct LcdgaFilling *filling, uintptr_t *out);

// Canonical JSON of the augmentation.
//
// # Safety
// `filling` must be a live handle; `out` must be writable.
enum LcdgaStatus lcdga_filling_json(const struct LcdgaFilling *filling, char **out);

// Orbit certificate for the over-type pair `(x, y)` up to `k_max`.
//
// # Safety
// `filling` must be a live handle, `x` and `y` NUL-terminated strings and
// `out` writable.
enum LcdgaStatus lcdga_certify(const struct LcdgaFilling *filling,
                               const char *x,
                               const char *y,
                               uintptr_t k_max,
                               struct LcdgaCertificate **out);

// # Safety
// `cert` must be null or a live handle.
void lcdga_certificate_free(struct LcdgaCertificate *cert);

// # Safety
// `cert` must be a live handle; `out` must be writable.
enum LcdgaStatus lcdga_certificate_verdict(const struct LcdgaCertificate *cert,
                                           enum LcdgaVerdict *out);

// `E(k, y)` in decimal.
//
// # Safety
// `cert` must be a live handle; `out` must be writable.
enum LcdgaStatus lcdga_certificate_e(const struct LcdgaCertificate *cert, uintptr_t k, char **out);

// Canonical JSON of the certificate.
//
// # Safety
// `cert` must be a live handle; `out` must be writable.
enum LcdgaStatus lcdga_certificate_json(const struct LcdgaCertificate *cert, char **out);

// Order of the Kálmán loop on `T(p, q)`, searched up to `max_k`; writes 0
// when no power up to `max_k` is the identity.
//
// # Safety
// `out` must be writable.
enum LcdgaStatus lcdga_kalman_order(uintptr_t p, uintptr_t q, uintptr_t max_k, uintptr_t *out);

// Runs a command-line invocation (`argv[0]` is the program name). Writes the
// exit code and the standard output text.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; the out pointers must be
// writable.
enum LcdgaStatus lcdga_cli_run(int argc, const char *const *argv, int *exit_code, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCDGA_H */
