#ifndef GAUGESPLIT_H
#define GAUGESPLIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_ARGUMENT = 1,
  GS_STATUS_INVALID_UTF8 = 2,
  GS_STATUS_PARSE = 3,
  GS_STATUS_VALIDATION = 4,
  GS_STATUS_DOMAIN = 5,
  GS_STATUS_PANIC = 6,
} GsStatus;

// A validated manifold description.
typedef struct GsSpec GsSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *gs_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void gs_string_free(char *s);

// Builds and validates a manifold from a fundamental group such as `Z*Z/9`.
//
// # Safety
// `pi1` must be a NUL-terminated string; `out` must be writable.
enum GsStatus gs_spec_new(const char *pi1, uint32_t b2, bool sigma_f_trivial, struct GsSpec **out);

// # Safety
// `spec` must be null or a handle from this library, not yet freed.
void gs_spec_free(struct GsSpec *spec);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum GsStatus gs_spec_connected_sum(const struct GsSpec *a,
                                    const struct GsSpec *b,
                                    struct GsSpec **out);

// Connected sum with `d` copies of `S^2 x S^2`.
//
// # Safety
// `spec` must be a live handle; `out` must be writable.
enum GsStatus gs_spec_stabilize(const struct GsSpec *spec, int64_t d, struct GsSpec **out);

// # Safety
// `spec` must be a live handle; `out` must be writable.
enum GsStatus gs_spec_render(const struct GsSpec *spec, char **out);

// Suspension splitting and gauge decomposition. A negative `d` leaves the
// stabilization symbolic; `group` may be null.
//
// # Safety
// `spec` must be a live handle, `group` null or NUL-terminated, `out` writable.
enum GsStatus gs_decompose(const struct GsSpec *spec,
                           const char *group,
                           int64_t t,
                           int64_t d,
                           bool json,
                           char **out);

// Compares `G_t(M)` and `G_s(M)`. `primes` is a comma list and may be null.
//
// # Safety
// `spec` must be a live handle, strings NUL-terminated, `out` writable.
enum GsStatus gs_classify(const struct GsSpec *spec,
                          const char *group,
                          int64_t t,
                          int64_t s,
                          const char *primes,
                          char **out);

// Integral homology, one `Hi = ...` line per degree.
//
// # Safety
// `spec` must be a live handle; `out` must be writable.
enum GsStatus gs_homology(const struct GsSpec *spec, bool suspended, char **out);

// Invariant factors of a matrix like `[[2,4],[6,8]]`, space separated.
//
// # Safety
// `matrix` must be NUL-terminated; `out` must be writable.
enum GsStatus gs_snf(const char *matrix, char **out);

// Free ranks of `H0..H5`; the number written is stored in `len`.
//
// # Safety
// `spec` must be a live handle; `out` must hold `cap` values; `len` writable.
enum GsStatus gs_betti_numbers(const struct GsSpec *spec, uint32_t *out, size_t cap, size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAUGESPLIT_H */
