#ifndef TQCMAP_H
#define TQCMAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum TqcStatus {
  TqcStatus_Ok = 0,
  TqcStatus_NullPointer = 1,
  TqcStatus_InvalidUtf8 = 2,
  /**
   * The geometry failed validation or mapping; see `tqc_last_error`.
   */
  TqcStatus_InvalidGeometry = 3,
  /**
   * A correlation surface failed verification.
   */
  TqcStatus_VerificationFailed = 4,
  TqcStatus_Panic = 5,
} TqcStatus;

/**
 * Opaque compiled circuit.
 */
typedef struct TqcCompilation TqcCompilation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses, maps and verifies a geometry document.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
enum TqcStatus tqc_compile(const char *source, struct TqcCompilation **out);

/**
 * Number of logical qubits, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle from `tqc_compile`.
 */
size_t tqc_qubit_count(const struct TqcCompilation *c);

/**
 * The measurement instruction stream, one `w h t basis` line per qubit.
 *
 * # Safety
 * `c` must be null or a live handle; the result is owned by the handle.
 */
const char *tqc_instructions(const struct TqcCompilation *c);

/**
 * The tracking document.
 *
 * # Safety
 * `c` must be null or a live handle; the result is owned by the handle.
 */
const char *tqc_tracking(const struct TqcCompilation *c);

/**
 * Verification report lines; returns `VerificationFailed` if any check failed.
 *
 * # Safety
 * `c` must be a live handle; `report` must be null or writable.
 */
enum TqcStatus tqc_verify(const struct TqcCompilation *c, const char **report);

/**
 * Message for the most recent failure on this thread; empty if none.
 */
const char *tqc_last_error(void);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `c` must be null or a handle not yet freed.
 */
void tqc_free(struct TqcCompilation *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TQCMAP_H */
