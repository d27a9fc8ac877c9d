#ifndef QLDPC_H
#define QLDPC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum QldpcStatus {
  QLDPC_STATUS_OK = 0,
  QLDPC_STATUS_NULL_POINTER = 1,
  QLDPC_STATUS_INVALID_ARGUMENT = 2,
  QLDPC_STATUS_PARSE = 3,
  QLDPC_STATUS_CONSTRUCTION = 4,
  QLDPC_STATUS_IO = 5,
  QLDPC_STATUS_PANIC = 6,
} QldpcStatus;

/**
 * Decoder selection.
 */
typedef enum QldpcAlgorithm {
  QLDPC_ALGORITHM_MIN_SUM = 0,
  QLDPC_ALGORITHM_SUM_PRODUCT = 1,
} QldpcAlgorithm;

/**
 * Opaque code handle.
 */
typedef struct QldpcCode QldpcCode;

/**
 * Tallies from [`qldpc_simulate`]. Rates are NaN when `trials` is 0.
 */
typedef struct QldpcStats {
  double channel_p;
  uint64_t trials;
  uint64_t successes;
  uint64_t logical_errors;
  uint64_t detected_failures;
  double bler;
  double ci_low;
  double ci_high;
} QldpcStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next call
 * that fails on the same thread.
 */
const char *qldpc_last_error(void);

/**
 * Parses QPC text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QldpcStatus qldpc_code_from_qpc(const char *text, struct QldpcCode **out);

/**
 * Reads a QPC file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QldpcStatus qldpc_code_read_file(const char *path, struct QldpcCode **out);

/**
 * Builds a code from a TOML config. `family` is `"coset"` or `"cayley"`.
 *
 * # Safety
 * `family` and `config` must be NUL-terminated strings and `out` a valid pointer.
 */
enum QldpcStatus qldpc_code_build(const char *family, const char *config, struct QldpcCode **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `code` must come from this library and not be used afterwards.
 */
void qldpc_code_free(struct QldpcCode *code);

/**
 * Number of qubits, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t qldpc_code_n(const struct QldpcCode *code);

/**
 * Number of checks, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t qldpc_code_m(const struct QldpcCode *code);

/**
 * Number of logical qubits.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum QldpcStatus qldpc_code_k(const struct QldpcCode *code, size_t *out);

/**
 * Writes the code as a QPC file.
 *
 * # Safety
 * `code` must be a live handle and `path` a NUL-terminated string.
 */
enum QldpcStatus qldpc_code_write_file(const struct QldpcCode *code, const char *path);

/**
 * Computes the syndrome bits (0 or 1) of an error given as `n` symbols.
 *
 * # Safety
 * `error` must hold `n` bytes and `syndrome` room for `m` bytes.
 */
enum QldpcStatus qldpc_code_syndrome(const struct QldpcCode *code,
                                     const uint8_t *error,
                                     size_t n,
                                     uint8_t *syndrome,
                                     size_t m);

/**
 * Decodes a syndrome of `m` bits under a depolarizing prior with parameter `p`
 * and writes `n` symbols to `estimate`.
 *
 * # Safety
 * Buffers must match their lengths; `converged` and `iterations` may be null.
 */
enum QldpcStatus qldpc_decode(const struct QldpcCode *code,
                              const uint8_t *syndrome,
                              size_t m,
                              double p,
                              enum QldpcAlgorithm algorithm,
                              size_t max_iterations,
                              uint8_t *estimate,
                              size_t n,
                              bool *converged,
                              size_t *iterations);

/**
 * Runs `trials` depolarizing-channel trials at parameter `p`.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum QldpcStatus qldpc_simulate(const struct QldpcCode *code,
                                double p,
                                uint64_t trials,
                                uint64_t seed,
                                enum QldpcAlgorithm algorithm,
                                size_t max_iterations,
                                size_t workers,
                                struct QldpcStats *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLDPC_H */
