/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef EVOALG_H
#define EVOALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum EvoalgStatus {
  EVOALG_STATUS_OK = 0,
  EVOALG_STATUS_NULL_POINTER = 1,
  EVOALG_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed algebra file or vector.
   */
  EVOALG_STATUS_PARSE = 3,
  /**
   * Well-formed input the operation rejects.
   */
  EVOALG_STATUS_INVALID_INPUT = 4,
  EVOALG_STATUS_COMPUTATION = 5,
  EVOALG_STATUS_PANIC = 6,
} EvoalgStatus;

/**
 * Opaque algebra handle.
 */
typedef struct EvoalgAlgebra EvoalgAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse an algebra in the text or JSON file format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum EvoalgStatus evoalg_algebra_parse(const char *text, struct EvoalgAlgebra **out);

/**
 * Seeded random algebra; `field` is `q`, `gf5`, ...
 *
 * # Safety
 * `field` must be a nul-terminated string and `out` writable.
 */
enum EvoalgStatus evoalg_random(const char *field,
                                size_t dim,
                                uint64_t seed,
                                bool perfect,
                                bool nondegenerate,
                                struct EvoalgAlgebra **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `a` must come from this library and not be used afterwards.
 */
void evoalg_algebra_free(struct EvoalgAlgebra *a);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum EvoalgStatus evoalg_algebra_dim(const struct EvoalgAlgebra *a, size_t *out);

/**
 * The algebra in the canonical text file format.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum EvoalgStatus evoalg_algebra_emit(const struct EvoalgAlgebra *a, char **out);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum EvoalgStatus evoalg_is_perfect(const struct EvoalgAlgebra *a, bool *out);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum EvoalgStatus evoalg_is_nilpotent(const struct EvoalgAlgebra *a, bool *out);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum EvoalgStatus evoalg_is_simple(const struct EvoalgAlgebra *a, bool *out);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum EvoalgStatus evoalg_has_property_2li(const struct EvoalgAlgebra *a, bool *out);

/**
 * Whether the comma-separated `coords` belong to some natural basis.
 *
 * # Safety
 * `a` must be a live handle, `coords` nul-terminated and `out` writable.
 */
enum EvoalgStatus evoalg_is_natural_vector(const struct EvoalgAlgebra *a,
                                           const char *coords,
                                           bool *out);

/**
 * Run a CLI command, e.g. `{"analyze", "a.evo"}`, with JSON output.
 *
 * `out_json` receives the report (or the JSON error object) and
 * `exit_code` the CLI exit status. Returns `Ok` whenever the command ran,
 * including commands that fail; usage errors reported by the argument
 * parser come back as `InvalidInput`.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings; the out-parameters
 * must be writable.
 */
enum EvoalgStatus evoalg_run_command(const char *const *argv,
                                     size_t argc,
                                     char **out_json,
                                     int *exit_code);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void evoalg_string_free(char *s);

/**
 * Message of the last error on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *evoalg_last_error_message(void);

/**
 * Stable code of the last error on this thread (`parse_error`,
 * `not_perfect`, ...), or null.
 */
const char *evoalg_last_error_code(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EVOALG_H */
