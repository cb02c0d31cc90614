#ifndef HEYDE_H
#define HEYDE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HeydeStatus {
  HEYDE_STATUS_OK = 0,
  /**
   * The computation ran but the outcome differs from the expected one.
   */
  HEYDE_STATUS_UNEXPECTED = 1,
  HEYDE_STATUS_NULL_POINTER = 2,
  HEYDE_STATUS_INVALID_UTF8 = 3,
  HEYDE_STATUS_PARSE = 4,
  HEYDE_STATUS_INVALID_ARGUMENT = 5,
  HEYDE_STATUS_ZERO_MULTIPLIER = 6,
  HEYDE_STATUS_HOST_MISMATCH = 7,
  HEYDE_STATUS_NOT_IN_HOST = 8,
  HEYDE_STATUS_INFINITE_QUOTIENT = 9,
  HEYDE_STATUS_BASE_MISMATCH = 10,
  HEYDE_STATUS_TRUNCATION = 11,
  HEYDE_STATUS_HYPOTHESIS = 12,
  HEYDE_STATUS_INVALID_TABLE = 13,
  HEYDE_STATUS_NOT_CHARACTERISTIC = 14,
  HEYDE_STATUS_NON_HERMITIAN = 15,
  HEYDE_STATUS_UNSUPPORTED = 16,
  HEYDE_STATUS_PANIC = 17,
} HeydeStatus;

/**
 * Opaque characteristic-function expression.
 */
typedef struct HeydeCharFn HeydeCharFn;

/**
 * Opaque prime profile.
 */
typedef struct HeydeProfile HeydeProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *heyde_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void heyde_string_free(char *s);

/**
 * Parses a prime profile such as `{"primes":{"2":"inf","3":1}}`.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum HeydeStatus heyde_profile_from_json(const char *json, struct HeydeProfile **out);

/**
 * # Safety
 * `p` must come from [`heyde_profile_from_json`] and not have been freed.
 */
void heyde_profile_free(struct HeydeProfile *p);

/**
 * Whether multiplication by `n` is an automorphism of the solenoid.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum HeydeStatus heyde_profile_is_automorphism(const struct HeydeProfile *p, int64_t n, bool *out);

/**
 * Whether the profile admits a pair `p, q` satisfying the hypotheses.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum HeydeStatus heyde_profile_admissible(const struct HeydeProfile *p, bool *out);

/**
 * Parses and validates a characteristic-function expression.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum HeydeStatus heyde_charfn_from_json(const char *json, struct HeydeCharFn **out);

/**
 * # Safety
 * `f` must come from [`heyde_charfn_from_json`] and not have been freed.
 */
void heyde_charfn_free(struct HeydeCharFn *f);

/**
 * Classification of the expression as JSON.
 *
 * # Safety
 * `f` must be a live handle; `out_json` must be writable.
 */
enum HeydeStatus heyde_charfn_classify(const struct HeydeCharFn *f, char **out_json);

/**
 * Value at the character `y` (a rational such as `"3/8"`) of the
 * expression's host, as JSON.
 *
 * # Safety
 * `f` must be a live handle, `y` a valid C string, `out_json` writable.
 */
enum HeydeStatus heyde_charfn_eval(const struct HeydeCharFn *f, const char *y, char **out_json);

/**
 * Runs `aut`, `construct`, `verify`, `simulate` or `suite` with a JSON
 * configuration using the same keys as the command-line `config` field.
 * The result is written to `out_json`. Returns `Unexpected` when the
 * command-line tool would exit with status 1.
 *
 * # Safety
 * `command` and `config_json` must be valid C strings; `out_json` writable.
 */
enum HeydeStatus heyde_run_json(const char *command, const char *config_json, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEYDE_H */
