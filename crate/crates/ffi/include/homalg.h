/* C interface for the homalg toolkit. */

#ifndef HOMALG_H
#define HOMALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum HomalgStatus {
  HomalgStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  HomalgStatus_NullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HomalgStatus_InvalidUtf8 = 2,
  /**
   * The JSON input could not be parsed into an algebra.
   */
  HomalgStatus_BadInput = 3,
  /**
   * The identity or construction name is not recognized.
   */
  HomalgStatus_UnknownName = 4,
  /**
   * A construction hypothesis failed.
   */
  HomalgStatus_HypothesisFailed = 5,
  /**
   * Any other evaluation error.
   */
  HomalgStatus_EvalError = 6,
} HomalgStatus;

typedef struct HomalgAlgebra HomalgAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent error on this thread, or null.
 * The pointer is owned by the library and stays valid until the next
 * failing call on the same thread; do not free it.
 */
const char *homalg_last_error(void);

/**
 * Release a string returned by this library.
 */
void homalg_string_free(char *s);

/**
 * Parse an algebra from its JSON description. On success writes a new
 * handle to `out` and returns `Ok`.
 */
enum HomalgStatus homalg_algebra_from_json(const char *json, struct HomalgAlgebra **out);

/**
 * Serialize an algebra handle back to JSON. The returned string must
 * be released with `homalg_string_free`.
 */
enum HomalgStatus homalg_algebra_to_json(const struct HomalgAlgebra *a, char **out);

/**
 * Release an algebra handle.
 */
void homalg_algebra_free(struct HomalgAlgebra *a);

/**
 * Dimension of the underlying module.
 */
uintptr_t homalg_algebra_dim(const struct HomalgAlgebra *a);

/**
 * Check a named identity. `product` and `operator` may be null when
 * the algebra carries only one candidate. On success `*pass` is 1 or
 * 0 and, when the check fails and `witness_json` is non-null, a JSON
 * description of one failing instance is written there (release it
 * with `homalg_string_free`; it is null when the check passes).
 */
enum HomalgStatus homalg_check(const struct HomalgAlgebra *a,
                               const char *identity,
                               const char *product,
                               const char *operator_,
                               int32_t *pass,
                               char **witness_json);

/**
 * Apply a named construction from the catalog. `product`, `operator`,
 * and `beta` may be null. When `verify` is nonzero the construction's
 * hypotheses are checked first and `HypothesisFailed` is returned if
 * they do not hold. On success writes a new handle to `out`.
 */
enum HomalgStatus homalg_construct(const struct HomalgAlgebra *a,
                                   const char *name,
                                   const char *product,
                                   const char *operator_,
                                   const char *beta,
                                   int32_t verify,
                                   struct HomalgAlgebra **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMALG_H */
