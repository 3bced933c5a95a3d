/* C interface of the qtoric engine. Generated by cbindgen; do not edit. */

#ifndef QTORIC_H
#define QTORIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum qtoric_status {
  QTORIC_OK = 0,
  // Malformed input: bad JSON, bad fan data, bad parameters.
  QTORIC_ERR_INPUT = 1,
  // Valid input outside the operation's mathematical domain.
  QTORIC_ERR_DOMAIN = 2,
  QTORIC_ERR_NULL_ARGUMENT = 3,
  QTORIC_ERR_INVALID_UTF8 = 4,
  QTORIC_ERR_PANIC = 5,
} qtoric_status;

// Opaque handle to a parsed and validated fan document.
typedef struct qtoric_fan qtoric_fan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent error on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *qtoric_last_error_message(void);

// Release a string returned by this library.
//
// # Safety
// `s` must be null or a pointer previously handed out by this library
// and not yet freed.
void qtoric_string_free(char *s);

// Parse and validate a fan document (JSON). On success writes a handle
// that must be freed with `qtoric_fan_free`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
enum qtoric_status qtoric_fan_parse(const char *json, struct qtoric_fan **out);

// Build one of the built-in example fans. Pass k = m = 0 for examples
// without parameters; the parametric family is named "o(-k)-cpm".
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be a valid pointer.
enum qtoric_status qtoric_fan_example(const char *name,
                                      int64_t k,
                                      int64_t m,
                                      struct qtoric_fan **out);

// Release a fan handle.
//
// # Safety
// `fan` must be null or a handle from a constructor, not yet freed.
void qtoric_fan_free(struct qtoric_fan *fan);

// Serialize the fan handle back to its canonical JSON document.
//
// # Safety
// `fan` must be a live handle; `out` must be a valid pointer.
enum qtoric_status qtoric_fan_to_json(const struct qtoric_fan *fan, char **out);

// Run one engine command against the fan (null for commands that need no
// fan, e.g. "rescale" with explicit weights). `request_json` carries the
// command name and parameters, e.g. {"command":"symplectic","v":[1,1]}.
// On success writes the report as JSON.
//
// # Safety
// `fan` must be null or a live handle; `request_json` must be a
// NUL-terminated string; `out_json` must be a valid pointer.
enum qtoric_status qtoric_report(const struct qtoric_fan *fan,
                                 const char *request_json,
                                 char **out_json);

// Dimension of the quantum cohomology quotient.
//
// # Safety
// `fan` must be a live handle; `out_dim` must be a valid pointer.
enum qtoric_status qtoric_quantum_dim(const struct qtoric_fan *fan, size_t *out_dim);

// Dimension of symplectic cohomology for the action of v (computed by
// two cross-checked routes; a disagreement surfaces as a domain error).
//
// # Safety
// `fan` must be a live handle; `v` must point to `v_len` integers;
// `out_dim` must be a valid pointer.
enum qtoric_status qtoric_symplectic_dim(const struct qtoric_fan *fan,
                                         const int64_t *v,
                                         size_t v_len,
                                         size_t *out_dim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTORIC_H */
