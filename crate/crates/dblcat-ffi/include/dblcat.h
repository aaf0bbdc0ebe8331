/* C ABI for the dblcat strict double category engine. */

#ifndef DBLCAT_H
#define DBLCAT_H

/* Generated with cbindgen; edit cbindgen.toml and regenerate instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Output formats for `dbl_render`.
 */
typedef enum {
  DBL_RENDER_FORMAT_ASCII = 0,
  DBL_RENDER_FORMAT_DOT = 1,
} DblRenderFormat;

/**
 * Status codes; the first four mirror the CLI exit codes.
 */
typedef enum {
  /**
   * All checks passed.
   */
  DBL_STATUS_OK = 0,
  /**
   * At least one check failed.
   */
  DBL_STATUS_CHECK_FAILED = 1,
  /**
   * The input was rejected (parse, resolution or type error).
   */
  DBL_STATUS_INPUT_ERROR = 2,
  /**
   * At least one equality was inconclusive within bounds.
   */
  DBL_STATUS_INCONCLUSIVE = 3,
  /**
   * A required pointer argument was null.
   */
  DBL_STATUS_NULL_POINTER = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  DBL_STATUS_INVALID_UTF8 = 5,
  /**
   * An internal invariant was violated; the operation was aborted.
   */
  DBL_STATUS_INTERNAL = 6,
} DblStatus;

/**
 * Opaque parsed manifest.
 */
typedef struct DblManifest DblManifest;

/**
 * Bounds and category selection for a command. Zero fields mean the
 * built-in defaults; a null `in_category` means the sole category.
 */
typedef struct {
  uintptr_t max_rewrite;
  uintptr_t max_len;
  const char *in_category;
} DblOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse manifest text into an opaque handle. On success `*out` owns the
 * manifest and must be released with `dbl_manifest_free`; on error
 * `*out_error` (if non-null) receives a message.
 */
DblStatus dbl_manifest_parse(const char *text, DblManifest **out, char **out_error);

/**
 * Release a manifest handle. Null is a no-op.
 */
void dbl_manifest_free(DblManifest *m);

/**
 * Pretty-print a manifest in the canonical form accepted by
 * `dbl_manifest_parse`. The result must be freed with `dbl_string_free`.
 */
DblStatus dbl_manifest_print(const DblManifest *m, char **out_text);

/**
 * Run all validations registered for one declaration.
 */
DblStatus dbl_check(const DblManifest *m,
                    const char *name,
                    const DblOptions *opts,
                    char **out_text);

/**
 * Rewrite an expression to its normal form.
 */
DblStatus dbl_normalize(const DblManifest *m,
                        const char *expr,
                        const DblOptions *opts,
                        char **out_text);

/**
 * Decide equality of two expressions.
 */
DblStatus dbl_eq(const DblManifest *m,
                 const char *e1,
                 const char *e2,
                 const DblOptions *opts,
                 char **out_text);

/**
 * Tensor two declared categories and verify the defining relations of the
 * result; with `emit` nonzero the presentation is appended to the output.
 */
DblStatus dbl_tensor(const DblManifest *m,
                     const char *a,
                     const char *b,
                     int32_t emit,
                     const DblOptions *opts,
                     char **out_text);

/**
 * Check the constraint cells of a built-in tricategory instance
 * (`walking-arrow` or `pseudo-parity`).
 */
DblStatus dbl_verify_tricat(const char *instance, char **out_text);

/**
 * Render an expression's boundary and cells as ASCII or DOT.
 */
DblStatus dbl_render(const DblManifest *m,
                     const char *expr,
                     DblRenderFormat format,
                     const DblOptions *opts,
                     char **out_text);

/**
 * Release a string produced by this library. Null is a no-op.
 */
void dbl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DBLCAT_H */
