#ifndef RIBBON_H
#define RIBBON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum RibbonStatus {
  RIBBON_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  RIBBON_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not UTF-8.
   */
  RIBBON_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed document, unknown target or bad argument.
   */
  RIBBON_STATUS_SCHEMA = 3,
  /**
   * The input violates a structural condition.
   */
  RIBBON_STATUS_VALIDATION = 4,
  /**
   * A computation on valid input failed.
   */
  RIBBON_STATUS_COMPUTATION = 5,
  /**
   * The library panicked; the handle should be considered poisoned.
   */
  RIBBON_STATUS_PANIC = 6,
} RibbonStatus;

/**
 * Parsed and resolved document. Opaque to C.
 */
typedef struct RibbonDocument RibbonDocument;

/**
 * Betti numbers of one structure.
 */
typedef struct RibbonBettiTriple {
  uint64_t b0;
  uint64_t b1;
  uint64_t b2;
} RibbonBettiTriple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and resolves a document. On success `*out_doc` owns a new handle; on failure it is null.
 */
enum RibbonStatus ribbon_document_parse(const char *json, struct RibbonDocument **out_doc);

/**
 * Releases a handle. Null is ignored.
 */
void ribbon_document_free(struct RibbonDocument *d);

/**
 * Canonical serialization of the document.
 */
enum RibbonStatus ribbon_document_serialize(const struct RibbonDocument *d, char **out_json);

/**
 * Sets `*valid` when every complex passes the CW checks and there is at least one.
 */
enum RibbonStatus ribbon_document_validate(const struct RibbonDocument *d, bool *valid);

/**
 * Betti numbers of a ribbon, ribbon complex, ribbon nerve or vortex nerve.
 */
enum RibbonStatus ribbon_betti_triple(const struct RibbonDocument *d,
                                      const char *target,
                                      struct RibbonBettiTriple *out_triple);

/**
 * Ribbon Betti number of a ribbon target.
 */
enum RibbonStatus ribbon_betti_rb(const struct RibbonDocument *d,
                                  const char *target,
                                  uint64_t *out_value);

/**
 * Approximate descriptive nearness of two entities. `probes` is a
 * comma-separated list and `threshold` is `num/den` or a decimal; either may
 * be null to use the document's own selection.
 */
enum RibbonStatus ribbon_dx_near(const struct RibbonDocument *d,
                                 const char *a,
                                 const char *b,
                                 const char *probes,
                                 const char *threshold,
                                 bool *out_near);

/**
 * SVG drawing of a target; release `*out_svg` with [`ribbon_string_free`].
 */
enum RibbonStatus ribbon_render_svg(const struct RibbonDocument *d,
                                    const char *target,
                                    char **out_svg);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void ribbon_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into the library from the same thread.
 */
const char *ribbon_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIBBON_H */
