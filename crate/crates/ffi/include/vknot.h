#ifndef VKNOT_H
#define VKNOT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum VkStatus {
  VK_OK = 0,
  /**
   * A required pointer argument was null.
   */
  VK_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  VK_INVALID_UTF8 = 2,
  /**
   * Input text could not be parsed.
   */
  VK_PARSE_ERROR = 3,
  /**
   * Input parsed but the computation's hypotheses do not hold.
   */
  VK_PRECONDITION_FAILED = 4,
  /**
   * The representation does not kill some relator.
   */
  VK_NOT_A_REPRESENTATION = 5,
  /**
   * Internal failure; the library caught a panic.
   */
  VK_INTERNAL_ERROR = 6,
} VkStatus;

/**
 * A virtual knot or link diagram given by a Gauss code.
 */
typedef struct VkDiagram VkDiagram;

/**
 * A finitely presented group.
 */
typedef struct VkPresentation VkPresentation;

/**
 * A matrix representation of a free group.
 */
typedef struct VkRep VkRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null after a
 * successful call. Valid until the next call into the library.
 */
const char *vk_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void vk_string_free(char *s);

/**
 * Parses a presentation such as `gens: a, b; rels: a b a = b a b` into
 * a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum VkStatus vk_presentation_parse(const char *text, struct VkPresentation **out);

/**
 * Releases a handle from [`vk_presentation_parse`]. Null is ignored.
 *
 * # Safety
 * `h` must not have been freed already.
 */
void vk_presentation_free(struct VkPresentation *h);

/**
 * Parses a signed Gauss code such as `O1+ U2+ O3+ U1+ O2+ U3+` into a
 * new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum VkStatus vk_diagram_parse(const char *text, struct VkDiagram **out);

/**
 * Releases a handle from [`vk_diagram_parse`]. Null is ignored.
 *
 * # Safety
 * `h` must not have been freed already.
 */
void vk_diagram_free(struct VkDiagram *h);

/**
 * Parses a representation file (`field`, `vars`, `dim`, then one matrix
 * per generator) into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum VkStatus vk_rep_parse(const char *text, struct VkRep **out);

/**
 * Releases a handle from [`vk_rep_parse`]. Null is ignored.
 *
 * # Safety
 * `h` must not have been freed already.
 */
void vk_rep_free(struct VkRep *h);

/**
 * Group of a diagram (Wirtinger presentation on its arcs).
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum VkStatus vk_diagram_group(const struct VkDiagram *d, struct VkPresentation **out);

/**
 * Alexander polynomial `Delta_index` of a diagram, in `t`.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum VkStatus vk_diagram_alexander(const struct VkDiagram *d, size_t index, char **out);

/**
 * Alexander polynomial `Delta_index` of a presentation, using minors of
 * size `relators - index` under the inferred abelianization onto `t`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum VkStatus vk_presentation_alexander(const struct VkPresentation *p, size_t index, char **out);

/**
 * Virtual Alexander polynomial in `u, v`. `*obstructed` is set to 1 when
 * the polynomial rules out an almost classical diagram, 0 otherwise.
 *
 * # Safety
 * `d` must be a live handle; `out` and `obstructed` writable.
 */
enum VkStatus vk_diagram_virtual(const struct VkDiagram *d,
                                 size_t index,
                                 char **out,
                                 int *obstructed);

/**
 * Sets `*exists` to 1 if the diagram has an Alexander numbering, integral
 * for `modulus` 0 or mod 2 for `modulus` 2.
 *
 * # Safety
 * `d` must be a live handle and `exists` writable.
 */
enum VkStatus vk_diagram_has_numbering(const struct VkDiagram *d, uint32_t modulus, int *exists);

/**
 * Checks that `rep` kills every relator of `p`. On
 * `VkNotARepresentation`, `*failing_relator` holds the 1-based index of
 * the first relator that does not map to the identity.
 *
 * # Safety
 * `rep`, `p` must be live handles; `failing_relator` may be null.
 */
enum VkStatus vk_rep_check(const struct VkRep *rep,
                           const struct VkPresentation *p,
                           size_t *failing_relator);

/**
 * Tensors `rep` with the abelianization of `p` onto `t`, giving a new
 * handle in `*out`.
 *
 * # Safety
 * `p`, `rep` must be live handles and `out` writable.
 */
enum VkStatus vk_rep_with_abelianization(const struct VkPresentation *p,
                                         const struct VkRep *rep,
                                         struct VkRep **out);

/**
 * Wada's invariant of a deficiency-one presentation with `delete`'s
 * columns removed. `*quotient` is null when the division is not exact.
 *
 * # Safety
 * `p`, `rep` must be live handles, `delete` a NUL-terminated string and the
 * three output pointers writable.
 */
enum VkStatus vk_wada(const struct VkPresentation *p,
                      const struct VkRep *rep,
                      const char *delete_,
                      char **numerator,
                      char **denominator,
                      char **quotient);

/**
 * First homology of the `degree`-fold cyclic branched cover, e.g. `Z/5`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum VkStatus vk_branched_cover(const struct VkPresentation *p, uint64_t degree, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VKNOT_H */
