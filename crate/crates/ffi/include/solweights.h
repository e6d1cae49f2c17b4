#ifndef SOLWEIGHTS_H
#define SOLWEIGHTS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SwStatus {
  SwStatus_Ok = 0,
  SwStatus_NullPointer = 1,
  SwStatus_InvalidUtf8 = 2,
  SwStatus_UnknownSpec = 3,
  SwStatus_CapExceeded = 4,
  SwStatus_InvalidArgument = 5,
  SwStatus_Failed = 6,
  SwStatus_Panic = 7,
} SwStatus;

/**
 * Opaque group handle.
 */
typedef struct SwGroup SwGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a group from a spec such as `"A7"` or `"wr(S3,S3)"` and stores a new handle in `out`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SwStatus sw_group_from_spec(const char *spec, struct SwGroup **out);

/**
 * # Safety
 * `g` must come from `sw_group_from_spec` and `out` must be valid.
 */
enum SwStatus sw_group_order(const struct SwGroup *g, uint64_t *out);

/**
 * Number of 2-blocks of defect zero.
 *
 * # Safety
 * `g` must come from `sw_group_from_spec` and `out` must be valid.
 */
enum SwStatus sw_defect_zero_count(const struct SwGroup *g, uint64_t *out);

/**
 * Weight count of the system `"H"` or `"F"` at level `l`.
 *
 * # Safety
 * `system` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SwStatus sw_weight_count(const char *system, uint32_t l, uint64_t *out);

/**
 * # Safety
 * `g` must come from `sw_group_from_spec` and not be used afterwards. Null is ignored.
 */
void sw_group_free(struct SwGroup *g);

/**
 * Message of the last failure on this thread, or null. Free it with `sw_string_free`.
 */
char *sw_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void sw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOLWEIGHTS_H */
