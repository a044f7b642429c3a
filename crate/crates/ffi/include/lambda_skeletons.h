#ifndef LAMBDA_SKELETONS_H
#define LAMBDA_SKELETONS_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LsStatus {
  LS_STATUS_OK = 0,
  LS_STATUS_NULL_POINTER = 1,
  LS_STATUS_INVALID_UTF8 = 2,
  LS_STATUS_PARSE_ERROR = 3,
  LS_STATUS_NOT_IN_FAMILY = 4,
  LS_STATUS_INVALID_SIZE = 5,
  LS_STATUS_INVALID_ARGUMENT = 6,
  LS_STATUS_SUITE_FAILED = 7,
  LS_STATUS_PANIC = 8,
} LsStatus;

typedef enum LsFamily {
  LS_FAMILY_MOTZKIN = 0,
  LS_FAMILY_CLOSABLE = 1,
  LS_FAMILY_UCS = 2,
  LS_FAMILY_LMT = 3,
  LS_FAMILY_OPEN = 4,
} LsFamily;

typedef enum LsRepr {
  LS_REPR_BASE = 0,
  LS_REPR_STRUCTURED = 1,
} LsRepr;

typedef enum LsStrategy {
  LS_STRATEGY_DEFAULT = 0,
  LS_STRATEGY_DERIVED = 1,
  LS_STRATEGY_FILTERED = 2,
  LS_STRATEGY_STRUCTURAL = 3,
  LS_STRATEGY_CONVERTED = 4,
} LsStrategy;

// A seeded SplitMix64 stream.
typedef struct LsRng LsRng;

// A parsed, converted or sampled term together with its family.
typedef struct LsTerm LsTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread ("" if none). Valid until
// the next call into this library from the same thread.
const char *ls_last_error(void);

// # Safety
//
// `s` must be null or a string returned by this library.
void ls_string_free(char *s);

// Parses `text` in the canonical grammar of `family`/`repr`.
//
// # Safety
//
// `text` must be a NUL-terminated string; `out` must be writable.
enum LsStatus ls_term_parse(enum LsFamily family_id,
                            enum LsRepr repr_id,
                            const char *text,
                            struct LsTerm **out);

// # Safety
//
// `term` must be null or a handle from this library not yet freed.
void ls_term_free(struct LsTerm *term);

// Canonical text of `term`, or null if `term` is null.
//
// # Safety
//
// `term` must be null or a live handle.
char *ls_term_to_string(const struct LsTerm *term);

// # Safety
//
// `term` must be a live handle; `size111`/`size012` writable or null.
enum LsStatus ls_term_sizes(const struct LsTerm *term, size_t *size111, size_t *size012);

// Converts `term` to the other representation of its family.
//
// Fails with `LS_STATUS_NOT_IN_FAMILY` when the term is not a member.
//
// # Safety
//
// `term` must be a live handle; `out` writable.
enum LsStatus ls_term_convert(const struct LsTerm *term, int64_t openness_m, struct LsTerm **out);

// Least openness of an `lmt`/`open` term.
//
// # Safety
//
// `term` must be a live handle; `out` writable.
enum LsStatus ls_minimal_openness(const struct LsTerm *term, uint64_t *out);

// Number of `m`-open labelings of the term's skeleton, as a decimal string.
//
// # Safety
//
// `term` must be a live handle; `out` writable.
enum LsStatus ls_count_labelings(const struct LsTerm *term, uint64_t m, char **out);

// Number of family members of size `size`, as a decimal string.
//
// # Safety
//
// `out` must be writable.
enum LsStatus ls_count(enum LsFamily family_id, size_t size, int64_t openness_m, char **out);

// Every member of size `size`, canonical text, one per line.
//
// # Safety
//
// `out` must be writable.
enum LsStatus ls_enumerate(enum LsFamily family_id,
                           enum LsRepr repr_id,
                           size_t size,
                           int64_t openness_m,
                           char **out);

struct LsRng *ls_rng_new(uint64_t seed);

// # Safety
//
// `rng` must be null or a handle from [`ls_rng_new`] not yet freed.
void ls_rng_free(struct LsRng *rng);

// Draws one term, advancing `rng`.
//
// # Safety
//
// `rng` must be a live handle; `out` writable.
enum LsStatus ls_sample(struct LsRng *rng,
                        enum LsFamily family_id,
                        enum LsRepr repr_id,
                        enum LsStrategy strategy,
                        uint32_t fuel,
                        uint32_t filter_max,
                        int64_t openness_m,
                        struct LsTerm **out);

// Runs one property suite and writes its JSON report to `out_json`.
//
// Returns `LS_STATUS_SUITE_FAILED` (with the report still written) when the
// suite finds a counterexample. `seed` drives the `generators` suite.
//
// # Safety
//
// `suite` must be a NUL-terminated string; `out_json` writable.
enum LsStatus ls_check(const char *suite,
                       size_t max_size,
                       size_t max_open_size,
                       uint64_t max_m,
                       uint64_t seed,
                       char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBDA_SKELETONS_H */
