#ifndef BMREL_H
#define BMREL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BmStatus {
  BM_OK = 0,
  BM_INVALID_ARGUMENT = 1,
  BM_PARSE_ERROR = 2,
  BM_CORRUPT = 3,
  BM_BUDGET_EXCEEDED = 4,
  BM_UNSUPPORTED = 5,
  BM_OVERFLOW = 6,
  BM_IO_ERROR = 7,
  BM_BUFFER_TOO_SMALL = 8,
  BM_NOT_VERIFIED = 9,
  BM_PANIC = 10,
} BmStatus;

/*
 A BM presentation with its rewriting table.
 */
typedef struct BmPresentation BmPresentation;

/*
 A sorted set of BM relations over one ambient.
 */
typedef struct BmRelationSet BmRelationSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread; valid until the next call
 from the same thread.
 */
const char *bm_last_error(void);

/*
 `|R(α,β)|` by exhaustive search with `jobs` workers (0 means 1).

 # Safety
 `out` must be valid for writes.
 */
enum BmStatus bm_count_relations(size_t alpha, size_t beta, size_t jobs, uint64_t *out);

/*
 `∏_{i=1}^{β} (2i+1)`; `BM_OVERFLOW` when it does not fit in 64 bits.

 # Safety
 `out` must be valid for writes.
 */
enum BmStatus bm_kimberley_count(size_t beta, uint64_t *out);

/*
 All of `R(α,β)` in canonical order.

 # Safety
 `out` must be valid for writes.
 */
enum BmStatus bm_relations_enumerate(size_t alpha,
                                     size_t beta,
                                     size_t jobs,
                                     struct BmRelationSet **out);

/*
 Parses a level file (header line plus one relation per line).

 # Safety
 `level_text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum BmStatus bm_relations_parse(const char *level_text, struct BmRelationSet **out);

/*
 `R(1,β+1)` from the complete level `R(1,β)`.

 # Safety
 `level` must be a live handle; `out` must be valid for writes.
 */
enum BmStatus bm_relations_build_level(const struct BmRelationSet *level,
                                       size_t jobs,
                                       struct BmRelationSet **out);

/*
 # Safety
 `set` must be a live handle or null.
 */
size_t bm_relations_len(const struct BmRelationSet *set);

/*
 Writes `α` and `β` of the set's ambient.

 # Safety
 `set` must be a live handle; `alpha` and `beta` must be valid for writes.
 */
enum BmStatus bm_relations_ambient(const struct BmRelationSet *set, size_t *alpha, size_t *beta);

/*
 Text of relation `index`, e.g. `"a1 b1 A1 B1; a1 b2 A1 B2"`.

 # Safety
 `set` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
 */
enum BmStatus bm_relations_line(const struct BmRelationSet *set,
                                size_t index,
                                char *buf,
                                size_t cap,
                                size_t *needed);

/*
 The whole set in level-file format.

 # Safety
 `set` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
 */
enum BmStatus bm_relations_serialize(const struct BmRelationSet *set,
                                     char *buf,
                                     size_t cap,
                                     size_t *needed);

/*
 # Safety
 `set` must be a handle from this library or null, and not used afterwards.
 */
void bm_relations_free(struct BmRelationSet *set);

/*
 Strict check of level-file text: `BM_OK`, or `BM_CORRUPT` with the first
 problem in [`bm_last_error`].

 # Safety
 `level_text` must be a NUL-terminated string.
 */
enum BmStatus bm_verify_level(const char *level_text);

/*
 One of `gamma4`, `gamma30`, `gamma5`, `gamma10`.

 # Safety
 `name` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum BmStatus bm_presentation_preset(const char *name, struct BmPresentation **out);

/*
 Presentation from relator text, e.g. `"a1 b1 A1 B1"` or `"acac^{-1}, adad^{-1}, bcbd, bc^{-1}bd^{-1}"`.

 # Safety
 `relators` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum BmStatus bm_presentation_parse(const char *relators,
                                    struct BmPresentation **out);

/*
 Presentation of relation `index` of a set.

 # Safety
 `set` must be a live handle; `out` must be valid for writes.
 */
enum BmStatus bm_presentation_from_set(const struct BmRelationSet *set,
                                       size_t index,
                                       struct BmPresentation **out);

/*
 # Safety
 `p` must be a handle from this library or null, and not used afterwards.
 */
void bm_presentation_free(struct BmPresentation *p);

/*
 Normal form of a space-separated word; the identity is the empty string.

 # Safety
 `p` must be a live handle; `word` a NUL-terminated string; `buf` must hold `cap` bytes.
 */
enum BmStatus bm_normal_form(const struct BmPresentation *p,
                             const char *word,
                             char *buf,
                             size_t cap,
                             size_t *needed);

/*
 Abelianization as text, e.g. `"Z^1 ⊕ Z/2 ⊕ Z/4"`.

 # Safety
 `p` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
 */
enum BmStatus bm_abelianization(const struct BmPresentation *p,
                                char *buf,
                                size_t cap,
                                size_t *needed);

/*
 Abelianization as free rank plus torsion coefficients `d_1 | d_2 | …`.
 `*torsion_len` receives the number of coefficients; at most `cap` are written.

 # Safety
 `p` must be a live handle; `torsion` must hold `cap` values; other pointers must be valid for writes.
 */
enum BmStatus bm_abelian_invariants(const struct BmPresentation *p,
                                    size_t *free_rank,
                                    uint64_t *torsion,
                                    size_t cap,
                                    size_t *torsion_len);

/*
 Checks an isomorphism certificate whose `source:` and `target:` lines
 name presets. `BM_OK` when verified, `BM_NOT_VERIFIED` with the failing
 check in [`bm_last_error`] otherwise.

 # Safety
 `certificate` must be a NUL-terminated string.
 */
enum BmStatus bm_check_isomorphism(const char *certificate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BMREL_H */
