#ifndef SYMTWIST_H
#define SYMTWIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SymtwistStatus {
  SYMTWIST_STATUS_OK = 0,
  SYMTWIST_STATUS_NULL_POINTER = 1,
  SYMTWIST_STATUS_INVALID_UTF8 = 2,
  SYMTWIST_STATUS_PARSE = 3,
  SYMTWIST_STATUS_DEGREE_MISMATCH = 4,
  SYMTWIST_STATUS_OUT_OF_RANGE = 5,
  SYMTWIST_STATUS_INTERNAL = 6,
} SymtwistStatus;

// Opaque automorphism handle.
typedef struct SymtwistAutomorphism SymtwistAutomorphism;

// Opaque permutation handle.
typedef struct SymtwistPermutation SymtwistPermutation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *symtwist_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void symtwist_string_free(char *s);

// Parses one-line `"[2,1,3]"` or cycle `"(1,2)(3,4)"` notation. A zero
// `degree` infers it from the text.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum SymtwistStatus symtwist_perm_parse(const char *text,
                                        size_t degree,
                                        struct SymtwistPermutation **out);

// # Safety
// `p` must be null or a handle from this library, freed once.
void symtwist_perm_free(struct SymtwistPermutation *p);

// # Safety
// `p` must be a valid handle.
size_t symtwist_perm_degree(const struct SymtwistPermutation *p);

// Canonical cycle notation, `"()"` for the identity.
//
// # Safety
// `p` must be a valid handle and `out` a valid pointer.
enum SymtwistStatus symtwist_perm_to_string(const struct SymtwistPermutation *p, char **out);

// `out = p * q`, applying `q` first.
//
// # Safety
// `p`, `q` must be valid handles and `out` a valid pointer.
enum SymtwistStatus symtwist_perm_compose(const struct SymtwistPermutation *p,
                                          const struct SymtwistPermutation *q,
                                          struct SymtwistPermutation **out);

// # Safety
// `p` must be a valid handle and `out` a valid pointer.
enum SymtwistStatus symtwist_perm_inverse(const struct SymtwistPermutation *p,
                                          struct SymtwistPermutation **out);

// # Safety
// `p` must be a valid handle and `out` a valid pointer.
enum SymtwistStatus symtwist_perm_order(const struct SymtwistPermutation *p, uint64_t *out);

// Parses `id:<n>`, `inner:<n>:<cycles>` or `outer6:p<k>:o<ordering>`.
//
// # Safety
// `spec` must be a nul-terminated string and `out` a valid pointer.
enum SymtwistStatus symtwist_automorphism_parse(const char *spec,
                                                struct SymtwistAutomorphism **out);

// # Safety
// `a` must be null or a handle from this library, freed once.
void symtwist_automorphism_free(struct SymtwistAutomorphism *a);

// # Safety
// `a` must be a valid handle and `out` a valid pointer.
enum SymtwistStatus symtwist_automorphism_to_string(const struct SymtwistAutomorphism *a,
                                                    char **out);

// # Safety
// `a`, `g` must be valid handles and `out` a valid pointer.
enum SymtwistStatus symtwist_automorphism_apply(const struct SymtwistAutomorphism *a,
                                                const struct SymtwistPermutation *g,
                                                struct SymtwistPermutation **out);

// Exact number of `g` with `alpha(g) = g^-1`; degrees above 10 are refused.
//
// # Safety
// `a` must be a valid handle and `out` a valid pointer.
enum SymtwistStatus symtwist_twisted_count(const struct SymtwistAutomorphism *a, uint64_t *out);

// Sum of irreducible degrees of `S_n` as a decimal string.
//
// # Safety
// `out` must be a valid pointer.
enum SymtwistStatus symtwist_total_degree_sum(size_t n, char **out);

// Degree of the irreducible indexed by `partition`, e.g. `"[4,2,1]"`, as a decimal string.
//
// # Safety
// `partition` must be a nul-terminated string and `out` a valid pointer.
enum SymtwistStatus symtwist_degree(const char *partition, char **out);

// Largest twisted count over the 720 outer automorphisms of `S_6`.
//
// # Safety
// `out` must be a valid pointer.
enum SymtwistStatus symtwist_outer_s6_max(uint64_t *out);

// Fiber decompositions of the layers at degree `n` as a JSON report.
//
// # Safety
// `out` must be a valid pointer.
enum SymtwistStatus symtwist_fibers_search_json(size_t n,
                                                bool fix_top,
                                                size_t max_solutions,
                                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMTWIST_H */
