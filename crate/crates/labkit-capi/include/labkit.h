#ifndef LABKIT_H
#define LABKIT_H

/* Generated by cbindgen from labkit-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by fallible calls.
 */
typedef enum {
  LABKIT_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  LABKIT_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  LABKIT_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input (JSON, polynomial grammar, dimension mismatch).
   */
  LABKIT_STATUS_INVALID_INPUT = 3,
  /**
   * The input was well-formed but a mathematical check failed.
   */
  LABKIT_STATUS_CHECK_FAILED = 4,
  /**
   * Internal failure (a panic was caught); see `labkit_last_error`.
   */
  LABKIT_STATUS_INTERNAL = 5,
} LabkitStatus;

/**
 * Opaque Lie algebra handle.
 */
typedef struct LabkitAlgebra LabkitAlgebra;

/**
 * Opaque reduction chain handle.
 */
typedef struct LabkitChain LabkitChain;

/**
 * Opaque polynomial handle, bound to the variable universe of the algebra
 * it was parsed against.
 */
typedef struct LabkitPoly LabkitPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent error on this thread, or null. The caller
 * frees the string with [`labkit_string_free`].
 */
char *labkit_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a labkit function and not freed before.
 */
void labkit_string_free(char *s);

/**
 * Parses an algebra from its JSON description; null on error.
 *
 * # Safety
 * `json` must point to a NUL-terminated string.
 */
LabkitAlgebra *labkit_algebra_from_json(const char *json);

/**
 * # Safety
 * `alg` must come from [`labkit_algebra_from_json`] and not be freed twice.
 */
void labkit_algebra_free(LabkitAlgebra *alg);

/**
 * Dimension of the algebra; 0 for a null handle.
 *
 * # Safety
 * `alg` must be a live handle or null.
 */
uint32_t labkit_algebra_dim(const LabkitAlgebra *alg);

/**
 * Checks the Jacobi identity on every generator triple. Returns
 * `CheckFailed` with the report in the error slot when it fails.
 *
 * # Safety
 * `alg` must be a live handle or null.
 */
LabkitStatus labkit_algebra_validate(const LabkitAlgebra *alg);

/**
 * Number of independent polynomial invariants, written to `out`.
 *
 * # Safety
 * `alg` must be a live handle or null; `out` must be writable or null.
 */
LabkitStatus labkit_algebra_invariant_count(const LabkitAlgebra *alg, uint64_t seed, uint32_t *out);

/**
 * Parses a polynomial in the text grammar against the algebra's variable
 * universe; null on error.
 *
 * # Safety
 * `alg` must be a live handle or null; `textp` a NUL-terminated string.
 */
LabkitPoly *labkit_poly_parse(const LabkitAlgebra *alg, const char *textp);

/**
 * # Safety
 * `poly` must come from this library and not be freed twice.
 */
void labkit_poly_free(LabkitPoly *poly);

/**
 * Canonical text form; null on a null handle.
 *
 * # Safety
 * `poly` must be a live handle or null.
 */
char *labkit_poly_to_string(const LabkitPoly *poly);

/**
 * 1 if zero, 0 if nonzero, -1 on a null handle.
 *
 * # Safety
 * `poly` must be a live handle or null.
 */
int32_t labkit_poly_is_zero(const LabkitPoly *poly);

/**
 * Number of stored terms; -1 on a null handle.
 *
 * # Safety
 * `poly` must be a live handle or null.
 */
int64_t labkit_poly_term_count(const LabkitPoly *poly);

/**
 * Lie-Poisson (Berezin) bracket of two polynomials over the same algebra;
 * null on error.
 *
 * # Safety
 * All handles must be live or null.
 */
LabkitPoly *labkit_berezin_bracket(const LabkitAlgebra *alg,
                                   const LabkitPoly *f,
                                   const LabkitPoly *g);

/**
 * 1 when every generator operator annihilates `f`, 0 otherwise, -1 on error.
 *
 * # Safety
 * All handles must be live or null.
 */
int32_t labkit_is_invariant(const LabkitAlgebra *alg, const LabkitPoly *f);

/**
 * PBW-normalized symmetrization of `f`, as noncommutative polynomial text;
 * null on error.
 *
 * # Safety
 * All handles must be live or null.
 */
char *labkit_symmetrize_to_string(const LabkitAlgebra *alg, const LabkitPoly *f);

/**
 * Commutativity certificate for a pair of homogeneous polynomials, as a
 * JSON document; null on error. `max_total_degree` caps the
 * enveloping-algebra fallback for possibly-factorizable pairs.
 *
 * # Safety
 * `alg` must be live or null; `f`/`g` NUL-terminated strings.
 */
char *labkit_certify_commuting_json(const LabkitAlgebra *alg,
                                    const char *f,
                                    const char *g,
                                    uint32_t max_total_degree);

/**
 * Parses a reduction chain from JSON (the algebra must be inline, not a
 * file reference); null on error.
 *
 * # Safety
 * `json` must point to a NUL-terminated string.
 */
LabkitChain *labkit_chain_from_json(const char *json);

/**
 * # Safety
 * `chain` must come from [`labkit_chain_from_json`] and not be freed twice.
 */
void labkit_chain_free(LabkitChain *chain);

/**
 * Missing-label counting for a chain, as a JSON report; null on error
 * (including an invalid chain, with the reason in the error slot).
 *
 * # Safety
 * `chain` must be a live handle or null.
 */
char *labkit_mlp_count_json(const LabkitChain *chain, uint64_t seed);

/**
 * 1 when every subalgebra operator annihilates the polynomial, 0 otherwise,
 * -1 on error.
 *
 * # Safety
 * `chain` must be live or null; `f` a NUL-terminated string.
 */
int32_t labkit_scalar_check(const LabkitChain *chain, const char *f);

/**
 * Runs the full symplectic-chain verification pipeline and returns the JSON
 * report; `out_pass` (when non-null) receives the overall outcome. Null on
 * error.
 *
 * # Safety
 * `out_pass` must be writable or null.
 */
char *labkit_sp6_verify_json(uint64_t seed, bool *out_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LABKIT_H */
