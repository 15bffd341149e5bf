/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef EXTALG_H
#define EXTALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `EXTALG_STATUS_OK` is zero; library errors map one-to-one onto
 * the library's error kinds.
 */
typedef enum {
  EXTALG_STATUS_OK = 0,
  EXTALG_STATUS_NULL_POINTER = 1,
  EXTALG_STATUS_INVALID_UTF8 = 2,
  EXTALG_STATUS_PANIC = 3,
  EXTALG_STATUS_PARSE_ERROR = 10,
  EXTALG_STATUS_NOT_PRIME = 11,
  EXTALG_STATUS_REDUCIBLE_MODULUS = 12,
  EXTALG_STATUS_INFINITE_FIELD = 13,
  EXTALG_STATUS_INFINITE_CLASS_SET = 14,
  EXTALG_STATUS_UNSUPPORTED_OVER_INFINITE_FIELD = 15,
  EXTALG_STATUS_DIMENSION_MISMATCH = 16,
  EXTALG_STATUS_SHAPE_MISMATCH = 17,
  EXTALG_STATUS_NOT_A_SUBALGEBRA = 18,
  EXTALG_STATUS_NOT_A_RETRACTION = 19,
  EXTALG_STATUS_AXIOMS_FAILED = 20,
  EXTALG_STATUS_NOT_A_CHARACTER = 21,
  EXTALG_STATUS_FLAG_CHECK_FAILED = 22,
  EXTALG_STATUS_MATCHED_PAIR_FAILED = 23,
  EXTALG_STATUS_NOT_A_FACTORIZATION = 24,
  EXTALG_STATUS_COCYCLE_CONDITION_FAILED = 25,
  EXTALG_STATUS_NOT_AN_AUTOMORPHISM = 26,
  EXTALG_STATUS_NOT_COMMUTATIVE_BASE = 27,
  EXTALG_STATUS_NOT_SYMMETRIC = 28,
  EXTALG_STATUS_BUDGET_EXCEEDED = 29,
  EXTALG_STATUS_DIMENSION_BOUND_EXCEEDED = 30,
  EXTALG_STATUS_NOT_A_GROUP = 31,
  EXTALG_STATUS_USAGE_ERROR = 32,
  EXTALG_STATUS_JSON_ERROR = 33,
  EXTALG_STATUS_IO_ERROR = 34,
} ExtalgStatus;

/**
 * A finite-dimensional unital algebra given by structure constants.
 */
typedef struct ExtalgAlgebra ExtalgAlgebra;

/**
 * An extending datum of an algebra A by a vector space V.
 */
typedef struct ExtalgDatum ExtalgDatum;

/**
 * A field such as GF(2), GF(9), Q or GF(2)(t).
 */
typedef struct ExtalgField ExtalgField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next
 * failing call on the same thread.
 */
const char *extalg_last_error(void);

/**
 * Stable name of a status code, e.g. "AxiomsFailed".
 */
const char *extalg_status_name(ExtalgStatus status);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void extalg_string_free(char *s);

/**
 * Parses "GF(p)", "GF(q)", "GF(p^n, poly)", "Q" or "GF(2)(t)".
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` writable.
 */
ExtalgStatus extalg_field_parse(const char *spec, ExtalgField **out);

/**
 * # Safety
 * `f` must be null or a handle from `extalg_field_parse`.
 */
void extalg_field_free(ExtalgField *f);

/**
 * Number of elements, or 0 for an infinite field.
 *
 * # Safety
 * `f` must be a valid field handle.
 */
uint64_t extalg_field_order(const ExtalgField *f);

/**
 * # Safety
 * `f` must be a valid field handle and `out` writable.
 */
ExtalgStatus extalg_field_name(const ExtalgField *f, char **out);

/**
 * Reads an algebra from its JSON form. A non-null `field` overrides the
 * field named in the document. The table is not checked for associativity.
 *
 * # Safety
 * `json` must be a nul-terminated string, `field` null or valid, `out`
 * writable.
 */
ExtalgStatus extalg_algebra_from_json(const char *json,
                                      const ExtalgField *field,
                                      ExtalgAlgebra **out);

/**
 * Builds an algebra from a presentation such as "x^2 = 0, y^2 = y, xy = x, yx = 0".
 *
 * # Safety
 * `field` must be valid, `text` nul-terminated and `out` writable.
 */
ExtalgStatus extalg_algebra_from_presentation(const ExtalgField *field,
                                              const char *text,
                                              ExtalgAlgebra **out);

/**
 * # Safety
 * `a` must be null or an algebra handle.
 */
void extalg_algebra_free(ExtalgAlgebra *a);

/**
 * # Safety
 * `a` must be a valid algebra handle.
 */
size_t extalg_algebra_dim(const ExtalgAlgebra *a);

/**
 * Whether the table is associative with the stated unit.
 *
 * # Safety
 * `a` must be a valid algebra handle and `out` writable.
 */
ExtalgStatus extalg_algebra_is_valid(const ExtalgAlgebra *a, bool *out);

/**
 * # Safety
 * `a` must be a valid algebra handle and `out` writable.
 */
ExtalgStatus extalg_algebra_to_json(const ExtalgAlgebra *a, char **out);

/**
 * # Safety
 * `a`, `b` must be valid algebra handles and `out` writable.
 */
ExtalgStatus extalg_algebra_is_isomorphic(const ExtalgAlgebra *a,
                                          const ExtalgAlgebra *b,
                                          bool *out);

/**
 * Number of flag datums of A (finite fields, dim A <= 4).
 *
 * # Safety
 * `a` must be a valid algebra handle and `out` writable.
 */
ExtalgStatus extalg_flag_datum_count(const ExtalgAlgebra *a, size_t *out);

/**
 * Codimension-1 classification as JSON. `cohomologous` selects the finer
 * relation.
 *
 * # Safety
 * `a` must be a valid algebra handle and `out` writable.
 */
ExtalgStatus extalg_classify_codim1_json(const ExtalgAlgebra *a, bool cohomologous, char **out);

/**
 * Order of Gal(B/A) for A spanned by `sub` ("1,x" or "[1,0,0],[0,1,0]"),
 * and whether B^Gal(B/A) = A.
 *
 * # Safety
 * `b` must be a valid algebra handle, `sub` nul-terminated, outputs writable.
 */
ExtalgStatus extalg_galois(const ExtalgAlgebra *b, const char *sub, size_t *order, bool *is_galois);

/**
 * Named dimension-2 or -3 catalog as a JSON array.
 *
 * # Safety
 * `field` must be a valid field handle and `out` writable.
 */
ExtalgStatus extalg_catalog_json(const ExtalgField *field, size_t dim, char **out);

/**
 * Reads an extending datum from JSON.
 *
 * # Safety
 * `json` must be nul-terminated, `field` null or valid, `out` writable.
 */
ExtalgStatus extalg_datum_from_json(const char *json, const ExtalgField *field, ExtalgDatum **out);

/**
 * # Safety
 * `d` must be null or a datum handle.
 */
void extalg_datum_free(ExtalgDatum *d);

/**
 * Evaluates the axioms. `report` may be null; otherwise it receives the
 * per-axiom report as JSON.
 *
 * # Safety
 * `d` must be a valid datum handle and `all_hold` writable.
 */
ExtalgStatus extalg_datum_check(const ExtalgDatum *d, bool *all_hold, char **report);

/**
 * The unified product; fails with `AxiomsFailed` for an invalid datum.
 *
 * # Safety
 * `d` must be a valid datum handle and `out` writable.
 */
ExtalgStatus extalg_unified_product(const ExtalgDatum *d, ExtalgAlgebra **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXTALG_H */
