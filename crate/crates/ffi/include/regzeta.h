#ifndef REGZETA_H
#define REGZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 `q <= n`: some types cannot occur.
 */
#define RZ_FLAG_Q_LE_N 1

/*
 Even `q` lies outside the verified setting.
 */
#define RZ_FLAG_EVEN_P_UNCHECKED 2

/*
 Special form with `p | n`: counts may be non-integral.
 */
#define RZ_FLAG_P_DIVIDES_N 4

/*
 `q` is not a prime power; formulas are evaluated as polynomials.
 */
#define RZ_FLAG_NOT_PRIME_POWER 8

/*
 `n = 1`: the regular part is degenerate.
 */
#define RZ_FLAG_DEGENERATE_N1 16

/*
 Result code of every entry point.
 */
typedef enum RzStatus {
  RZ_STATUS_OK = 0,
  RZ_STATUS_INVALID_ARGUMENT = 1,
  RZ_STATUS_BOUND_EXCEEDED = 2,
  RZ_STATUS_NOT_PRIME_POWER = 3,
  /*
   The series diverges at the requested point or everywhere.
   */
  RZ_STATUS_DIVERGES = 4,
  /*
   A degree slice would contain infinitely many characters.
   */
  RZ_STATUS_UNBOUNDED = 5,
  /*
   An integral answer was requested outside the formula's domain.
   */
  RZ_STATUS_NON_INTEGRAL = 6,
  /*
   Internal consistency failure; please report.
   */
  RZ_STATUS_INTERNAL = 7,
  RZ_STATUS_BUFFER_TOO_SMALL = 8,
  RZ_STATUS_NULL_POINTER = 9,
  /*
   A Rust panic was caught at the boundary.
   */
  RZ_STATUS_PANIC = 10,
} RzStatus;

typedef enum RzForm {
  RZ_FORM_GL = 0,
  RZ_FORM_GU = 1,
  RZ_FORM_SL = 2,
  RZ_FORM_SU = 3,
} RzForm;

/*
 Degrees and counts of regular characters, one row per type.
 */
typedef struct RzTable RzTable;

/*
 The n-types in canonical order.
 */
typedef struct RzTypeList RzTypeList;

/*
 Closed form of a regular representation zeta function.
 */
typedef struct RzZeta RzZeta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *rz_version(void);

/*
 Copies the calling thread's most recent error message.

 # Safety
 `buf` must point to `cap` writable bytes (or be NULL with `cap = 0`);
 `needed` must be NULL or writable.
 */
enum RzStatus rz_last_error(char *buf, size_t cap, size_t *needed);

/*
 Enumerates the n-types.

 # Safety
 `out` must be writable; on success it receives a handle to release with
 [`rz_types_free`].
 */
enum RzStatus rz_types_new(uint32_t n, struct RzTypeList **out);

/*
 Number of types in the list.

 # Safety
 `list` must be a live handle and `len` writable.
 */
enum RzStatus rz_types_len(const struct RzTypeList *list, size_t *len);

/*
 Writes type `index` as `(d, e, m)` triples.

 # Safety
 `list` must be a live handle; `buf` must hold `3 * cap` values (or be NULL
 with `cap = 0`); `needed` must be NULL or writable.
 */
enum RzStatus rz_types_get(const struct RzTypeList *list,
                           size_t index,
                           uint32_t *buf,
                           size_t cap,
                           size_t *needed);

/*
 Releases a type list; NULL is ignored.

 # Safety
 `list` must be NULL or a handle from [`rz_types_new`] not yet freed.
 */
void rz_types_free(struct RzTypeList *list);

/*
 Degree and count of the regular characters of every type at the given
 level. Outside the special forms' domain (`p | n`) counts may be proper
 fractions, printed as `num/den`, and `RZ_FLAG_P_DIVIDES_N` is set.

 # Safety
 `out` must be writable; release the handle with [`rz_table_free`].
 */
enum RzStatus rz_table_new(enum RzForm form,
                           uint32_t n,
                           uint64_t q,
                           uint32_t level,
                           struct RzTable **out);

/*
 Number of rows (types).

 # Safety
 `table` must be a live handle and `len` writable.
 */
enum RzStatus rz_table_len(const struct RzTable *table, size_t *len);

/*
 Bitmask of `RZ_FLAG_*` conditions for the table's parameters.

 # Safety
 `table` must be a live handle and `flags` writable.
 */
enum RzStatus rz_table_flags(const struct RzTable *table, uint32_t *flags);

/*
 Type of row `index` as `(d, e, m)` triples.

 # Safety
 As for [`rz_types_get`], with `table` a live handle.
 */
enum RzStatus rz_table_type(const struct RzTable *table,
                            size_t index,
                            uint32_t *buf,
                            size_t cap,
                            size_t *needed);

/*
 Character degree of row `index` as a decimal string.

 # Safety
 `table` must be a live handle; `buf` must point to `cap` writable bytes
 (or be NULL with `cap = 0`); `needed` must be NULL or writable.
 */
enum RzStatus rz_table_degree(const struct RzTable *table,
                              size_t index,
                              char *buf,
                              size_t cap,
                              size_t *needed);

/*
 Character count of row `index` as a decimal string (or `num/den`).

 # Safety
 As for [`rz_table_degree`].
 */
enum RzStatus rz_table_count(const struct RzTable *table,
                             size_t index,
                             char *buf,
                             size_t cap,
                             size_t *needed);

/*
 Releases a table; NULL is ignored.

 # Safety
 `table` must be NULL or a handle from [`rz_table_new`] not yet freed.
 */
void rz_table_free(struct RzTable *table);

/*
 Builds the zeta function of the given form.

 # Safety
 `out` must be writable; release the handle with [`rz_zeta_free`].
 */
enum RzStatus rz_zeta_new(enum RzForm form, uint32_t n, uint64_t q, struct RzZeta **out);

/*
 Evaluates at a real `s`; `RZ_STATUS_DIVERGES` at or left of the abscissa.

 # Safety
 `zeta` must be a live handle and `value` writable.
 */
enum RzStatus rz_zeta_evaluate(const struct RzZeta *zeta, double s, double *value);

/*
 Abscissa of convergence as a reduced fraction. Returns
 `RZ_STATUS_DIVERGES` when the series diverges everywhere.

 # Safety
 `zeta` must be a live handle; `num` and `den` must be writable.
 */
enum RzStatus rz_zeta_abscissa(const struct RzZeta *zeta, int64_t *num, int64_t *den);

/*
 Closed form as JSON: `{"form", "n", "q", "prefactor": {"a", "b"},
 "abscissa", "terms": [{"type", "c", "D"}]}`.

 # Safety
 As for [`rz_table_degree`], with `zeta` a live handle.
 */
enum RzStatus rz_zeta_json(const struct RzZeta *zeta, char *buf, size_t cap, size_t *needed);

/*
 Dirichlet coefficients for all degrees up to `bound` (a decimal string)
 as JSON: `{"M": "..", "coeffs": {"degree": "count", ..}}`.

 # Safety
 `bound` must be a NUL-terminated string; otherwise as for [`rz_zeta_json`].
 */
enum RzStatus rz_zeta_truncate_json(const struct RzZeta *zeta,
                                    const char *bound,
                                    char *buf,
                                    size_t cap,
                                    size_t *needed);

/*
 Releases a zeta handle; NULL is ignored.

 # Safety
 `zeta` must be NULL or a handle from [`rz_zeta_new`] not yet freed.
 */
void rz_zeta_free(struct RzZeta *zeta);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REGZETA_H */
