#ifndef HADAMARD_H
#define HADAMARD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum HtStatus {
  HT_STATUS_OK = 0,
  HT_STATUS_PARSE_ERROR = 1,
  HT_STATUS_DOMAIN_ERROR = 2,
  HT_STATUS_INTERNAL_ERROR = 3,
  HT_STATUS_AUDIT_ERROR = 4,
  HT_STATUS_NULL_POINTER = 5,
  HT_STATUS_INVALID_UTF8 = 6,
  HT_STATUS_PANIC = 7,
} HtStatus;

// Closed-form families for [`ht_closed_form`] and [`ht_verify`].
typedef enum HtTheorem {
  HT_THEOREM_SHAPIRO = 0,
  HT_THEOREM_T1 = 1,
  HT_THEOREM_T2 = 2,
  HT_THEOREM_T3 = 3,
  HT_THEOREM_T4 = 4,
  HT_THEOREM_LEMMA = 5,
  HT_THEOREM_B0 = 6,
  HT_THEOREM_CHEB = 7,
  HT_THEOREM_ALL = 8,
} HtTheorem;

// A rational generating function `num / den` in `x` over `Z[a, b]`.
typedef struct HtRationalGf HtRationalGf;

// A truncated power series in `x` over `Z[a, b]`.
typedef struct HtSeries HtSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. Valid until
// the next failing call on the same thread.
const char *ht_last_error_message(void);

// Byte offset of the most recent syntax error on this thread, or -1.
int64_t ht_last_error_position(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ht_string_free(char *s);

// Parses `num / den`. The denominator must have constant term 1 (or -1,
// which is normalized).
//
// # Safety
// `num` and `den` must be nul-terminated strings; `out` must be writable.
enum HtStatus ht_rgf_parse(const char *num, const char *den, struct HtRationalGf **out);

// # Safety
// `gf` must come from this library and not have been freed. Null is ignored.
void ht_rgf_free(struct HtRationalGf *gf);

// Numerator in the CLI's text form. Free with [`ht_string_free`].
//
// # Safety
// `gf` must be a live handle or null.
char *ht_rgf_num_string(const struct HtRationalGf *gf);

// Denominator in the CLI's text form. Free with [`ht_string_free`].
//
// # Safety
// `gf` must be a live handle or null.
char *ht_rgf_den_string(const struct HtRationalGf *gf);

// Series expansion through `x^order`.
//
// # Safety
// `gf` must be a live handle; `out` must be writable.
enum HtStatus ht_rgf_expand(const struct HtRationalGf *gf, size_t order, struct HtSeries **out);

// Rational Hadamard product of `u` and `v`.
//
// # Safety
// `u`, `v` must be live handles; `out` must be writable.
enum HtStatus ht_hadamard_rational(const struct HtRationalGf *u,
                                   const struct HtRationalGf *v,
                                   struct HtRationalGf **out);

// Sets `*equal` to whether `u` and `v` are the same rational function.
//
// # Safety
// `u`, `v` must be live handles; `equal` must be writable.
enum HtStatus ht_rgf_equal(const struct HtRationalGf *u, const struct HtRationalGf *v, bool *equal);

// Closed form of one family. `m` and `n` are ignored where unused.
// `Lemma` and `All` have no closed form and give a domain error.
//
// # Safety
// `out` must be writable.
enum HtStatus ht_closed_form(enum HtTheorem theorem,
                             int64_t m,
                             int64_t n,
                             struct HtRationalGf **out);

// Runs the verifier. `m` and `n` may be null when the family does not use
// them. `*passed` receives the overall verdict.
//
// # Safety
// `m`, `n` must be null or readable; `passed` must be writable.
enum HtStatus ht_verify(enum HtTheorem theorem,
                        const int64_t *m,
                        const int64_t *n,
                        size_t order,
                        bool *passed);

// # Safety
// `s` must come from this library and not have been freed. Null is ignored.
void ht_series_free(struct HtSeries *s);

// Highest stored power of `x`, or 0 for null.
//
// # Safety
// `s` must be a live handle or null.
size_t ht_series_order(const struct HtSeries *s);

// Coefficient of `x^k` as text, or null past the order. Free with
// [`ht_string_free`].
//
// # Safety
// `s` must be a live handle or null.
char *ht_series_coeff_string(const struct HtSeries *s, size_t k);

// `{"order": N, "coeffs": [...]}`. Free with [`ht_string_free`].
//
// # Safety
// `s` must be a live handle or null.
char *ht_series_to_json(const struct HtSeries *s);

// Inverse of [`ht_series_to_json`].
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum HtStatus ht_series_from_json(const char *json, struct HtSeries **out);

// Coefficientwise product of two series of the same order.
//
// # Safety
// `s`, `t` must be live handles; `out` must be writable.
enum HtStatus ht_hadamard_series(const struct HtSeries *s,
                                 const struct HtSeries *t,
                                 struct HtSeries **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HADAMARD_H */
