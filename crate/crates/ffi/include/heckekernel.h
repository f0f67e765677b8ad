#ifndef HECKEKERNEL_H
#define HECKEKERNEL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdint.h>
#include <stddef.h>

#define HK_OK 0

#define HK_ERR_NULL 1

#define HK_ERR_PARSE 2

#define HK_ERR_INVALID 3

#define HK_ERR_NUMERIC 4

#define HK_ERR_UNSUPPORTED 5

#define HK_ERR_PANIC 6

/*
 An affine Hecke algebra with fixed root datum and labels.
 */
typedef struct HkAlgebra HkAlgebra;

/*
 An element of an `HkAlgebra` in the `N_w` basis. Only meaningful
 together with the algebra that produced it.
 */
typedef struct HkElement HkElement;

/*
 Library version, a static string.
 */
const char *hk_version(void);

/*
 Message for the last failure on this thread (empty after success).
 Valid until the next `hk_*` call on the same thread.
 */
const char *hk_last_error(void);

/*
 # Safety
 `s` is null or was returned by this library and not yet freed.
 */
void hk_string_free(char *s);

/*
 Algebra for a named preset (`"A1-sc"`, `"A1-adj"`, `"A2"`, `"B2"`,
 `"GL2"`). `labels_json` is a JSON object such as `{"long":2,"short":1}`,
 or null for all labels 1.

 # Safety
 String arguments are null or NUL-terminated; `out` is writable.
 */
int32_t hk_algebra_new_preset(const char *name,
                              const char *labels_json,
                              struct HkAlgebra **out_alg);

/*
 Algebra for an explicit datum `{"rank":..,"roots":..,"coroots":..,"simple":..}`.

 # Safety
 As for `hk_algebra_new_preset`.
 */
int32_t hk_algebra_new_datum(const char *datum_json,
                             const char *labels_json,
                             struct HkAlgebra **out_alg);

/*
 # Safety
 `alg` is null or a live handle from this library.
 */
void hk_algebra_free(struct HkAlgebra *alg);

/*
 # Safety
 `alg` is a live handle; `out_rank` is writable.
 */
int32_t hk_algebra_rank(const struct HkAlgebra *alg, uint32_t *out_rank);

/*
 Element from a JSON5 term list, e.g. `[{w:"s1", c:"v - v^-1"}, {theta:[1]}]`.

 # Safety
 `alg` is a live handle, `terms` NUL-terminated, `out_elt` writable.
 */
int32_t hk_element_parse(const struct HkAlgebra *alg,
                         const char *terms,
                         struct HkElement **out_elt);

/*
 # Safety
 `elt` is null or a live handle from this library.
 */
void hk_element_free(struct HkElement *elt);

/*
 `out = a · b`; the result is a new handle.

 # Safety
 All handles live and belonging to `alg`; `out_elt` writable.
 */
int32_t hk_element_mul(const struct HkAlgebra *alg,
                       const struct HkElement *a,
                       const struct HkElement *b,
                       struct HkElement **out_elt);

/*
 JSON array of `[word, coefficient]` pairs in canonical order.

 # Safety
 Handles live; `out_json` writable. Free the result with `hk_string_free`.
 */
int32_t hk_element_to_json(const struct HkAlgebra *alg,
                           const struct HkElement *elt,
                           char **out_json);

/*
 `τ(h)`, the coefficient of `N_e`, as a Laurent polynomial string.

 # Safety
 Handles live; `out_str` writable. Free with `hk_string_free`.
 */
int32_t hk_element_trace(const struct HkAlgebra *alg, const struct HkElement *elt, char **out_str);

/*
 `c(t)` over all positive roots at the torus point with coordinates
 `re[k] + i·im[k]`, `k < n` (`n` must equal the rank).

 # Safety
 `re`, `im` point to `n` doubles; out-pointers writable.
 */
int32_t hk_cfun_eval(const struct HkAlgebra *alg,
                     double q,
                     const double *re,
                     const double *im,
                     uintptr_t n,
                     double *out_re,
                     double *out_im);

/*
 Residual points up to `W0`, as a JSON array of exact point strings.

 # Safety
 Handle live; `out_json` writable. Free with `hk_string_free`.
 */
int32_t hk_residual_points(const struct HkAlgebra *alg, char **out_json);

/*
 Run a whole CLI job from its JSON5 configuration text. `format` is
 `"csv"`, `"json"`, `"text"` or null (config default). On `HK_OK`,
 `out_text` holds the rendered output and `out_exit` the CLI exit code
 (nonzero for e.g. a datum that fails validation).

 # Safety
 Strings null or NUL-terminated; out-pointers writable.
 */
int32_t hk_run_job(const char *config, const char *format, char **out_text, int32_t *out_exit);

#endif  /* HECKEKERNEL_H */
