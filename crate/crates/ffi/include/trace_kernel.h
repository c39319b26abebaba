#ifndef TRACE_KERNEL_H
#define TRACE_KERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TkStatus {
  TK_STATUS_OK = 0,
  TK_STATUS_NULL_POINTER = 1,
  TK_STATUS_INVALID_ARGUMENT = 2,
  TK_STATUS_RESOURCE_LIMIT = 3,
  TK_STATUS_SINGULAR_MATRIX = 4,
  /*
   The check ran and its report says fail. The report is still returned.
   */
  TK_STATUS_VERIFICATION_FAILED = 5,
  TK_STATUS_CERTIFICATION_FAILED = 6,
  TK_STATUS_INTERNAL = 99,
} TkStatus;

typedef enum TkScalarKind {
  TK_SCALAR_KIND_MODP = 0,
  TK_SCALAR_KIND_RATIONAL = 1,
} TkScalarKind;

typedef enum TkCheck {
  TK_CHECK_KERNEL = 0,
  TK_CHECK_AL = 1,
  TK_CHECK_DISTINCT = 2,
  TK_CHECK_HOMOLOGY = 3,
  TK_CHECK_CONTROL = 4,
  TK_CHECK_SL2 = 5,
  TK_CHECK_ALL = 6,
} TkCheck;

/*
 Opaque chain handle.
 */
typedef struct TkChain TkChain;

typedef struct TkVerifyParams {
  uint32_t n;
  uint32_t trials;
  enum TkScalarKind kind;
  uint64_t prime;
  uint64_t seed;
  uint64_t bound;
  uint32_t cap;
  bool sharpness;
} TkVerifyParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread. The pointer stays
 valid until the next `tk_*` call on the same thread.
 */
const char *tk_last_error(void);

/*
 # Safety
 `s` must come from a `tk_*` out-parameter and not have been freed.
 */
void tk_string_free(char *s);

/*
 Builds Θ_n. `cap` bounds the enumerated degree 2n (0 selects the default of 10).

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum TkStatus tk_theta_build(uint32_t n, uint32_t cap, struct TkChain **out);

/*
 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TkStatus tk_chain_from_json(const char *json, struct TkChain **out);

/*
 # Safety
 `chain` must be null or a live handle from this library.
 */
void tk_chain_free(struct TkChain *chain);

/*
 Number of classes with nonzero coefficient; 0 for a null handle.

 # Safety
 `chain` must be null or a live handle.
 */
size_t tk_chain_support_size(const struct TkChain *chain);

/*
 Serializes to the chain JSON format.

 # Safety
 `chain` must be a live handle; `out` must be writable.
 */
enum TkStatus tk_chain_to_json(const struct TkChain *chain, char **out);

/*
 Trace of the chain at `a ↦ A`, `b ↦ B` over F_p. `a` and `b` point to
 `n*n` row-major residues; both matrices must be invertible mod `prime`.

 # Safety
 `a` and `b` must each point to `n*n` readable `uint64_t`; `out` must be writable.
 */
enum TkStatus tk_chain_trace_modp(const struct TkChain *chain,
                                  uint32_t n,
                                  const uint64_t *a,
                                  const uint64_t *b,
                                  uint64_t prime,
                                  uint64_t *out);

/*
 Canonical class string of a word over `a`, `A`, `b`, `B`.

 # Safety
 `word` must be NUL-terminated; `out` must be writable.
 */
enum TkStatus tk_word_canonical_class(const char *word, char **out);

/*
 # Safety
 `u` and `v` must be NUL-terminated; `out` must be writable.
 */
enum TkStatus tk_words_are_conjugate(const char *u, const char *v, bool *out);

/*
 Exponent sums of `a` and `b`.

 # Safety
 `word` must be NUL-terminated; `exp_a` and `exp_b` must be writable.
 */
enum TkStatus tk_word_abelianize(const char *word, int64_t *exp_a, int64_t *exp_b);

/*
 Defaults matching the command line: n = 2, 100 trials over F_p with
 p = 2^61 − 1, seed 0, bound 10, cap 10.
 */
struct TkVerifyParams tk_verify_params_default(void);

/*
 Runs a check and writes its JSON report to `report_json`. Returns
 `TK_STATUS_VERIFICATION_FAILED` with the report filled in when the check
 fails; any other non-OK status means no report was produced.

 # Safety
 `params` must point to a valid struct; `report_json` must be writable.
 */
enum TkStatus tk_verify(enum TkCheck check,
                        const struct TkVerifyParams *params,
                        char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRACE_KERNEL_H */
