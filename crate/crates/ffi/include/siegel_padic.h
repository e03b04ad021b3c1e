#ifndef SIEGEL_PADIC_H
#define SIEGEL_PADIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_PARSE = 1,
  SP_STATUS_DOMAIN = 2,
  SP_STATUS_POLE = 3,
  SP_STATUS_PRECISION = 4,
  SP_STATUS_CONVERGENCE = 5,
  SP_STATUS_UNSUPPORTED = 6,
  SP_STATUS_NULL_POINTER = 7,
  SP_STATUS_PANIC = 8,
} SpStatus;

// A Dirichlet character.
typedef struct SpChar SpChar;

// Eisenstein family parameters.
typedef struct SpEisParams SpEisParams;

// A finite U_p model over Z/p^N.
typedef struct SpModel SpModel;

// A p-adic number.
typedef struct SpPAdic SpPAdic;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. Free with `sp_string_free`.
char *sp_last_error(void);

// # Safety
// `s` must come from this library and not have been freed.
void sp_string_free(char *s);

// Parses a character from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SpStatus sp_char_from_json(const char *json, struct SpChar **out);

// # Safety
// `out` must be writable.
enum SpStatus sp_char_trivial(uint64_t modulus, struct SpChar **out);

// The Teichmüller character modulo p.
//
// # Safety
// `out` must be writable.
enum SpStatus sp_char_omega(uint64_t p, struct SpChar **out);

// # Safety
// `h` must come from this library and not have been freed.
void sp_char_free(struct SpChar *h);

// Gauss sum of a character as cyclotomic JSON. Returns NULL if `chi` is NULL.
//
// # Safety
// `chi` must be a live handle or NULL.
char *sp_gauss_sum_json(const struct SpChar *chi);

// L_p([t], η) to absolute precision `prec`. A NULL `eta` means the trivial character.
//
// # Safety
// `eta` must be a live handle or NULL; `out` must be writable.
enum SpStatus sp_kl_eval(uint64_t p,
                         int64_t t,
                         const struct SpChar *eta,
                         int64_t prec,
                         bool literal_euler_factor,
                         struct SpPAdic **out);

// # Safety
// `h` must be a live handle.
int64_t sp_padic_valuation(const struct SpPAdic *h);

// # Safety
// `h` must be a live handle.
int64_t sp_padic_precision(const struct SpPAdic *h);

// True when the two numbers agree modulo p^m.
//
// # Safety
// Both handles must be live.
bool sp_padic_eq_mod(const struct SpPAdic *a, const struct SpPAdic *b, int64_t m);

// # Safety
// `h` must be a live handle or NULL.
char *sp_padic_to_json(const struct SpPAdic *h);

// # Safety
// `h` must come from this library and not have been freed.
void sp_padic_free(struct SpPAdic *h);

// Parses and validates Eisenstein parameters.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SpStatus sp_eis_params_from_json(const char *json, struct SpEisParams **out);

// # Safety
// `h` must come from this library and not have been freed.
void sp_eis_params_free(struct SpEisParams *h);

// Classical coefficient at (T1, T4), given as JSON rows of 2T1 and 2T4. The result is
// cyclotomic JSON, written to `*out` and freed with `sp_string_free`.
//
// # Safety
// `params` must be live, the strings NUL-terminated, `out` writable.
enum SpStatus sp_eis_classical_json(const struct SpEisParams *params,
                                    const char *t1,
                                    const char *t4,
                                    char **out);

// Family coefficient a_(T1,T4,L)([k], [t]) to absolute precision `prec`.
//
// # Safety
// `params` must be live, the strings NUL-terminated, `out` writable.
enum SpStatus sp_eis_family_coeff(const struct SpEisParams *params,
                                  const char *t1,
                                  const char *t4,
                                  int64_t k,
                                  int64_t t,
                                  int64_t prec,
                                  struct SpPAdic **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SpStatus sp_model_from_json(const char *json, struct SpModel **out);

// The ordinary projector e = lim U^(n!) of a model.
//
// # Safety
// `model` must be live; `out` must be writable.
enum SpStatus sp_ordinary_projector(const struct SpModel *model, struct SpModel **out);

// Rank modulo p, or −1 for NULL.
//
// # Safety
// `model` must be a live handle or NULL.
int64_t sp_model_rank_mod_p(const struct SpModel *model);

// # Safety
// `model` must be a live handle or NULL.
char *sp_model_to_json(const struct SpModel *model);

// # Safety
// `h` must come from this library and not have been freed.
void sp_model_free(struct SpModel *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIEGEL_PADIC_H */
