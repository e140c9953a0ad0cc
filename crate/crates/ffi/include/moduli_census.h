#ifndef MODULI_CENSUS_H
#define MODULI_CENSUS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum McStatus {
  MC_STATUS_OK = 0,
  // A computed value disagreed with a required identity.
  MC_STATUS_MISMATCH = 1,
  // Invalid argument.
  MC_STATUS_USAGE = 2,
  // Input beyond the sizes the engine enumerates.
  MC_STATUS_CAPACITY = 3,
  MC_STATUS_NULL_POINTER = 4,
  MC_STATUS_INVALID_UTF8 = 5,
  MC_STATUS_PANIC = 6,
} McStatus;

// Elliptic curves over `F_q` up to isomorphism.
typedef struct McEllipticCensus McEllipticCensus;

// A finite field `F_q`.
typedef struct McField McField;

// Stored `σ_{a,b,c}(p)` values.
typedef struct McSigmaAbcStore McSigmaAbcStore;

// Genus-two masses and trace formulas at a prime.
typedef struct McTraceEngine McTraceEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *mc_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void mc_string_free(char *s);

// # Safety
// `out` must be a valid pointer.
enum McStatus mc_field_new(uint64_t q, struct McField **out);

// # Safety
// `field` must be NULL or a live handle.
uint64_t mc_field_order(const struct McField *field);

// # Safety
// `field` must be NULL or a live handle.
uint32_t mc_field_characteristic(const struct McField *field);

// # Safety
// `field` must be NULL or a handle from [`mc_field_new`], freed once.
void mc_field_free(struct McField *field);

// # Safety
// `field` must be a live handle and `out` a valid pointer.
enum McStatus mc_elliptic_census_new(const struct McField *field, struct McEllipticCensus **out);

// Number of isomorphism classes, or 0 for NULL.
//
// # Safety
// `census` must be NULL or a live handle.
size_t mc_elliptic_census_len(const struct McEllipticCensus *census);

// Point count and automorphism group order of class `index`.
//
// # Safety
// `census` must be a live handle; `n1` and `aut` valid pointers.
enum McStatus mc_elliptic_census_class(const struct McEllipticCensus *census,
                                       size_t index,
                                       int64_t *n1,
                                       uint32_t *aut);

// Total mass `Σ 1/#Aut` as `"n/d"` or an integer string.
//
// # Safety
// `census` must be a live handle and `out` a valid pointer.
enum McStatus mc_elliptic_census_total_mass(const struct McEllipticCensus *census, char **out);

// `σ_k(q)` as a decimal string.
//
// # Safety
// `census` must be a live handle and `out` a valid pointer.
enum McStatus mc_elliptic_census_sigma(const struct McEllipticCensus *census,
                                       uint32_t k,
                                       char **out);

// `#M_{1,n}(F_q)` by the direct route, checked against the residue route.
//
// # Safety
// `census` must be a live handle and `out` a valid pointer.
enum McStatus mc_m1n(const struct McEllipticCensus *census, size_t n, char **out);

// # Safety
// `census` must be NULL or a handle from [`mc_elliptic_census_new`], freed once.
void mc_elliptic_census_free(struct McEllipticCensus *census);

// Builds the genus-two census over `F_p`; `p = 2` uses the `y^2 + hy = f` models.
//
// # Safety
// `out` must be a valid pointer.
enum McStatus mc_trace_engine_new(uint64_t p, struct McTraceEngine **out);

// `Tr(T_p, S_{j,k})` for vector-valued Siegel cusp forms of degree two.
//
// # Safety
// `engine` must be a live handle and `out` a valid pointer.
enum McStatus mc_trace_degree2(const struct McTraceEngine *engine,
                               int64_t j,
                               int64_t k,
                               char **out);

// `σ_{a,b}(p)` with the fixed calibration.
//
// # Safety
// `engine` must be a live handle and `out` a valid pointer.
enum McStatus mc_sigma_ab(const struct McTraceEngine *engine, int64_t a, int64_t b, char **out);

// `Tr(T_p, S_{i,j,k})` in degree three from stored `σ_{a,b,c}`.
//
// # Safety
// `engine` and `store` must be live handles and `out` a valid pointer.
enum McStatus mc_trace_degree3(const struct McTraceEngine *engine,
                               const struct McSigmaAbcStore *store,
                               int64_t i,
                               int64_t j,
                               int64_t k,
                               char **out);

// # Safety
// `engine` must be NULL or a handle from [`mc_trace_engine_new`], freed once.
void mc_trace_engine_free(struct McTraceEngine *engine);

// Parses records `p a b c value`, one per line. A NULL `text` gives the
// bundled records.
//
// # Safety
// `text` must be NULL or a NUL-terminated string; `out` a valid pointer.
enum McStatus mc_sigma_abc_store_new(const char *text, struct McSigmaAbcStore **out);

// # Safety
// `store` must be NULL or a live handle.
size_t mc_sigma_abc_store_len(const struct McSigmaAbcStore *store);

// # Safety
// `store` must be NULL or a handle from [`mc_sigma_abc_store_new`], freed once.
void mc_sigma_abc_store_free(struct McSigmaAbcStore *store);

// Runs acceptance criterion `id`; `Mismatch` when it fails.
enum McStatus mc_verify_criterion(uint32_t id);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODULI_CENSUS_H */
