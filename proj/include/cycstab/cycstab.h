#ifndef CYCSTAB_H
#define CYCSTAB_H

/*
 * C interface to the cyclic-covering stability calculator.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching _free function. Every fallible function returns a cycstab_status;
 * on failure the thread-local message from cycstab_last_error() describes
 * what went wrong. Exact rationals cross the boundary as reduced "p/q"
 * strings (integers without the "/q"); strings returned through out
 * parameters are heap-allocated and released with cycstab_string_free.
 * Structured results (filtrations, certificates, reports) are returned as
 * JSON text in the same schema the CLI emits with --json.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cycstab_status {
    CYCSTAB_OK = 0,
    CYCSTAB_ERROR_ARGUMENT = 1,     /* invalid argument or failed precondition */
    CYCSTAB_ERROR_DIMENSION = 2,    /* coefficient vector does not match the lattice */
    CYCSTAB_ERROR_PARSE = 3,        /* malformed scenario, query or rational */
    CYCSTAB_ERROR_UNRESOLVED = 4,   /* a scenario query references an unknown name */
    CYCSTAB_ERROR_INTERNAL = 5
} cycstab_status;

typedef struct cycstab_surface cycstab_surface;
typedef struct cycstab_divisor cycstab_divisor;
typedef struct cycstab_sheaf cycstab_sheaf;    /* formal sheaf: rank + c1 */
typedef struct cycstab_split cycstab_split;    /* split bundle: line summands */
typedef struct cycstab_cover cycstab_cover;
typedef struct cycstab_frobenius cycstab_frobenius;
typedef struct cycstab_certificate cycstab_certificate;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* cycstab_version(void);

/* Message for the most recent failure on this thread. Static storage. */
const char* cycstab_last_error(void);

void cycstab_string_free(char* text);

/* ---- surfaces ---------------------------------------------------------- */

/* name: "p2" or "product". */
cycstab_status cycstab_surface_preset(const char* name, cycstab_surface** out);

/* A custom lattice: generator labels, row-major symmetric integer
 * intersection matrix, canonical and polarization coefficient vectors as
 * rational strings (one per generator). */
cycstab_status cycstab_surface_create(const char* name, const char* const* generators,
                                      size_t generator_count, const long long* intersection,
                                      const char* const* canonical,
                                      const char* const* polarization, cycstab_surface** out);

void cycstab_surface_free(cycstab_surface* surface);

cycstab_status cycstab_surface_rank(const cycstab_surface* surface, size_t* out);

/* ---- divisor classes --------------------------------------------------- */

cycstab_status cycstab_divisor_create(const cycstab_surface* surface,
                                      const char* const* coefficients, size_t count,
                                      cycstab_divisor** out);

void cycstab_divisor_free(cycstab_divisor* divisor);

/* Exact bilinear intersection pairing D.E. */
cycstab_status cycstab_intersect(const cycstab_surface* surface, const cycstab_divisor* d,
                                 const cycstab_divisor* e, char** out);

/* deg D = D.H against the surface polarization. */
cycstab_status cycstab_degree(const cycstab_surface* surface, const cycstab_divisor* d,
                              char** out);

/* The exact l with d = l*e, when it exists; *out is NULL when the classes
 * are not proportional. e must be nonzero. */
cycstab_status cycstab_proportional_to(const cycstab_divisor* d, const cycstab_divisor* e,
                                       char** out);

/* -B.B, the conormal degree of a smooth curve in class b. */
cycstab_status cycstab_conormal_degree(const cycstab_surface* surface, const cycstab_divisor* b,
                                       char** out);

/* ---- sheaves and split bundles ----------------------------------------- */

cycstab_status cycstab_sheaf_create(int rank, const cycstab_divisor* c1, const char* label,
                                    cycstab_sheaf** out);

void cycstab_sheaf_free(cycstab_sheaf* sheaf);

cycstab_status cycstab_sheaf_rank(const cycstab_sheaf* sheaf, int* out);

cycstab_status cycstab_slope(const cycstab_surface* surface, const cycstab_sheaf* sheaf,
                             char** out);

cycstab_status cycstab_twist(const cycstab_sheaf* sheaf, const cycstab_divisor* d,
                             cycstab_sheaf** out);

cycstab_status cycstab_direct_sum(const cycstab_sheaf* const* sheaves, size_t count,
                                  cycstab_sheaf** out);

cycstab_status cycstab_tensor(const cycstab_sheaf* f, const cycstab_sheaf* g,
                              cycstab_sheaf** out);

/* Symmetric power of a rank-2 sheaf. */
cycstab_status cycstab_sym_power_rank2(const cycstab_sheaf* f, int l, cycstab_sheaf** out);

cycstab_status cycstab_split_create(const cycstab_divisor* const* summands, size_t count,
                                    cycstab_split** out);

void cycstab_split_free(cycstab_split* split);

/* Harder-Narasimhan filtration as JSON:
 * {"levels":[{"slope","summands"}],"mu_max","mu_min","instability",
 *  "semistable"} plus "jh_factors" when semistable. */
cycstab_status cycstab_hn_json(const cycstab_surface* surface, const cycstab_split* split,
                               char** out);

cycstab_status cycstab_instability(const cycstab_surface* surface, const cycstab_split* split,
                                   char** out);

/* ---- cyclic covers ------------------------------------------------------ */

/* An n-cyclic cover of the surface branched along B = n*L; char_p is 0 or
 * a prime not dividing n. */
cycstab_status cycstab_cover_create(const cycstab_surface* base, const cycstab_divisor* l_class,
                                    int n, long long char_p, cycstab_cover** out);

void cycstab_cover_free(cycstab_cover* cover);

/* The derived lattice model of the covering surface X. */
cycstab_status cycstab_cover_surface(const cycstab_cover* cover, cycstab_surface** out);

cycstab_status cycstab_pullback_class(const cycstab_cover* cover, const cycstab_divisor* d,
                                      cycstab_divisor** out);

cycstab_status cycstab_canonical_x(const cycstab_cover* cover, cycstab_divisor** out);

/* Omega_X: rank 2, c1 = K_X. */
cycstab_status cycstab_cotangent_x(const cycstab_cover* cover, cycstab_sheaf** out);

/* pi_*O_X as a split bundle on the base. */
cycstab_status cycstab_pushforward_structure(const cycstab_cover* cover, cycstab_split** out);

/* Degree and slope of pi_*E for a sheaf E on X (Grothendieck-Riemann-Roch
 * rule; see the project README for the exact formula). */
cycstab_status cycstab_pushforward_degree(const cycstab_cover* cover, const cycstab_sheaf* e_on_x,
                                          char** out);
cycstab_status cycstab_pushforward_slope(const cycstab_cover* cover, const cycstab_sheaf* e_on_x,
                                         char** out);

/* deg B on the base and deg B1 upstairs; always equal. */
cycstab_status cycstab_branch_degrees(const cycstab_cover* cover, char** out_base,
                                      char** out_cover);

/* ---- certificates ------------------------------------------------------- */

/* assume_stable: nonzero asserts the input stable, zero semistable. */
cycstab_status cycstab_certify_pullback(const cycstab_cover* cover, const cycstab_sheaf* f,
                                        int assume_stable, cycstab_certificate** out);

/* strict: nonzero runs the strict-inequality (stability) criterion. */
cycstab_status cycstab_certify_cotangent(const cycstab_cover* cover, int strict,
                                         cycstab_certificate** out);

/* Degree-n cover of the plane branched along a degree-d curve. */
cycstab_status cycstab_certify_p2_cover(int n, int d, cycstab_certificate** out);

cycstab_status cycstab_certify_cor45(int n, int d, long long p, cycstab_certificate** out);

/* *out_is_k3 is 1 when the canonical class of X vanishes numerically. */
cycstab_status cycstab_k3_check(const cycstab_cover* cover, int* out_is_k3, char** out_report);

void cycstab_certificate_free(cycstab_certificate* certificate);

/* "Stable", "Semistable" or "Inconclusive". */
cycstab_status cycstab_certificate_conclusion(const cycstab_certificate* certificate, char** out);

cycstab_status cycstab_certificate_json(const cycstab_certificate* certificate, char** out);

cycstab_status cycstab_certificate_text(const cycstab_certificate* certificate, char** out);

/* ---- Frobenius pushforward (characteristic p) --------------------------- */

cycstab_status cycstab_frobenius_create(long long p, const cycstab_surface* surface,
                                        cycstab_frobenius** out);

void cycstab_frobenius_free(cycstab_frobenius* context);

/* Graded piece V_l/V_{l+1} of the canonical filtration of F^*(F_*W). */
cycstab_status cycstab_frobenius_graded_piece(const cycstab_frobenius* context,
                                              const cycstab_sheaf* w, int l,
                                              cycstab_sheaf** out);

/* Full profile as JSON: {"pieces":[{"l","rank","degree","slope"}]}. */
cycstab_status cycstab_frobenius_profile_json(const cycstab_frobenius* context,
                                              const cycstab_sheaf* w, char** out);

/* rank, degree and slope of F_*W as JSON. */
cycstab_status cycstab_frobenius_pushforward_json(const cycstab_frobenius* context,
                                                  const cycstab_sheaf* w, char** out);

/* Maximum of the supplied per-piece instabilities (2p-1 entries). */
cycstab_status cycstab_instability_budget(const cycstab_frobenius* context,
                                          const cycstab_sheaf* w,
                                          const char* const* instabilities, size_t count,
                                          char** out);

/* budget: nonnegative rational string. twists_stable upgrades to Stable
 * when K_X.H > 0. */
cycstab_status cycstab_frobenius_certificate(const cycstab_frobenius* context,
                                             const cycstab_sheaf* w, const char* budget,
                                             int twists_stable, cycstab_certificate** out);

/* ---- scenarios, regions, selftest --------------------------------------- */

#define CYCSTAB_REPORT_TEXT 0
#define CYCSTAB_REPORT_JSON 1

/* Runs a scenario (see docs/scenario.md). override_query, when non-NULL,
 * replaces the scenario's [queries] section with a single query line.
 * source_name appears in the report (NULL for "<scenario>").
 * *out_content_failed is set to 1 when a query reports a content-level
 * failure (a failed selftest) even though the run itself succeeded. */
cycstab_status cycstab_run_scenario(const char* text, const char* source_name,
                                    const char* override_query, int report_format,
                                    char** out_report, int* out_content_failed);

/* The region tables behind `region cor3.8` / `region cor4.5`. */
cycstab_status cycstab_region_table(const char* which, int report_format, char** out_report);

/* Runs the oracle suite; *out_passed is 1 iff every check passed. */
cycstab_status cycstab_selftest(int* out_passed, char** out_report);

#ifdef __cplusplus
}
#endif

#endif /* CYCSTAB_H */
