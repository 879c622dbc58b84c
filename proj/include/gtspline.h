/* C boundary for the generalized T-spline library.
 *
 * Conventions:
 *   - Every fallible call returns a gts_status; GTS_OK is zero.
 *   - On failure the thread-local message of gts_last_error() describes the
 *     problem; out-parameters are left untouched.
 *   - Strings returned through char** out-parameters are heap-allocated and
 *     must be released with gts_string_free(). Handles must be released with
 *     their matching *_free() call. All *_free() functions accept NULL.
 *   - Handles are opaque; one handle must not be used from two threads at
 *     the same time, distinct handles are independent.
 */
#ifndef GTSPLINE_H
#define GTSPLINE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gts_status {
  GTS_OK = 0,
  GTS_E_INVALID_ARGUMENT = 1,
  GTS_E_CHEBYSHEV_VIOLATION = 2,
  GTS_E_DEGENERATE_SPAN = 3,
  GTS_E_MULTIPLICITY_TOO_HIGH = 4,
  GTS_E_INDEX_OUT_OF_RANGE = 5,
  GTS_E_KNOT_OUTSIDE_DOMAIN = 6,
  GTS_E_MULTIPLICITY_OVERFLOW = 7,
  GTS_E_FUNCTION_VECTOR_MISMATCH = 8,
  GTS_E_MALFORMED_PARTITION = 9,
  GTS_E_NOT_ADMISSIBLE = 10,
  GTS_E_INSUFFICIENT_INTERSECTIONS = 11,
  GTS_E_REQUIRES_AD_PLUS = 12,
  GTS_E_STEP_LIMIT_EXCEEDED = 13,
  GTS_E_DIMENSION_MISMATCH = 14,
  GTS_E_ZERO_DENOMINATOR = 15,
  GTS_E_SINGULAR_FIT = 16,
  GTS_E_PARSE = 17,
  GTS_E_IO = 18,
  GTS_E_BAD_ALLOC = 19,
  GTS_E_INTERNAL = 20
} gts_status;

typedef enum gts_core_kind {
  GTS_CORE_POLYNOMIAL = 0,
  GTS_CORE_TRIGONOMETRIC = 1,
  GTS_CORE_HYPERBOLIC = 2
} gts_core_kind;

/* A T-mesh space: index mesh plus knot lines and section cores. */
typedef struct gts_space gts_space;
/* A rational surface over a space: control points and positive weights. */
typedef struct gts_surface gts_surface;

/* Stable name of a status value ("ok", "parse_error", ...). */
const char* gts_status_name(gts_status status);

/* Message of the last failure on this thread; empty after a success. The
 * pointer stays valid until the next library call on the same thread. */
const char* gts_last_error(void);

void gts_string_free(char* text);

/* ---- spaces ------------------------------------------------------------ */

/* Parse a JSON mesh document (fields p, q, mu, nu, cells, and optional
 * knots_s/knots_t/cores_s/cores_t). Non-admissible meshes parse fine; the
 * classification below reports them. */
gts_status gts_space_parse(const char* json_text, gts_space** out_space);
gts_status gts_space_read_file(const char* path, gts_space** out_space);
void gts_space_free(gts_space* space);

/* Canonical JSON form of the space (sorted cells, fixed field order). */
gts_status gts_space_mesh_json(const gts_space* space, char** out_text);

/* Classification report as JSON: admissible, ad_plus, analysis_suitable,
 * dual_compatible, weakly_dc_types, vmcr, anchors_count, extensions.
 * Knot multiplicities of the space feed the VMCR / weak-DC classifiers. */
gts_status gts_space_report_json(const gts_space* space, char** out_text);

/* Any subset of the out-pointers may be NULL. */
gts_status gts_space_dims(const gts_space* space, int* out_p, int* out_q, int* out_mu,
                          int* out_nu);

/* 1 when the mesh is admissible, 0 otherwise (also for NULL). */
int gts_space_admissible(const gts_space* space);

/* ---- refinement matrices ------------------------------------------------ */

typedef struct gts_matrix_stats {
  int rows;           /* blending functions of the mesh */
  int cols;           /* functions of the underlying tensor-product space */
  int full_rank;      /* 1 when the rows are linearly independent */
  int reduction_void; /* 1 when the transposed-pattern column reduction is void */
} gts_matrix_stats;

/* Expansion of each blending function over the underlying tensor-product
 * space. polynomial_flavor selects the polynomial-core comparison matrix
 * (same mesh and knots, polynomial cores everywhere). Pass rank_tol <= 0 or
 * zero_tol <= 0 for the defaults (1e-8 and 1e-12). */
gts_status gts_matrix_summary(const gts_space* space, int polynomial_flavor,
                              double rank_tol, double zero_tol, gts_matrix_stats* out);

/* CSV dump: header row with tensor-product anchor labels, one row per
 * blending function. */
gts_status gts_matrix_csv(const gts_space* space, int polynomial_flavor, char** out_text);

/* 0/1 pattern dump, one text line per row. */
gts_status gts_matrix_pattern(const gts_space* space, int polynomial_flavor,
                              double zero_tol, char** out_text);

/* ---- refinement sequence ------------------------------------------------ */

/* Mesh document of the given step of the bi-order (4,4) benchmark
 * refinement (step 0 is the 4x4 tensor-product mesh), with uniform knots
 * and polynomial cores. Steps beyond 8 are rejected. */
gts_status gts_refine_step_json(int step, char** out_text);

/* Random admissible mesh document of bi-order (p, q) with extents (mu, nu),
 * uniform knots and polynomial cores; the same arguments always produce the
 * same document. require_plus selects the stricter admissibility class
 * needed by the dual-compatibility classifier. */
gts_status gts_random_mesh_json(int p, int q, int mu, int nu, unsigned int seed,
                                int require_plus, char** out_text);

/* ---- surfaces ----------------------------------------------------------- */

/* points_xyz holds 3*count doubles (x,y,z per control point); weights may
 * be NULL for unit weights, otherwise holds count positive values. The
 * count must equal the space's anchor count. */
gts_status gts_surface_create(const gts_space* space, const double* points_xyz,
                              const double* weights, int count, gts_surface** out_surface);

/* JSON control net: field points ([x,y,z] triples) and optional weights. */
gts_status gts_surface_from_net_json(const gts_space* space, const char* net_json,
                                     gts_surface** out_surface);
gts_status gts_surface_from_net_file(const gts_space* space, const char* path,
                                     gts_surface** out_surface);
void gts_surface_free(gts_surface* surface);

/* Parametric active region. Any subset of the out-pointers may be NULL. */
gts_status gts_surface_domain(const gts_surface* surface, double* out_s_lo,
                              double* out_s_hi, double* out_t_lo, double* out_t_hi);

/* Rational evaluation at (s, t); out_xyz receives x, y, z. */
gts_status gts_surface_eval(const gts_surface* surface, double s, double t,
                            double out_xyz[3]);

/* Sampled geometry on a resolution x resolution grid (resolution >= 2):
 * CSV rows "s,t,x,y,z" or an OBJ with a triangulated grid. */
gts_status gts_surface_csv(const gts_surface* surface, int resolution, char** out_text);
gts_status gts_surface_obj(const gts_surface* surface, int resolution, char** out_text);

/* ---- reference shapes --------------------------------------------------- */

/* Least-squares fit of a closed-form reference shape on a bi-order (4,4)
 * tensor-product space with cores of the given kind (the shape frequencies
 * drive the core frequencies). Writes the maximum sampled coordinate error
 * to out_max_error; out_surface may be NULL when only the error is wanted.
 * Pass fit_samples <= 0 or check_samples <= 0 for the defaults (40, 101).
 *
 * Helicoid section: (s cos(omega t), s sin(omega t), t) over
 * [r1, r2] x [0, h]. Spring: ((R + r cos(omega_s s)) cos(omega_t t),
 * (R + r cos(omega_s s)) sin(omega_t t), r sin(omega_s s) + t) over
 * [0, 2 pi] x [0, h]. */
gts_status gts_fit_helicoid(double r1, double r2, double h, double omega,
                            gts_core_kind kind, int fit_samples, int check_samples,
                            double* out_max_error, gts_surface** out_surface);
gts_status gts_fit_spring(double big_r, double small_r, double h, double omega_s,
                          double omega_t, gts_core_kind kind, int fit_samples,
                          int check_samples, double* out_max_error,
                          gts_surface** out_surface);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GTSPLINE_H */
