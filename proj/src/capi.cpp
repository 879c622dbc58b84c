#include "gtspline.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gts/classify.hpp"
#include "gts/errors.hpp"
#include "gts/independence.hpp"
#include "gts/mesh_io.hpp"
#include "gts/surface.hpp"
#include "gts/tmesh.hpp"

struct gts_space {
  gts::TMeshSpace space;
};

struct gts_surface {
  gts::GTSurface surface;
};

namespace {

thread_local std::string g_last_error;

gts_status map_code(gts::errc code) {
  using gts::errc;
  switch (code) {
    case errc::none:
      return GTS_OK;
    case errc::invalid_argument:
      return GTS_E_INVALID_ARGUMENT;
    case errc::chebyshev_violation:
      return GTS_E_CHEBYSHEV_VIOLATION;
    case errc::degenerate_span:
      return GTS_E_DEGENERATE_SPAN;
    case errc::multiplicity_too_high:
      return GTS_E_MULTIPLICITY_TOO_HIGH;
    case errc::index_out_of_range:
      return GTS_E_INDEX_OUT_OF_RANGE;
    case errc::knot_outside_domain:
      return GTS_E_KNOT_OUTSIDE_DOMAIN;
    case errc::multiplicity_overflow:
      return GTS_E_MULTIPLICITY_OVERFLOW;
    case errc::function_vector_mismatch:
      return GTS_E_FUNCTION_VECTOR_MISMATCH;
    case errc::malformed_partition:
      return GTS_E_MALFORMED_PARTITION;
    case errc::not_admissible:
      return GTS_E_NOT_ADMISSIBLE;
    case errc::insufficient_intersections:
      return GTS_E_INSUFFICIENT_INTERSECTIONS;
    case errc::requires_ad_plus:
      return GTS_E_REQUIRES_AD_PLUS;
    case errc::step_limit_exceeded:
      return GTS_E_STEP_LIMIT_EXCEEDED;
    case errc::dimension_mismatch:
      return GTS_E_DIMENSION_MISMATCH;
    case errc::zero_denominator:
      return GTS_E_ZERO_DENOMINATOR;
    case errc::singular_fit:
      return GTS_E_SINGULAR_FIT;
    case errc::parse_error:
      return GTS_E_PARSE;
    case errc::io_error:
      return GTS_E_IO;
    case errc::internal:
      return GTS_E_INTERNAL;
  }
  return GTS_E_INTERNAL;
}

// Runs the body under the catch-all net the C boundary needs.
template <typename Fn>
gts_status wrap(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const gts::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GTS_E_BAD_ALLOC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GTS_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GTS_E_INTERNAL;
  }
}

gts_status arg_error(const char* message) {
  g_last_error = message;
  return GTS_E_INVALID_ARGUMENT;
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

gts::Flavor to_flavor(int polynomial_flavor) {
  return polynomial_flavor != 0 ? gts::Flavor::polynomial : gts::Flavor::gb;
}

gts::CoreKind to_core_kind(gts_core_kind kind) {
  switch (kind) {
    case GTS_CORE_POLYNOMIAL:
      return gts::CoreKind::polynomial;
    case GTS_CORE_TRIGONOMETRIC:
      return gts::CoreKind::trigonometric;
    case GTS_CORE_HYPERBOLIC:
      return gts::CoreKind::hyperbolic;
  }
  gts::fail(gts::errc::invalid_argument, "unknown core kind value");
}

gts_status fit_shape(const gts::ReferenceShape& shape, gts_core_kind kind,
                     int fit_samples, int check_samples, double* out_max_error,
                     gts_surface** out_surface) {
  return wrap([&]() -> gts_status {
    if (out_max_error == nullptr) return arg_error("fit: NULL out_max_error");
    gts::TMeshSpace space = gts::reproduction_space(shape, to_core_kind(kind));
    gts::Reproduction result =
        gts::reproduce_reference(shape, space, fit_samples > 0 ? fit_samples : 40,
                                 check_samples > 0 ? check_samples : 101);
    if (out_surface != nullptr)
      *out_surface = new gts_surface{std::move(result.surface)};
    *out_max_error = result.max_error;
    return GTS_OK;
  });
}

}  // namespace

extern "C" {

const char* gts_status_name(gts_status status) {
  switch (status) {
    case GTS_OK:
      return "ok";
    case GTS_E_INVALID_ARGUMENT:
      return "invalid_argument";
    case GTS_E_CHEBYSHEV_VIOLATION:
      return "chebyshev_violation";
    case GTS_E_DEGENERATE_SPAN:
      return "degenerate_span";
    case GTS_E_MULTIPLICITY_TOO_HIGH:
      return "multiplicity_too_high";
    case GTS_E_INDEX_OUT_OF_RANGE:
      return "index_out_of_range";
    case GTS_E_KNOT_OUTSIDE_DOMAIN:
      return "knot_outside_domain";
    case GTS_E_MULTIPLICITY_OVERFLOW:
      return "multiplicity_overflow";
    case GTS_E_FUNCTION_VECTOR_MISMATCH:
      return "function_vector_mismatch";
    case GTS_E_MALFORMED_PARTITION:
      return "malformed_partition";
    case GTS_E_NOT_ADMISSIBLE:
      return "not_admissible";
    case GTS_E_INSUFFICIENT_INTERSECTIONS:
      return "insufficient_intersections";
    case GTS_E_REQUIRES_AD_PLUS:
      return "requires_ad_plus";
    case GTS_E_STEP_LIMIT_EXCEEDED:
      return "step_limit_exceeded";
    case GTS_E_DIMENSION_MISMATCH:
      return "dimension_mismatch";
    case GTS_E_ZERO_DENOMINATOR:
      return "zero_denominator";
    case GTS_E_SINGULAR_FIT:
      return "singular_fit";
    case GTS_E_PARSE:
      return "parse_error";
    case GTS_E_IO:
      return "io_error";
    case GTS_E_BAD_ALLOC:
      return "bad_alloc";
    case GTS_E_INTERNAL:
      return "internal";
  }
  return "?";
}

const char* gts_last_error(void) { return g_last_error.c_str(); }

void gts_string_free(char* text) { std::free(text); }

gts_status gts_space_parse(const char* json_text, gts_space** out_space) {
  return wrap([&]() -> gts_status {
    if (json_text == nullptr || out_space == nullptr)
      return arg_error("gts_space_parse: NULL argument");
    *out_space = new gts_space{gts::parse_mesh(json_text)};
    return GTS_OK;
  });
}

gts_status gts_space_read_file(const char* path, gts_space** out_space) {
  return wrap([&]() -> gts_status {
    if (path == nullptr || out_space == nullptr)
      return arg_error("gts_space_read_file: NULL argument");
    *out_space = new gts_space{gts::read_mesh_file(path)};
    return GTS_OK;
  });
}

void gts_space_free(gts_space* space) { delete space; }

gts_status gts_space_mesh_json(const gts_space* space, char** out_text) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || out_text == nullptr)
      return arg_error("gts_space_mesh_json: NULL argument");
    *out_text = dup_string(gts::mesh_to_json(space->space));
    return GTS_OK;
  });
}

gts_status gts_space_report_json(const gts_space* space, char** out_text) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || out_text == nullptr)
      return arg_error("gts_space_report_json: NULL argument");
    gts::ClassificationReport report = gts::classify_mesh(
        space->space.mesh(), space->space.line_s(), space->space.line_t());
    *out_text = dup_string(gts::report_to_json(report));
    return GTS_OK;
  });
}

gts_status gts_space_dims(const gts_space* space, int* out_p, int* out_q, int* out_mu,
                          int* out_nu) {
  return wrap([&]() -> gts_status {
    if (space == nullptr) return arg_error("gts_space_dims: NULL space");
    if (out_p != nullptr) *out_p = space->space.mesh().p();
    if (out_q != nullptr) *out_q = space->space.mesh().q();
    if (out_mu != nullptr) *out_mu = space->space.mesh().mu();
    if (out_nu != nullptr) *out_nu = space->space.mesh().nu();
    return GTS_OK;
  });
}

int gts_space_admissible(const gts_space* space) {
  return space != nullptr && space->space.mesh().admissible() ? 1 : 0;
}

gts_status gts_matrix_summary(const gts_space* space, int polynomial_flavor,
                              double rank_tol, double zero_tol, gts_matrix_stats* out) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || out == nullptr)
      return arg_error("gts_matrix_summary: NULL argument");
    gts::RefinementMatrix matrix =
        gts::build_refinement_matrix(space->space, to_flavor(polynomial_flavor));
    const double ztol = zero_tol > 0 ? zero_tol : 1e-12;
    gts::BoolMatrix pattern(matrix.entries.rows(), matrix.entries.cols());
    for (Eigen::Index i = 0; i < matrix.entries.rows(); ++i)
      for (Eigen::Index j = 0; j < matrix.entries.cols(); ++j)
        pattern(i, j) = std::abs(matrix.entries(i, j)) > ztol;
    gts_matrix_stats stats;
    stats.rows = static_cast<int>(matrix.entries.rows());
    stats.cols = static_cast<int>(matrix.entries.cols());
    stats.full_rank = gts::is_full_rank(matrix, rank_tol > 0 ? rank_tol : 1e-8) ? 1 : 0;
    stats.reduction_void =
        gts::column_reduction(pattern.transpose()).is_void() ? 1 : 0;
    *out = stats;
    return GTS_OK;
  });
}

gts_status gts_matrix_csv(const gts_space* space, int polynomial_flavor,
                          char** out_text) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || out_text == nullptr)
      return arg_error("gts_matrix_csv: NULL argument");
    *out_text = dup_string(gts::to_csv(
        gts::build_refinement_matrix(space->space, to_flavor(polynomial_flavor))));
    return GTS_OK;
  });
}

gts_status gts_matrix_pattern(const gts_space* space, int polynomial_flavor,
                              double zero_tol, char** out_text) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || out_text == nullptr)
      return arg_error("gts_matrix_pattern: NULL argument");
    gts::RefinementMatrix matrix =
        gts::build_refinement_matrix(space->space, to_flavor(polynomial_flavor));
    *out_text = dup_string(gts::to_pattern(matrix, zero_tol > 0 ? zero_tol : 1e-12));
    return GTS_OK;
  });
}

gts_status gts_refine_step_json(int step, char** out_text) {
  return wrap([&]() -> gts_status {
    if (out_text == nullptr) return arg_error("gts_refine_step_json: NULL out_text");
    std::vector<gts::IndexTMesh> sequence = gts::refine_example4(step);
    const gts::IndexTMesh& mesh = sequence.back();
    std::vector<double> knots_s, knots_t;
    for (int i = mesh.xmin(); i <= mesh.xmax(); ++i) knots_s.push_back(i);
    for (int i = mesh.ymin(); i <= mesh.ymax(); ++i) knots_t.push_back(i);
    std::vector<gts::SectionCore> cores_s(mesh.xmax() - mesh.xmin(),
                                          gts::polynomial_core());
    std::vector<gts::SectionCore> cores_t(mesh.ymax() - mesh.ymin(),
                                          gts::polynomial_core());
    gts::TMeshSpace space =
        gts::TMeshSpace::build(mesh, std::move(knots_s), std::move(knots_t),
                               std::move(cores_s), std::move(cores_t));
    *out_text = dup_string(gts::mesh_to_json(space));
    return GTS_OK;
  });
}

gts_status gts_random_mesh_json(int p, int q, int mu, int nu, unsigned int seed,
                                int require_plus, char** out_text) {
  return wrap([&]() -> gts_status {
    if (out_text == nullptr) return arg_error("gts_random_mesh_json: NULL out_text");
    std::mt19937 rng(seed);
    gts::IndexTMesh mesh =
        gts::random_admissible_mesh(p, q, mu, nu, rng, require_plus != 0);
    std::vector<double> knots_s, knots_t;
    for (int i = mesh.xmin(); i <= mesh.xmax(); ++i) knots_s.push_back(i);
    for (int i = mesh.ymin(); i <= mesh.ymax(); ++i) knots_t.push_back(i);
    std::vector<gts::SectionCore> cores_s(mesh.xmax() - mesh.xmin(),
                                          gts::polynomial_core());
    std::vector<gts::SectionCore> cores_t(mesh.ymax() - mesh.ymin(),
                                          gts::polynomial_core());
    gts::TMeshSpace space =
        gts::TMeshSpace::build(mesh, std::move(knots_s), std::move(knots_t),
                               std::move(cores_s), std::move(cores_t));
    *out_text = dup_string(gts::mesh_to_json(space));
    return GTS_OK;
  });
}

gts_status gts_surface_create(const gts_space* space, const double* points_xyz,
                              const double* weights, int count,
                              gts_surface** out_surface) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || points_xyz == nullptr || out_surface == nullptr)
      return arg_error("gts_surface_create: NULL argument");
    if (count < 0) return arg_error("gts_surface_create: negative count");
    gts::ControlNet net;
    net.points.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
      net.points.emplace_back(points_xyz[3 * i], points_xyz[3 * i + 1],
                              points_xyz[3 * i + 2]);
    if (weights != nullptr) {
      net.weights.assign(weights, weights + count);
    } else {
      net.weights.assign(static_cast<size_t>(count), 1.0);
    }
    *out_surface = new gts_surface{gts::GTSurface(space->space, std::move(net))};
    return GTS_OK;
  });
}

gts_status gts_surface_from_net_json(const gts_space* space, const char* net_json,
                                     gts_surface** out_surface) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || net_json == nullptr || out_surface == nullptr)
      return arg_error("gts_surface_from_net_json: NULL argument");
    *out_surface =
        new gts_surface{gts::GTSurface(space->space, gts::parse_net(net_json))};
    return GTS_OK;
  });
}

gts_status gts_surface_from_net_file(const gts_space* space, const char* path,
                                     gts_surface** out_surface) {
  return wrap([&]() -> gts_status {
    if (space == nullptr || path == nullptr || out_surface == nullptr)
      return arg_error("gts_surface_from_net_file: NULL argument");
    *out_surface =
        new gts_surface{gts::GTSurface(space->space, gts::read_net_file(path))};
    return GTS_OK;
  });
}

void gts_surface_free(gts_surface* surface) { delete surface; }

gts_status gts_surface_domain(const gts_surface* surface, double* out_s_lo,
                              double* out_s_hi, double* out_t_lo, double* out_t_hi) {
  return wrap([&]() -> gts_status {
    if (surface == nullptr) return arg_error("gts_surface_domain: NULL surface");
    if (out_s_lo != nullptr) *out_s_lo = surface->surface.s_lo();
    if (out_s_hi != nullptr) *out_s_hi = surface->surface.s_hi();
    if (out_t_lo != nullptr) *out_t_lo = surface->surface.t_lo();
    if (out_t_hi != nullptr) *out_t_hi = surface->surface.t_hi();
    return GTS_OK;
  });
}

gts_status gts_surface_eval(const gts_surface* surface, double s, double t,
                            double out_xyz[3]) {
  return wrap([&]() -> gts_status {
    if (surface == nullptr || out_xyz == nullptr)
      return arg_error("gts_surface_eval: NULL argument");
    Eigen::Vector3d point = surface->surface.evaluate(s, t);
    out_xyz[0] = point.x();
    out_xyz[1] = point.y();
    out_xyz[2] = point.z();
    return GTS_OK;
  });
}

gts_status gts_surface_csv(const gts_surface* surface, int resolution,
                           char** out_text) {
  return wrap([&]() -> gts_status {
    if (surface == nullptr || out_text == nullptr)
      return arg_error("gts_surface_csv: NULL argument");
    *out_text = dup_string(gts::surface_to_csv(surface->surface, resolution));
    return GTS_OK;
  });
}

gts_status gts_surface_obj(const gts_surface* surface, int resolution,
                           char** out_text) {
  return wrap([&]() -> gts_status {
    if (surface == nullptr || out_text == nullptr)
      return arg_error("gts_surface_obj: NULL argument");
    *out_text = dup_string(gts::surface_to_obj(surface->surface, resolution));
    return GTS_OK;
  });
}

gts_status gts_fit_helicoid(double r1, double r2, double h, double omega,
                            gts_core_kind kind, int fit_samples, int check_samples,
                            double* out_max_error, gts_surface** out_surface) {
  return fit_shape(gts::HelicoidSection{r1, r2, h, omega}, kind, fit_samples,
                   check_samples, out_max_error, out_surface);
}

gts_status gts_fit_spring(double big_r, double small_r, double h, double omega_s,
                          double omega_t, gts_core_kind kind, int fit_samples,
                          int check_samples, double* out_max_error,
                          gts_surface** out_surface) {
  return fit_shape(gts::Spring{big_r, small_r, h, omega_s, omega_t}, kind, fit_samples,
                   check_samples, out_max_error, out_surface);
}

}  // extern "C"
