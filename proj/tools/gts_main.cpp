// Command-line front end for the generalized T-spline library. Every
// operation goes through the C boundary in gtspline.h; this translation
// unit owns only argument parsing, file placement, and exit codes:
//   0  success
//   2  unreadable or malformed input documents
//   3  mesh not admissible (or not admissible-plus where required)
//   1  any other domain failure
#include <CLI11.hpp>

#include <gtspline.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct TextOut {
  char* text = nullptr;
  ~TextOut() { gts_string_free(text); }
};

struct SpaceOut {
  gts_space* ptr = nullptr;
  ~SpaceOut() { gts_space_free(ptr); }
};

struct SurfaceOut {
  gts_surface* ptr = nullptr;
  ~SurfaceOut() { gts_surface_free(ptr); }
};

int exit_code_for(gts_status status) {
  switch (status) {
    case GTS_OK:
      return 0;
    case GTS_E_PARSE:
    case GTS_E_IO:
      return 2;
    case GTS_E_NOT_ADMISSIBLE:
    case GTS_E_REQUIRES_AD_PLUS:
      return 3;
    default:
      return 1;
  }
}

int report_failure(gts_status status) {
  std::cerr << "error (" << gts_status_name(status) << "): " << gts_last_error()
            << "\n";
  return exit_code_for(status);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) {
    std::cerr << "error (io_error): cannot write " << path << "\n";
    return false;
  }
  return true;
}

// Stdout when no path was given.
bool emit(const std::string& path, const char* text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  return write_file(path, text);
}

int run_check(const std::string& input, const std::string& output) {
  SpaceOut space;
  gts_status status = gts_space_read_file(input.c_str(), &space.ptr);
  if (status != GTS_OK) return report_failure(status);
  TextOut report;
  status = gts_space_report_json(space.ptr, &report.text);
  if (status != GTS_OK) return report_failure(status);
  if (!emit(output, report.text)) return 2;
  return gts_space_admissible(space.ptr) != 0 ? 0 : 3;
}

int run_matrix(const std::string& input, const std::string& flavor, double rank_tol,
               double zero_tol, const std::string& output,
               const std::string& pattern_path) {
  SpaceOut space;
  gts_status status = gts_space_read_file(input.c_str(), &space.ptr);
  if (status != GTS_OK) return report_failure(status);
  const int polynomial = flavor == "poly" ? 1 : 0;

  gts_matrix_stats stats{};
  status = gts_matrix_summary(space.ptr, polynomial, rank_tol, zero_tol, &stats);
  if (status != GTS_OK) return report_failure(status);
  std::cout << "n " << stats.rows << "\n"
            << "n_hat " << stats.cols << "\n"
            << "full_rank " << (stats.full_rank != 0 ? "true" : "false") << "\n"
            << "reduction_void " << (stats.reduction_void != 0 ? "true" : "false")
            << "\n";

  if (!output.empty()) {
    TextOut csv;
    status = gts_matrix_csv(space.ptr, polynomial, &csv.text);
    if (status != GTS_OK) return report_failure(status);
    if (!write_file(output, csv.text)) return 2;
  }
  if (!pattern_path.empty()) {
    TextOut pattern;
    status = gts_matrix_pattern(space.ptr, polynomial, zero_tol, &pattern.text);
    if (status != GTS_OK) return report_failure(status);
    if (!write_file(pattern_path, pattern.text)) return 2;
  }
  return 0;
}

int run_refine(int steps, const std::string& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) {
    std::cerr << "error (io_error): cannot create " << output_dir << "\n";
    return 2;
  }
  for (int step = 0; step <= steps; ++step) {
    TextOut text;
    gts_status status = gts_refine_step_json(step, &text.text);
    if (status != GTS_OK) return report_failure(status);
    std::string path =
        (std::filesystem::path(output_dir) / ("step_" + std::to_string(step) + ".json"))
            .string();
    if (!write_file(path, text.text)) return 2;
    std::cout << path << "\n";
  }
  return 0;
}

int run_random(int p, int q, int mu, int nu, unsigned int seed, bool plus,
               const std::string& output) {
  TextOut text;
  gts_status status =
      gts_random_mesh_json(p, q, mu, nu, seed, plus ? 1 : 0, &text.text);
  if (status != GTS_OK) return report_failure(status);
  if (!emit(output, text.text)) return 2;
  return 0;
}

struct SurfaceArgs {
  std::string input;
  std::string net;
  std::string shape;
  std::string core = "trig";
  int resolution = 33;
  std::string csv;
  std::string obj;
  double r1 = 0.5, r2 = 1.0, omega = 3.0;
  double big_r = 3.0, small_r = 1.0, omega_s = 1.0, omega_t = 2.0;
  double height = -1.0;  // default depends on the shape
};

int run_surface(const SurfaceArgs& args) {
  SurfaceOut surface;
  if (!args.shape.empty()) {
    const gts_core_kind kind = args.core == "poly"   ? GTS_CORE_POLYNOMIAL
                               : args.core == "hyp"  ? GTS_CORE_HYPERBOLIC
                                                     : GTS_CORE_TRIGONOMETRIC;
    double max_error = 0.0;
    gts_status status;
    if (args.shape == "helicoid") {
      const double height = args.height > 0 ? args.height : 6.0;
      status = gts_fit_helicoid(args.r1, args.r2, height, args.omega, kind, 0, 0,
                                &max_error, &surface.ptr);
    } else {
      const double height = args.height > 0 ? args.height : 8.0 * M_PI;
      status = gts_fit_spring(args.big_r, args.small_r, height, args.omega_s,
                              args.omega_t, kind, 0, 0, &max_error, &surface.ptr);
    }
    if (status != GTS_OK) return report_failure(status);
    std::printf("max_error %.17g\n", max_error);
  } else {
    if (args.input.empty() || args.net.empty()) {
      std::cerr << "error (invalid_argument): surface needs --shape, or both --input "
                   "and --net\n";
      return 1;
    }
    SpaceOut space;
    gts_status status = gts_space_read_file(args.input.c_str(), &space.ptr);
    if (status != GTS_OK) return report_failure(status);
    status = gts_surface_from_net_file(space.ptr, args.net.c_str(), &surface.ptr);
    if (status != GTS_OK) return report_failure(status);
  }

  if (!args.csv.empty()) {
    TextOut text;
    gts_status status = gts_surface_csv(surface.ptr, args.resolution, &text.text);
    if (status != GTS_OK) return report_failure(status);
    if (!write_file(args.csv, text.text)) return 2;
  }
  if (!args.obj.empty()) {
    TextOut text;
    gts_status status = gts_surface_obj(surface.ptr, args.resolution, &text.text);
    if (status != GTS_OK) return report_failure(status);
    if (!write_file(args.obj, text.text)) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized T-spline toolbox"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "classify a mesh document");
  std::string check_input, check_output;
  check->add_option("--input", check_input, "mesh document to classify")->required();
  check->add_option("--output", check_output, "report path (stdout when omitted)");

  auto* matrix =
      app.add_subcommand("matrix", "refinement-matrix verdicts and dumps");
  std::string matrix_input, matrix_flavor = "gb", matrix_output, matrix_pattern;
  double rank_tol = 1e-8, zero_tol = 1e-12;
  matrix->add_option("--input", matrix_input, "mesh document")->required();
  matrix->add_option("--flavor", matrix_flavor, "section-core flavor of the expansion")
      ->check(CLI::IsMember({"gb", "poly"}));
  matrix->add_option("--rank-tol", rank_tol, "relative singular-value cutoff")
      ->check(CLI::PositiveNumber);
  matrix->add_option("--zero-tol", zero_tol, "zero threshold for the 0/1 pattern")
      ->check(CLI::PositiveNumber);
  matrix->add_option("--output", matrix_output, "CSV dump path");
  matrix->add_option("--pattern", matrix_pattern, "0/1 pattern dump path");

  auto* refine =
      app.add_subcommand("refine", "benchmark bi-order (4,4) refinement sequence");
  int steps = 4;
  std::string refine_output;
  refine->add_option("--steps", steps, "number of refinement steps")
      ->check(CLI::NonNegativeNumber);
  refine->add_option("--output", refine_output, "directory for step_<k>.json files")
      ->required();

  auto* random = app.add_subcommand("random", "seeded random admissible mesh");
  int rp = 4, rq = 4, rmu = 6, rnu = 6;
  unsigned int seed = 1;
  bool plus = true;
  std::string random_output;
  random->add_option("--p", rp, "order along s");
  random->add_option("--q", rq, "order along t");
  random->add_option("--mu", rmu, "active-region extent along s");
  random->add_option("--nu", rnu, "active-region extent along t");
  random->add_option("--seed", seed, "generator seed");
  random->add_flag("--plus,!--no-plus", plus, "require the admissible-plus class");
  random->add_option("--output", random_output, "mesh path (stdout when omitted)");

  auto* surface = app.add_subcommand("surface", "evaluate and export surfaces");
  SurfaceArgs sargs;
  surface->add_option("--input", sargs.input, "mesh document");
  surface->add_option("--net", sargs.net, "control-net document");
  surface->add_option("--shape", sargs.shape, "closed-form reference shape to fit")
      ->check(CLI::IsMember({"helicoid", "spring"}));
  surface->add_option("--core", sargs.core, "section-core kind for the fit")
      ->check(CLI::IsMember({"trig", "poly", "hyp"}));
  surface->add_option("--resolution", sargs.resolution, "samples per direction");
  surface->add_option("--csv", sargs.csv, "CSV export path");
  surface->add_option("--obj", sargs.obj, "OBJ export path");
  surface->add_option("--r1", sargs.r1, "helicoid inner radius");
  surface->add_option("--r2", sargs.r2, "helicoid outer radius");
  surface->add_option("--omega", sargs.omega, "helicoid angular frequency");
  surface->add_option("--big-r", sargs.big_r, "spring coil radius");
  surface->add_option("--small-r", sargs.small_r, "spring tube radius");
  surface->add_option("--omega-s", sargs.omega_s, "spring tube frequency");
  surface->add_option("--omega-t", sargs.omega_t, "spring coil frequency");
  surface->add_option("--height", sargs.height,
                      "t extent (defaults: helicoid 6, spring 8*pi)");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run_check(check_input, check_output);
  if (matrix->parsed())
    return run_matrix(matrix_input, matrix_flavor, rank_tol, zero_tol, matrix_output,
                      matrix_pattern);
  if (refine->parsed()) return run_refine(steps, refine_output);
  if (random->parsed()) return run_random(rp, rq, rmu, rnu, seed, plus, random_output);
  if (surface->parsed()) return run_surface(sargs);
  return 1;
}
