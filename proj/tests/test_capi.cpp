#include <doctest.h>

#include <gtspline.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "gts/classify.hpp"
#include "gts/independence.hpp"
#include "gts/mesh_io.hpp"
#include "gts/surface.hpp"

namespace {

// RAII wrappers so failed CHECKs cannot leak boundary allocations.
struct StringOut {
  char* text = nullptr;
  ~StringOut() { gts_string_free(text); }
  std::string str() const { return text == nullptr ? std::string() : text; }
};

struct SpaceHandle {
  gts_space* ptr = nullptr;
  ~SpaceHandle() { gts_space_free(ptr); }
};

struct SurfaceHandle {
  gts_surface* ptr = nullptr;
  ~SurfaceHandle() { gts_surface_free(ptr); }
};

gts::TMeshSpace keystone_space() {
  std::vector<gts::LineSegment> v = {{2, -1, 3}, {3, -1, 3}};
  std::vector<gts::LineSegment> h = {{3, -1, 6}, {2, -1, 3}};
  gts::IndexTMesh mesh = gts::mesh_from_segments(4, 4, 4, 4, v, h);
  std::vector<double> ks, kt;
  for (int i = mesh.xmin(); i <= mesh.xmax(); ++i) ks.push_back(i);
  for (int i = mesh.ymin(); i <= mesh.ymax(); ++i) kt.push_back(i);
  std::vector<gts::SectionCore> cs(7, gts::trig_core(0.9));
  std::vector<gts::SectionCore> ct(7, gts::polynomial_core());
  return gts::TMeshSpace::build(mesh, ks, kt, cs, ct);
}

}  // namespace

TEST_CASE("status values carry stable names") {
  CHECK(std::string(gts_status_name(GTS_OK)) == "ok");
  CHECK(std::string(gts_status_name(GTS_E_PARSE)) == "parse_error");
  CHECK(std::string(gts_status_name(GTS_E_NOT_ADMISSIBLE)) == "not_admissible");
  CHECK(std::string(gts_status_name(GTS_E_STEP_LIMIT_EXCEEDED)) == "step_limit_exceeded");
  CHECK(std::string(gts_status_name(GTS_E_BAD_ALLOC)) == "bad_alloc");
}

TEST_CASE("spaces cross the boundary with canonical text") {
  std::string text = gts::mesh_to_json(keystone_space());

  SpaceHandle space;
  REQUIRE(gts_space_parse(text.c_str(), &space.ptr) == GTS_OK);
  CHECK(std::string(gts_last_error()).empty());

  int p = 0, q = 0, mu = 0, nu = 0;
  REQUIRE(gts_space_dims(space.ptr, &p, &q, &mu, &nu) == GTS_OK);
  CHECK(p == 4);
  CHECK(q == 4);
  CHECK(mu == 4);
  CHECK(nu == 4);
  CHECK(gts_space_admissible(space.ptr) == 1);

  StringOut round;
  REQUIRE(gts_space_mesh_json(space.ptr, &round.text) == GTS_OK);
  CHECK(round.str() == text);

  SUBCASE("parse failures leave the out-parameter alone") {
    gts_space* sentinel = reinterpret_cast<gts_space*>(0x1);
    gts_space* out = sentinel;
    CHECK(gts_space_parse("{\"p\": 4,", &out) == GTS_E_PARSE);
    CHECK(out == sentinel);
    CHECK(std::string(gts_last_error()).find("line") != std::string::npos);
  }
  SUBCASE("NULL arguments are rejected, not dereferenced") {
    CHECK(gts_space_parse(nullptr, &space.ptr) == GTS_E_INVALID_ARGUMENT);
    CHECK(gts_space_parse(text.c_str(), nullptr) == GTS_E_INVALID_ARGUMENT);
    CHECK(gts_space_mesh_json(nullptr, &round.text) == GTS_E_INVALID_ARGUMENT);
    CHECK(gts_space_dims(nullptr, &p, nullptr, nullptr, nullptr) ==
          GTS_E_INVALID_ARGUMENT);
    CHECK(gts_space_admissible(nullptr) == 0);
    CHECK(std::string(gts_last_error()).find("NULL") != std::string::npos);
  }
  SUBCASE("file loading reports io errors") {
    SpaceHandle from_file;
    CHECK(gts_space_read_file("/no/such/mesh.json", &from_file.ptr) == GTS_E_IO);
  }
}

TEST_CASE("classification reports match the core library byte for byte") {
  gts::TMeshSpace space = keystone_space();
  std::string expected = gts::report_to_json(
      gts::classify_mesh(space.mesh(), space.line_s(), space.line_t()));

  SpaceHandle handle;
  REQUIRE(gts_space_parse(gts::mesh_to_json(space).c_str(), &handle.ptr) == GTS_OK);
  StringOut report;
  REQUIRE(gts_space_report_json(handle.ptr, &report.text) == GTS_OK);
  CHECK(report.str() == expected);
}

TEST_CASE("matrix summaries agree with the core library") {
  gts::TMeshSpace space = keystone_space();
  SpaceHandle handle;
  REQUIRE(gts_space_parse(gts::mesh_to_json(space).c_str(), &handle.ptr) == GTS_OK);

  gts_matrix_stats stats{};
  REQUIRE(gts_matrix_summary(handle.ptr, 0, -1.0, -1.0, &stats) == GTS_OK);
  CHECK(stats.rows == 13);
  CHECK(stats.cols == 16);
  CHECK(stats.full_rank == 1);
  CHECK(stats.reduction_void == 1);

  StringOut csv;
  REQUIRE(gts_matrix_csv(handle.ptr, 0, &csv.text) == GTS_OK);
  CHECK(csv.str() == gts::to_csv(gts::build_refinement_matrix(space, gts::Flavor::gb)));

  SUBCASE("both flavors share the zero pattern") {
    StringOut gb, poly;
    REQUIRE(gts_matrix_pattern(handle.ptr, 0, 1e-12, &gb.text) == GTS_OK);
    REQUIRE(gts_matrix_pattern(handle.ptr, 1, 1e-12, &poly.text) == GTS_OK);
    CHECK(gb.str() == poly.str());
    CHECK(gb.str() ==
          gts::to_pattern(gts::build_refinement_matrix(space, gts::Flavor::gb), 1e-12));
  }
  SUBCASE("non-admissible meshes are refused with the domain status") {
    std::vector<gts::LineSegment> v = {{2, -1, 5}, {3, -1, 5}};
    gts::IndexTMesh broken = gts::mesh_from_segments(4, 4, 4, 3, v, {{2, 0, 2}});
    std::vector<double> ks, kt;
    for (int i = broken.xmin(); i <= broken.xmax(); ++i) ks.push_back(i);
    for (int i = broken.ymin(); i <= broken.ymax(); ++i) kt.push_back(i);
    std::vector<gts::SectionCore> cs(ks.size() - 1, gts::polynomial_core());
    std::vector<gts::SectionCore> ct(kt.size() - 1, gts::polynomial_core());
    gts::TMeshSpace broken_space = gts::TMeshSpace::build(broken, ks, kt, cs, ct);

    SpaceHandle bad;
    REQUIRE(gts_space_parse(gts::mesh_to_json(broken_space).c_str(), &bad.ptr) == GTS_OK);
    CHECK(gts_space_admissible(bad.ptr) == 0);
    CHECK(gts_matrix_summary(bad.ptr, 0, -1.0, -1.0, &stats) == GTS_E_NOT_ADMISSIBLE);
  }
}

TEST_CASE("refinement step documents round-trip through parsing") {
  StringOut step0;
  REQUIRE(gts_refine_step_json(0, &step0.text) == GTS_OK);
  CHECK(gts::parse_mesh(step0.str()).mesh() == gts::tp_mesh(4, 4, 4, 4));

  StringOut step3;
  REQUIRE(gts_refine_step_json(3, &step3.text) == GTS_OK);
  CHECK(gts::parse_mesh(step3.str()).mesh() == gts::refine_example4(3).back());

  CHECK(gts_refine_step_json(-1, &step0.text) == GTS_E_INVALID_ARGUMENT);
  CHECK(gts_refine_step_json(9, &step0.text) == GTS_E_STEP_LIMIT_EXCEEDED);
  CHECK(gts_refine_step_json(0, nullptr) == GTS_E_INVALID_ARGUMENT);
}

TEST_CASE("surfaces evaluate and export through the boundary") {
  StringOut doc;
  REQUIRE(gts_refine_step_json(0, &doc.text) == GTS_OK);  // 4x4 tensor space
  SpaceHandle space;
  REQUIRE(gts_space_parse(doc.text, &space.ptr) == GTS_OK);

  std::vector<double> xyz;
  for (int i = 0; i < 16; ++i) {
    xyz.push_back(2.0);
    xyz.push_back(-1.0);
    xyz.push_back(5.0);
  }

  SurfaceHandle surface;
  REQUIRE(gts_surface_create(space.ptr, xyz.data(), nullptr, 16, &surface.ptr) ==
          GTS_OK);

  double lo_s = 0, hi_s = 0, lo_t = 0, hi_t = 0;
  REQUIRE(gts_surface_domain(surface.ptr, &lo_s, &hi_s, &lo_t, &hi_t) == GTS_OK);
  CHECK(lo_s == 1.0);
  CHECK(hi_s == 4.0);
  CHECK(lo_t == 1.0);
  CHECK(hi_t == 4.0);

  double point[3] = {0, 0, 0};
  REQUIRE(gts_surface_eval(surface.ptr, 2.5, 3.25, point) == GTS_OK);
  CHECK(point[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(point[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(point[2] == doctest::Approx(5.0).epsilon(1e-12));

  SUBCASE("exports carry the expected shapes") {
    StringOut csv;
    REQUIRE(gts_surface_csv(surface.ptr, 2, &csv.text) == GTS_OK);
    CHECK(csv.str().rfind("s,t,x,y,z\n", 0) == 0);

    StringOut obj;
    REQUIRE(gts_surface_obj(surface.ptr, 3, &obj.text) == GTS_OK);
    int vertices = 0, faces = 0;
    std::string line;
    for (std::size_t pos = 0; pos < obj.str().size();) {
      std::size_t end = obj.str().find('\n', pos);
      line = obj.str().substr(pos, end - pos);
      if (line.rfind("v ", 0) == 0) ++vertices;
      if (line.rfind("f ", 0) == 0) ++faces;
      pos = end + 1;
    }
    CHECK(vertices == 9);
    CHECK(faces == 8);

    CHECK(gts_surface_csv(surface.ptr, 1, &csv.text) == GTS_E_INVALID_ARGUMENT);
  }
  SUBCASE("rational evaluation outside the support is flagged") {
    CHECK(gts_surface_eval(surface.ptr, 40.0, 1.0, point) == GTS_E_ZERO_DENOMINATOR);
  }
  SUBCASE("net validation surfaces the domain codes") {
    SurfaceHandle bad;
    CHECK(gts_surface_create(space.ptr, xyz.data(), nullptr, 12, &bad.ptr) ==
          GTS_E_DIMENSION_MISMATCH);
    std::vector<double> weights(16, 1.0);
    weights[7] = 0.0;
    CHECK(gts_surface_create(space.ptr, xyz.data(), weights.data(), 16, &bad.ptr) ==
          GTS_E_INVALID_ARGUMENT);
    CHECK(gts_surface_from_net_json(space.ptr, R"({"points": [[0, 0]]})", &bad.ptr) ==
          GTS_E_PARSE);
  }
  SUBCASE("nets load from json text and files") {
    std::string net_json = gts::net_to_json([&] {
      gts::ControlNet net;
      for (int i = 0; i < 16; ++i) net.points.emplace_back(1.0, 2.0, 3.0);
      net.weights.assign(16, 2.0);
      return net;
    }());

    SurfaceHandle from_json;
    REQUIRE(gts_surface_from_net_json(space.ptr, net_json.c_str(), &from_json.ptr) ==
            GTS_OK);
    REQUIRE(gts_surface_eval(from_json.ptr, 2.0, 2.0, point) == GTS_OK);
    CHECK(point[0] == doctest::Approx(1.0).epsilon(1e-12));

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "gts_capi_test";
    fs::create_directories(dir);
    fs::path net_path = dir / "net.json";
    gts::write_text_file(net_path.string(), net_json);
    SurfaceHandle from_file;
    CHECK(gts_surface_from_net_file(space.ptr, net_path.string().c_str(),
                                    &from_file.ptr) == GTS_OK);
    fs::remove_all(dir);
  }
}

TEST_CASE("reference fits cross the boundary") {
  double error = -1.0;
  SurfaceHandle helicoid;
  REQUIRE(gts_fit_helicoid(0.5, 1.0, 6.0, 3.0, GTS_CORE_TRIGONOMETRIC, 0, 0, &error,
                           &helicoid.ptr) == GTS_OK);
  CHECK(error <= 1e-6);
  REQUIRE(helicoid.ptr != nullptr);
  StringOut obj;
  CHECK(gts_surface_obj(helicoid.ptr, 4, &obj.text) == GTS_OK);

  SUBCASE("polynomial cores cannot reproduce the shape") {
    double poly_error = 0.0;
    REQUIRE(gts_fit_helicoid(0.5, 1.0, 6.0, 3.0, GTS_CORE_POLYNOMIAL, 0, 0, &poly_error,
                             nullptr) == GTS_OK);
    CHECK(poly_error >= 1e-3);
  }
  SUBCASE("under-determined grids and bad kinds are rejected") {
    CHECK(gts_fit_helicoid(0.5, 1.0, 6.0, 3.0, GTS_CORE_TRIGONOMETRIC, 3, 0, &error,
                           nullptr) == GTS_E_SINGULAR_FIT);
    CHECK(gts_fit_helicoid(0.5, 1.0, 6.0, 3.0, static_cast<gts_core_kind>(42), 0, 0,
                           &error, nullptr) == GTS_E_INVALID_ARGUMENT);
    CHECK(gts_fit_helicoid(0.5, 1.0, 6.0, 3.0, GTS_CORE_TRIGONOMETRIC, 0, 0, nullptr,
                           nullptr) == GTS_E_INVALID_ARGUMENT);
  }
  SUBCASE("the spring fit works through the same path") {
    double spring_error = -1.0;
    REQUIRE(gts_fit_spring(3.0, 1.0, 8.0 * 3.14159265358979323846, 1.0, 2.0,
                           GTS_CORE_TRIGONOMETRIC, 0, 0, &spring_error, nullptr) ==
            GTS_OK);
    CHECK(spring_error <= 1e-6);
  }
}
