#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gts/errors.hpp"
#include "gts/tmesh.hpp"

using gts::Anchor;
using gts::AnchorKind;
using gts::Cell;
using gts::IndexTMesh;
using gts::JunctionDir;
using gts::KnotLine;
using gts::LineSegment;
using gts::MeshClass;
using gts::TMeshSpace;

namespace {

template <typename Fn>
void expect_code(gts::errc code, Fn&& fn) {
  try {
    fn();
    FAIL_CHECK("expected error ", gts::errc_name(code), ", nothing was thrown");
  } catch (const gts::Error& e) {
    CHECK(e.code() == code);
  }
}

std::vector<int> consecutive(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

const Anchor& anchor_at(const IndexTMesh& mesh, int x1, int y1, int x2 = -1, int y2 = -1) {
  if (x2 < 0) x2 = x1;
  if (y2 < 0) y2 = y1;
  for (const Anchor& a : mesh.anchors())
    if (a.x1 == x1 && a.x2 == x2 && a.y1 == y1 && a.y2 == y2) return a;
  REQUIRE_MESSAGE(false, "anchor not found");
  return mesh.anchors().front();
}

// Bi-order (4,4), extents 4 x 3: all vertical lines full, the only interior
// horizontal line y = 2 stops at x = 2. One T-junction at (2,2) missing its
// right edge.
IndexTMesh notched_mesh() {
  std::vector<LineSegment> v = {{2, -1, 5}, {3, -1, 5}};
  std::vector<LineSegment> h = {{2, -1, 2}};
  return gts::mesh_from_segments(4, 4, 4, 3, v, h);
}

}  // namespace

TEST_CASE("tensor-product mesh is admissible-plus with vertex anchors") {
  IndexTMesh m = gts::tp_mesh(4, 4, 4, 4);
  CHECK(m.xmin() == -1);
  CHECK(m.xmax() == 6);
  CHECK(m.ymin() == -1);
  CHECK(m.ymax() == 6);
  CHECK(m.cells().size() == 49);
  CHECK(m.classification() == MeshClass::admissible_plus);
  CHECK(m.t_junctions().empty());
  CHECK(m.extensions().empty());
  CHECK(m.underlying_tp() == m);

  CHECK(m.is_vertex(0, 0));
  CHECK_FALSE(m.is_vertex(7, 0));
  CHECK(m.valence(0, 0) == 4);
  CHECK(m.valence(-1, -1) == 2);  // domain corner
  CHECK(m.valence(-1, 0) == 3);   // domain edge

  const auto& anchors = m.anchors();
  REQUIRE(anchors.size() == 16);
  for (size_t k = 0; k < anchors.size(); ++k) {
    const Anchor& a = anchors[k];
    CHECK(a.kind == AnchorKind::vertex);
    // canonical order is row-major from the bottom-left of the active region
    CHECK(a.x1 == 1 + static_cast<int>(k) % 4);
    CHECK(a.y1 == 1 + static_cast<int>(k) / 4);
    CHECK(a.x2 == a.x1);
    CHECK(a.y2 == a.y1);
    CHECK(a.global_s == consecutive(-1, 6));
    CHECK(a.global_t == consecutive(-1, 6));
    CHECK(a.local_s == consecutive(a.x1 - 2, a.x1 + 2));
    CHECK(a.local_t == consecutive(a.y1 - 2, a.y1 + 2));
  }
}

TEST_CASE("anchor taxonomy follows the order parities") {
  SUBCASE("odd-odd: cells") {
    IndexTMesh m = gts::tp_mesh(3, 3, 3, 3);
    CHECK(m.classification() == MeshClass::admissible_plus);
    const auto& anchors = m.anchors();
    REQUIRE(anchors.size() == 4);
    for (const Anchor& a : anchors) CHECK(a.kind == AnchorKind::cell);
    const Anchor& a = anchor_at(m, 1, 1, 2, 2);
    CHECK(a.local_s == consecutive(0, 3));
    CHECK(a.local_t == consecutive(0, 3));
    const Anchor& b = anchor_at(m, 2, 1, 3, 2);
    CHECK(b.local_s == consecutive(1, 4));
    CHECK(b.local_t == consecutive(0, 3));
    // canonical order is row-major here as well
    CHECK(anchors[0].x1 == 1);
    CHECK(anchors[1].x1 == 2);
    CHECK(anchors[0].y1 == anchors[1].y1);
  }

  SUBCASE("odd-even: horizontal edges, ray through the edge midpoint") {
    IndexTMesh m = gts::tp_mesh(3, 4, 3, 3);
    const auto& anchors = m.anchors();
    REQUIRE(anchors.size() == 6);
    for (const Anchor& a : anchors) {
      CHECK(a.kind == AnchorKind::h_edge);
      CHECK(a.x2 == a.x1 + 1);
      CHECK(a.y2 == a.y1);
    }
    const Anchor& a = anchor_at(m, 1, 2, 2, 2);
    CHECK(a.local_s == consecutive(0, 3));
    CHECK(a.local_t == consecutive(0, 4));
    CHECK(a.global_t == consecutive(-1, 5));  // vertical ray at x = 3/2
  }

  SUBCASE("even-odd: vertical edges") {
    IndexTMesh m = gts::tp_mesh(4, 3, 3, 3);
    const auto& anchors = m.anchors();
    REQUIRE(anchors.size() == 6);
    for (const Anchor& a : anchors) {
      CHECK(a.kind == AnchorKind::v_edge);
      CHECK(a.x2 == a.x1);
      CHECK(a.y2 == a.y1 + 1);
    }
    const Anchor& a = anchor_at(m, 2, 1, 2, 2);
    CHECK(a.local_s == consecutive(0, 4));
    CHECK(a.local_t == consecutive(0, 3));
  }

  SUBCASE("tensor-product anchor counts match the space dimensions") {
    auto count = [](int p, int q, int mu, int nu) {
      return gts::tp_mesh(p, q, mu, nu).anchors().size();
    };
    CHECK(count(4, 4, 5, 3) == 15);  // mu * nu
    CHECK(count(3, 4, 5, 3) == 12);  // (mu-1) * nu
    CHECK(count(4, 3, 5, 3) == 10);  // mu * (nu-1)
    CHECK(count(3, 3, 5, 3) == 8);
    CHECK(count(5, 6, 4, 4) == 12);  // (mu-1) * nu again at higher order
  }
}

TEST_CASE("T-junction mesh: classification, anchors, index vectors") {
  IndexTMesh m = notched_mesh();
  CHECK(m.cells().size() == 38);
  CHECK(m.classification() == MeshClass::admissible_plus);

  auto junctions = m.t_junctions();
  REQUIRE(junctions.size() == 1);
  CHECK(junctions[0].x == 2);
  CHECK(junctions[0].y == 2);
  CHECK(junctions[0].missing == JunctionDir::right);

  const auto& anchors = m.anchors();
  REQUIRE(anchors.size() == 10);
  // canonical order sorts by the right end of the t-window first, so the
  // vertices on the interrupted line y = 2 come before (3,1) and (4,1),
  // whose t-windows reach index 4.
  const std::vector<std::pair<int, int>> expected = {
      {1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}, {4, 1}, {1, 3}, {2, 3}, {3, 3}, {4, 3}};
  for (size_t k = 0; k < expected.size(); ++k) {
    CHECK(anchors[k].x1 == expected[k].first);
    CHECK(anchors[k].y1 == expected[k].second);
  }

  const Anchor& a12 = anchor_at(m, 1, 2);
  CHECK(a12.local_s == std::vector<int>{-1, 0, 1, 2, 3});
  CHECK(a12.local_t == std::vector<int>{0, 1, 2, 3, 4});

  const Anchor& a31 = anchor_at(m, 3, 1);
  CHECK(a31.global_t == std::vector<int>{-1, 0, 1, 3, 4, 5});
  CHECK(a31.local_t == std::vector<int>{-1, 0, 1, 3, 4});
  CHECK(a31.local_s == consecutive(1, 5));

  const Anchor& a33 = anchor_at(m, 3, 3);
  CHECK(a33.local_t == std::vector<int>{0, 1, 3, 4, 5});

  auto exts = m.extensions();
  REQUIRE(exts.size() == 1);
  const gts::Extension& e = exts[0];
  CHECK(e.horizontal);
  CHECK(e.line == 2);
  CHECK(e.owner.x == 2);
  CHECK(e.face_lo == 2);
  CHECK(e.face_hi == 4);
  CHECK(e.edge_lo == 1);
  CHECK(e.edge_hi == 2);
  CHECK(e.lo() == 1);
  CHECK(e.hi() == 4);
}

TEST_CASE("ray intersection rules at integral and half-integral offsets") {
  IndexTMesh m = notched_mesh();
  // The interrupted line y = 2 spans x in [-1, 2]: rays through covered
  // horizontal units see it, rays past the junction do not.
  CHECK(m.v_intersections(1.5) == std::vector<int>{-1, 0, 1, 2, 3, 4, 5});
  CHECK(m.v_intersections(2.5) == std::vector<int>{-1, 0, 1, 3, 4, 5});
  // At a vertex the rule looks to both sides: x = 2 still touches material.
  CHECK(m.v_intersections(2.0) == std::vector<int>{-1, 0, 1, 2, 3, 4, 5});
  CHECK(m.v_intersections(3.0) == std::vector<int>{-1, 0, 1, 3, 4, 5});
  // All vertical lines are full, so horizontal rays meet every one of them.
  CHECK(m.h_intersections(0.5) == consecutive(-1, 6));
  CHECK(m.h_intersections(2.0) == consecutive(-1, 6));

  CHECK_THROWS_AS(m.h_intersections(0.3), gts::Error);
  expect_code(gts::errc::invalid_argument, [&] { m.v_intersections(1.25); });
}

TEST_CASE("admissibility rejects junctions outside the open active region") {
  // Same shape as the notched mesh, but the interrupted line now also stops
  // short on the left at x = 0, a frame vertex of valence 3.
  std::vector<LineSegment> v = {{2, -1, 5}, {3, -1, 5}};
  std::vector<LineSegment> h = {{2, 0, 2}};
  IndexTMesh m = gts::mesh_from_segments(4, 4, 4, 3, v, h);
  CHECK(m.classification() == MeshClass::not_admissible);
  CHECK_FALSE(m.admissible());
  expect_code(gts::errc::not_admissible, [&] { m.anchors(); });
  expect_code(gts::errc::not_admissible, [&] { m.extensions(); });
  // the junction list itself carries no admissibility requirement
  auto junctions = m.t_junctions();
  CHECK(junctions.size() == 2);
}

TEST_CASE("admissibility requires full frame lines") {
  // Full unit grid with the two bottom-left frame cells merged: the frame
  // vertical x = 0 is interrupted inside the frame row.
  std::vector<Cell> cells;
  for (int x = -1; x < 6; ++x)
    for (int y = -1; y < 5; ++y) {
      if (x == 0 && y == -1) continue;
      if (x == -1 && y == -1)
        cells.push_back({-1, 1, -1, 0});
      else
        cells.push_back({x, x + 1, y, y + 1});
    }
  IndexTMesh m = IndexTMesh::build(4, 4, 4, 3, std::move(cells));
  CHECK(m.classification() == MeshClass::not_admissible);
}

TEST_CASE("facing junctions demote admissible-plus to admissible") {
  // Two interrupted pieces of y = 2 face each other across the cell
  // [2,3] x [1,3]: admissible, but not admissible-plus.
  std::vector<LineSegment> v = {{2, -1, 6}, {3, -1, 6}};
  std::vector<LineSegment> h = {{3, -1, 6}, {2, -1, 2}, {2, 3, 6}};
  IndexTMesh m = gts::mesh_from_segments(4, 4, 4, 4, v, h);
  CHECK(m.classification() == MeshClass::admissible);
  CHECK(m.admissible());

  auto junctions = m.t_junctions();
  REQUIRE(junctions.size() == 2);
  CHECK(junctions[0].missing == JunctionDir::right);
  CHECK(junctions[1].missing == JunctionDir::left);

  auto exts = m.extensions();
  REQUIRE(exts.size() == 2);
  CHECK(exts[0].face_lo == 2);
  CHECK(exts[0].face_hi == 4);
  CHECK(exts[0].edge_lo == 1);
  CHECK(exts[1].face_lo == 1);
  CHECK(exts[1].face_hi == 3);
  CHECK(exts[1].edge_hi == 4);
}

TEST_CASE("malformed partitions are rejected") {
  expect_code(gts::errc::malformed_partition, [] {
    IndexTMesh::build(2, 2, 1, 1, {{0, 2, 0, 2}, {0, 1, 0, 1}});  // overlap
  });
  expect_code(gts::errc::malformed_partition, [] {
    IndexTMesh::build(2, 2, 1, 1, {{0, 1, 0, 2}, {1, 2, 0, 1}});  // gap
  });
  expect_code(gts::errc::malformed_partition, [] {
    IndexTMesh::build(2, 2, 1, 1, {{-1, 1, 0, 2}, {1, 2, 0, 2}});  // out of domain
  });
  expect_code(gts::errc::malformed_partition, [] {
    IndexTMesh::build(2, 2, 1, 1, {{0, 0, 0, 2}, {0, 2, 0, 2}});  // empty interior
  });
  expect_code(gts::errc::invalid_argument, [] { IndexTMesh::build(1, 2, 1, 1, {}); });
  expect_code(gts::errc::invalid_argument, [] { IndexTMesh::build(2, 2, 0, 1, {}); });
}

TEST_CASE("segment meshes reject non-rectangular regions and dangling tips") {
  // An L-shaped wall: the region northwest of it is not a rectangle.
  expect_code(gts::errc::malformed_partition, [] {
    gts::mesh_from_segments(4, 4, 4, 4, {{2, -1, 2}}, {{2, 2, 6}});
  });
  // A free-standing vertical segment strictly inside a cell: both regions
  // beside it flood together, so the material would silently vanish.
  expect_code(gts::errc::malformed_partition, [] {
    gts::mesh_from_segments(4, 4, 4, 4, {{2, 1, 3}}, {});
  });
  expect_code(gts::errc::invalid_argument, [] {
    gts::mesh_from_segments(4, 4, 4, 4, {{7, -1, 5}}, {});  // off the domain
  });
  expect_code(gts::errc::invalid_argument, [] {
    gts::mesh_from_segments(4, 4, 4, 4, {{2, 3, 1}}, {});  // inverted span
  });
}

TEST_CASE("knot lines index their values") {
  KnotLine line = gts::uniform_knot_line(-1, 6);
  CHECK(line.min_index() == -1);
  CHECK(line.max_index() == 6);
  CHECK(line.size() == 8);
  CHECK(line.value_at(-1) == -1.0);
  CHECK(line.value_at(6) == 6.0);
  CHECK(line.window({0, 2, 5}) == std::vector<double>{0.0, 2.0, 5.0});
  expect_code(gts::errc::index_out_of_range, [&] { line.value_at(7); });
  expect_code(gts::errc::invalid_argument, [] { KnotLine({1.0, 0.0}, 0); });
  expect_code(gts::errc::invalid_argument, [] { KnotLine({}, 0); });
}

TEST_CASE("bar index vector closes gaps and trims spurious multiplicities") {
  // Order-4 line over indices -1..12 with a triple value at 1/8 and
  // quadruple end values.
  KnotLine line({0, 0, 0, 0, 0.125, 0.125, 0.125, 0.25, 0.5, 0.75, 1, 1, 1, 1}, -1);
  CHECK(gts::bar_index_vector({3, 5, 7, 8, 9}, line) == std::vector<int>{4, 5, 6, 7, 8, 9});

  // Already consecutive: unchanged.
  CHECK(gts::bar_index_vector({2, 3, 4, 5}, line) == std::vector<int>{2, 3, 4, 5});

  // Simple knots: plain gap fill, no trimming.
  KnotLine simple = gts::uniform_knot_line(-1, 6);
  CHECK(gts::bar_index_vector({1, 2, 4, 5, 6}, simple) == consecutive(1, 6));

  // Trailing multiplicity picked up by the fill gets trimmed from the back.
  KnotLine tail({0, 0, 0, 1, 2, 3, 3, 3}, 0);
  CHECK(gts::bar_index_vector({2, 3, 4, 7}, tail) == std::vector<int>{2, 3, 4, 5});

  expect_code(gts::errc::invalid_argument, [&] { gts::bar_index_vector({}, line); });
  expect_code(gts::errc::invalid_argument, [&] { gts::bar_index_vector({3, 2}, line); });
}

TEST_CASE("mesh space validates knot lines and cores") {
  IndexTMesh m = gts::tp_mesh(4, 4, 4, 4);
  auto knots = [](std::initializer_list<double> v) { return std::vector<double>(v); };
  std::vector<double> uniform;
  for (int i = -1; i <= 6; ++i) uniform.push_back(i);
  std::vector<gts::SectionCore> poly(7, gts::polynomial_core());

  expect_code(gts::errc::dimension_mismatch, [&] {
    TMeshSpace::build(m, knots({0, 1, 2}), uniform, poly, poly);
  });
  expect_code(gts::errc::dimension_mismatch, [&] {
    TMeshSpace::build(m, uniform, uniform, poly, std::vector<gts::SectionCore>(6, gts::polynomial_core()));
  });
  expect_code(gts::errc::invalid_argument, [&] {
    TMeshSpace::build(m, knots({0, 1, 2, 3, 2.5, 4, 5, 6}), uniform, poly, poly);
  });
  expect_code(gts::errc::multiplicity_too_high, [&] {
    TMeshSpace::build(m, knots({0, 0, 0, 0, 0, 1, 2, 3}), uniform, poly, poly);
  });
  // A trigonometric core must stay admissible on each positive interval.
  expect_code(gts::errc::chebyshev_violation, [&] {
    TMeshSpace::build(m, knots({0, 0, 0, 0, 4, 8, 12, 16}), uniform,
                      std::vector<gts::SectionCore>(7, gts::trig_core(1.0)), poly);
  });

  TMeshSpace space = TMeshSpace::build(m, uniform, uniform, poly, poly);
  CHECK(space.line_s().value_at(-1) == -1.0);
  CHECK(space.core_s(-1).kind == gts::CoreKind::polynomial);
  expect_code(gts::errc::index_out_of_range, [&] { space.core_s(6); });
}

TEST_CASE("local bases sit on the anchor windows") {
  IndexTMesh m = gts::tp_mesh(4, 4, 4, 4);
  std::vector<double> uniform;
  for (int i = -1; i <= 6; ++i) uniform.push_back(i);
  std::vector<gts::SectionCore> poly(7, gts::polynomial_core());
  TMeshSpace space = TMeshSpace::build(m, uniform, uniform, poly, poly);

  const Anchor& a = anchor_at(m, 2, 3);
  gts::GBBasis bs = space.local_basis_s(a);
  REQUIRE(bs.size() == 1);
  CHECK(bs.knots().values() == std::vector<double>{0, 1, 2, 3, 4});
  CHECK(bs.evaluate(0, 2.0) > 0.3);
  CHECK(bs.evaluate(0, 0.0) == 0.0);
  CHECK(bs.evaluate(0, 4.0) == 0.0);
  gts::GBBasis bt = space.local_basis_t(a);
  CHECK(bt.knots().values() == std::vector<double>{1, 2, 3, 4, 5});

  // A trigonometric interval only affects anchors whose window covers it.
  std::vector<gts::SectionCore> mixed = poly;
  mixed[0] = gts::trig_core(1.0);  // interval [-1, 0]
  TMeshSpace trig_space = TMeshSpace::build(m, uniform, uniform, mixed, poly);
  const Anchor& inner = anchor_at(m, 2, 1);  // s-window {0..4}
  CHECK(trig_space.local_basis_s(inner).evaluate(0, 1.7) ==
        space.local_basis_s(inner).evaluate(0, 1.7));
  const Anchor& edge = anchor_at(m, 1, 1);  // s-window {-1..3}
  double d = trig_space.local_basis_s(edge).evaluate(0, 0.5) -
             space.local_basis_s(edge).evaluate(0, 0.5);
  CHECK(std::abs(d) > 1e-12);
}

TEST_CASE("underlying tensor-product mesh keeps orders and extents") {
  IndexTMesh m = notched_mesh();
  IndexTMesh tp = m.underlying_tp();
  CHECK(tp.p() == 4);
  CHECK(tp.nu() == 3);
  CHECK(tp.cells().size() == 42);  // 7 x 6 unit cells
  CHECK(tp.classification() == MeshClass::admissible_plus);
  CHECK(tp.anchors().size() == 12);  // mu * nu vertices
  CHECK(tp.underlying_tp() == tp);
  CHECK_FALSE(tp == m);
}
