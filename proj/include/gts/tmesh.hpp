#pragma once

#include <cstdint>
#include <vector>

#include "gts/gb_basis.hpp"
#include "gts/generators.hpp"

namespace gts {

/// Closed integer rectangle [x1,x2] x [y1,y2] with positive area.
struct Cell {
  int x1 = 0;
  int x2 = 0;
  int y1 = 0;
  int y2 = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class MeshClass { not_admissible, admissible, admissible_plus };

enum class AnchorKind { vertex, h_edge, v_edge, cell };

/// Anchor with its reference location and the index vectors along the two
/// parametric directions. For a vertex x1==x2 and y1==y2; for a horizontal
/// edge y1==y2; for a vertical edge x1==x2; a cell keeps both extents.
struct Anchor {
  AnchorKind kind = AnchorKind::vertex;
  int x1 = 0;
  int x2 = 0;
  int y1 = 0;
  int y2 = 0;
  std::vector<int> global_s;  // full horizontal intersection list of the s-ray
  std::vector<int> global_t;  // full vertical intersection list of the t-ray
  std::vector<int> local_s;   // p+1 window around the anchor
  std::vector<int> local_t;   // q+1 window around the anchor
};

/// Direction of the missing edge at a valence-3 vertex.
enum class JunctionDir { left, right, up, down };

struct TJunction {
  int x = 0;
  int y = 0;
  JunctionDir missing = JunctionDir::left;
};

/// Face/edge extension of a T-junction along the line of its interrupted
/// edge. `horizontal` extensions belong to junctions with a missing left or
/// right edge and run along the horizontal line {line}; vertical ones run
/// along the vertical line {line}. Segments are closed index intervals.
struct Extension {
  TJunction owner;
  bool horizontal = false;
  int line = 0;
  int face_lo = 0;
  int face_hi = 0;
  int edge_lo = 0;
  int edge_hi = 0;

  int lo() const { return face_lo < edge_lo ? face_lo : edge_lo; }
  int hi() const { return face_hi > edge_hi ? face_hi : edge_hi; }
};

/// Index T-mesh: a rectangular partition of the index domain
/// [-floor(p/2)+1, mu+floor(p/2)] x [-floor(q/2)+1, nu+floor(q/2)]
/// into integer cells. Immutable after construction; build() validates the
/// partition and classifies admissibility.
class IndexTMesh {
 public:
  /// Throws malformed_partition on overlapping cells, gaps, or cells
  /// outside the index domain; invalid_argument on bad orders/extents.
  static IndexTMesh build(int p, int q, int mu, int nu, std::vector<Cell> cells);

  int p() const { return p_; }
  int q() const { return q_; }
  int mu() const { return mu_; }
  int nu() const { return nu_; }
  int xmin() const { return xmin_; }
  int xmax() const { return xmax_; }
  int ymin() const { return ymin_; }
  int ymax() const { return ymax_; }

  /// Cells in normalized (lexicographic) order.
  const std::vector<Cell>& cells() const { return cells_; }

  MeshClass classification() const { return class_; }
  bool admissible() const { return class_ != MeshClass::not_admissible; }

  bool is_vertex(int x, int y) const;

  /// Skeleton material on the unit segment {x} x [ylo, ylo+1] (false
  /// outside the domain).
  bool v_unit(int x, int ylo) const;
  /// Skeleton material on the unit segment [xlo, xlo+1] x {y}.
  bool h_unit(int xlo, int y) const;

  /// Valence of a vertex: number of the four axis directions carrying
  /// skeleton material.
  int valence(int x, int y) const;

  /// Sorted x-indices where the skeleton has vertical material crossing or
  /// touching height y (y may be half-integral for edge/cell midlines).
  std::vector<int> h_intersections(double y) const;
  /// Sorted y-indices where horizontal material crosses the vertical line x.
  std::vector<int> v_intersections(double x) const;

  /// Anchors of the bi-order (p,q) taxonomy, with index vectors built, in
  /// canonical order (lexicographic by max local_t, max local_s, location).
  /// Requires an admissible mesh; throws not_admissible otherwise.
  const std::vector<Anchor>& anchors() const;

  /// Valence-3 vertices (all strictly inside the open active region on
  /// admissible meshes).
  std::vector<TJunction> t_junctions() const;

  /// Extensions of all T-junctions. Requires an admissible mesh.
  std::vector<Extension> extensions() const;

  /// Full unit grid over the same index domain, same bi-order and extents.
  IndexTMesh underlying_tp() const;

  friend bool operator==(const IndexTMesh& a, const IndexTMesh& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.mu_ == b.mu_ && a.nu_ == b.nu_ &&
           a.cells_ == b.cells_;
  }

 private:
  IndexTMesh() = default;
  void classify();
  void build_anchors();
  Anchor make_anchor(AnchorKind kind, int x1, int x2, int y1, int y2) const;

  int p_ = 0, q_ = 0, mu_ = 0, nu_ = 0;
  int xmin_ = 0, xmax_ = 0, ymin_ = 0, ymax_ = 0;
  std::vector<Cell> cells_;
  std::vector<uint8_t> vmat_;  // [(xmax-xmin+1) x (ymax-ymin)] vertical units
  std::vector<uint8_t> hmat_;  // [(xmax-xmin) x (ymax-ymin+1)] horizontal units
  std::vector<int64_t> vertex_keys_;  // sorted encoded corners
  MeshClass class_ = MeshClass::not_admissible;
  std::vector<Anchor> anchors_;
};

/// Integer skeleton segment on the line {at}: vertical segments span
/// y in [lo, hi] at x = at, horizontal ones span x in [lo, hi] at y = at.
struct LineSegment {
  int at = 0;
  int lo = 0;
  int hi = 0;
};

/// Build a mesh from skeleton segments. The full frame lines required by
/// admissibility are always included; the caller supplies the rest. Cells
/// are recovered by flood fill; throws malformed_partition when the
/// segments fail to cut the index domain into rectangles.
IndexTMesh mesh_from_segments(int p, int q, int mu, int nu,
                              const std::vector<LineSegment>& vertical,
                              const std::vector<LineSegment>& horizontal);

/// Full tensor-product mesh of unit cells.
IndexTMesh tp_mesh(int p, int q, int mu, int nu);

/// One parametric direction of a T-mesh: knot value per integer index of
/// [min_index, min_index + size - 1]. Values are nondecreasing;
/// multiplicities are expressed by repetition.
class KnotLine {
 public:
  KnotLine(std::vector<double> values, int min_index);

  int min_index() const { return min_index_; }
  int max_index() const { return min_index_ + static_cast<int>(values_.size()) - 1; }
  int size() const { return static_cast<int>(values_.size()); }
  double value_at(int index) const;
  const std::vector<double>& values() const { return values_; }

  /// Knot values over an index window (the Sigma(I) notation).
  std::vector<double> window(const std::vector<int>& indices) const;

 private:
  std::vector<double> values_;
  int min_index_ = 0;
};

/// KnotLine with every value equal to its index (simple knots); the default
/// when classifying a bare index mesh.
KnotLine uniform_knot_line(int min_index, int max_index);

/// Closure of a local index vector: fill every integer gap between min and
/// max, then trim from both ends while the leading/trailing equal-value run
/// of the filled knot window exceeds that of the original window.
std::vector<int> bar_index_vector(const std::vector<int>& local, const KnotLine& line);

/// Index T-mesh together with its parametric data: global knot lines and
/// one section core per unit index interval.
class TMeshSpace {
 public:
  /// knots_s must hold mu + 2*floor(p/2) values (indices xmin..xmax),
  /// cores_s one entry per interval, and analogously for t. Validates
  /// monotonicity, multiplicity bound, and core admissibility per interval.
  static TMeshSpace build(IndexTMesh mesh, std::vector<double> knots_s,
                          std::vector<double> knots_t, std::vector<SectionCore> cores_s,
                          std::vector<SectionCore> cores_t);

  const IndexTMesh& mesh() const { return mesh_; }
  const KnotLine& line_s() const { return s_; }
  const KnotLine& line_t() const { return t_; }
  const std::vector<SectionCore>& cores_s() const { return cores_s_; }
  const std::vector<SectionCore>& cores_t() const { return cores_t_; }

  /// Section core governing the unit interval [i, i+1] of a direction.
  const SectionCore& core_s(int interval_start) const;
  const SectionCore& core_t(int interval_start) const;

  /// Univariate GB basis on the anchor's local knot window; each local span
  /// [i_j, i_{j+1}] carries the core of the global interval starting at i_j.
  GBBasis local_basis_s(const Anchor& a) const;
  GBBasis local_basis_t(const Anchor& a) const;

 private:
  TMeshSpace(IndexTMesh mesh, KnotLine s, KnotLine t, std::vector<SectionCore> cs,
             std::vector<SectionCore> ct);
  GBBasis local_basis(const std::vector<int>& local, const KnotLine& line,
                      const std::vector<SectionCore>& cores, int order) const;

  IndexTMesh mesh_;
  KnotLine s_;
  KnotLine t_;
  std::vector<SectionCore> cores_s_;
  std::vector<SectionCore> cores_t_;
};

}  // namespace gts
