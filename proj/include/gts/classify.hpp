#pragma once

#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "gts/tmesh.hpp"

namespace gts {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Anchor-support pattern: one row per anchor A of the mesh, one column per
/// anchor Â of its underlying tensor-product mesh. An entry is true exactly
/// when Â's local windows sit inside the closed (bar) windows of A — the
/// combinatorial picture of where A's refinement coefficients can be
/// nonzero.
struct SparsityMatrix {
  BoolMatrix entries;
  std::vector<Anchor> rows;  // anchors of the mesh
  std::vector<Anchor> cols;  // anchors of the underlying tensor-product mesh
};

/// Bar windows are taken against the given knot lines; the overload without
/// lines uses simple uniform knots (value = index), where the closure is a
/// plain gap fill.
SparsityMatrix sparsity_matrix(const IndexTMesh& mesh, const KnotLine& line_s,
                               const KnotLine& line_t);
SparsityMatrix sparsity_matrix(const IndexTMesh& mesh);

/// Fixed point of the column reduction with the original indices of the
/// surviving rows/columns. The reduction is void when no entries remain.
struct Reduction {
  BoolMatrix matrix;
  std::vector<int> surviving_rows;
  std::vector<int> surviving_cols;
  int passes = 0;

  bool is_void() const { return matrix.rows() == 0 || matrix.cols() == 0; }
};

/// Repeatedly removes every innocuous column (a column holding the single
/// true entry of some row) and then every all-zero row, until a pass makes
/// no progress.
Reduction column_reduction(const BoolMatrix& matrix);

/// True when the column reduction of the transposed sparsity pattern is
/// void, which certifies linear independence of the blending functions for
/// both the GB and the polynomial flavor.
bool is_vmcr(const IndexTMesh& mesh, const KnotLine& line_s, const KnotLine& line_t);
bool is_vmcr(const IndexTMesh& mesh);

enum class ShiftDir { left_h, right_h, down_v, up_v };

/// Shifted-anchor predicate: the designated extreme local index differs,
/// and when the knot values at those extremes coincide, their
/// multiplicities within the two local knot windows differ. Symmetric in
/// the two anchors.
bool shifted(const Anchor& a1, const Anchor& a2, ShiftDir dir, const KnotLine& line_s,
             const KnotLine& line_t);
/// Simple-knot variant: distinct indices always carry distinct values, so
/// only the index clause matters.
bool shifted(const Anchor& a1, const Anchor& a2, ShiftDir dir);

enum class WdcType { rd, ru, ld, lu };

const char* wdc_type_name(WdcType type);

/// Weak dual compatibility: a type is present when every pair of distinct
/// anchors is shifted in one of the type's two directions (e.g. RD: right-
/// horizontally or down-vertically).
std::set<WdcType> is_weakly_dc(const IndexTMesh& mesh, const KnotLine& line_s,
                               const KnotLine& line_t);
std::set<WdcType> is_weakly_dc(const IndexTMesh& mesh);

/// Dual compatibility: every pair of anchors overlaps horizontally or
/// vertically (one local window restricted to the other's index range must
/// be a subset, both ways). Defined on admissible-plus meshes only; throws
/// requires_ad_plus on a merely admissible mesh.
bool is_dual_compatible(const IndexTMesh& mesh);

/// Analysis suitability: no horizontal T-junction extension intersects a
/// vertical one (closed segments, face and edge parts both included).
bool is_analysis_suitable(const IndexTMesh& mesh);

/// Classification summary for reports.
struct ClassificationReport {
  bool admissible = false;
  bool ad_plus = false;
  bool analysis_suitable = false;
  bool dual_compatible = false;
  std::set<WdcType> weakly_dc_types;
  bool vmcr = false;
  int anchors_count = 0;
  std::vector<Extension> extensions;
};

/// The line-aware overload feeds the knot values to the VMCR and weak-DC
/// classifiers (knot multiplicities matter there); admissibility, dual
/// compatibility, and analysis suitability are index-level and ignore them.
ClassificationReport classify_mesh(const IndexTMesh& mesh, const KnotLine& line_s,
                                   const KnotLine& line_t);
ClassificationReport classify_mesh(const IndexTMesh& mesh);

/// Bi-order (4,4) refinement sequence: meshes 0..steps, starting from the
/// 4x4 tensor-product mesh. Every step bisects the bottom-right-most 2x2
/// cell block of the active region, first with two horizontal edges and
/// then with two vertical ones, each prolonged through the frame so the
/// mesh stays admissible-plus. Interior knot multiplicities stay 1. Throws
/// step_limit_exceeded past max_steps.
std::vector<IndexTMesh> refine_example4(int steps, int max_steps = 8);

/// Random admissible mesh: random full interior lines plus random partial
/// lines whose ends land on full lines of the other direction; retries
/// until the result classifies as required. Used by the property suites.
IndexTMesh random_admissible_mesh(int p, int q, int mu, int nu, std::mt19937& rng,
                                  bool require_plus = true);

}  // namespace gts
