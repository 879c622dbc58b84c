#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gts/tmesh.hpp"

namespace gts {

/// Which section cores feed a computation: the space's own cores, or the
/// polynomial specialization over the same knot lines.
enum class Flavor { gb, polynomial };

/// Expansion of every blending function of a mesh space over the blending
/// functions of the underlying tensor-product mesh:
///   N_A = sum_B entries(A, B) * N_B.
/// Rows follow the mesh anchors, columns the tensor-product anchors, both in
/// canonical order. All entries are nonnegative; zeros are exact.
struct RefinementMatrix {
  Eigen::MatrixXd entries;
  std::vector<Anchor> rows;
  std::vector<Anchor> cols;
  Flavor flavor = Flavor::gb;
};

/// The same knot lines and mesh with every section core replaced by the
/// polynomial core.
TMeshSpace polynomial_twin(const TMeshSpace& space);

/// Builds the expansion row by row: each anchor's univariate local bases are
/// refined onto their filled index windows by knot insertion, the two
/// coefficient sequences are tensored, and the products land in the columns
/// whose tensor-product anchors own the matching consecutive windows.
/// Throws function_vector_mismatch when a window gap spans intervals whose
/// cores disagree with the gap's left core (the insertion identity would not
/// hold pointwise).
RefinementMatrix build_refinement_matrix(const TMeshSpace& space, Flavor flavor);

/// Numeric rank test: true iff the count of singular values above
/// rel_tol * sigma_max equals the row count.
bool is_full_rank(const RefinementMatrix& matrix, double rel_tol = 1e-8);

/// Blending-function closures (products of the two univariate local bases),
/// one per anchor in canonical order.
std::vector<std::function<double(double, double)>> blend_functions(const TMeshSpace& space,
                                                                   Flavor flavor);

/// Numeric rank of a function family sampled on a uniform inclusive grid
/// over a parametric rectangle.
int sampled_rank(const std::vector<std::function<double(double, double)>>& funcs, double s_lo,
                 double s_hi, double t_lo, double t_hi, int samples_s, int samples_t,
                 double rel_tol = 1e-8);

/// Sampling-based linear-independence check, independent of the refinement
/// machinery: evaluates every blending function on a dense grid over the
/// parametric active region (at least 4(p+q) points per direction) and
/// compares the rank of the function-by-sample matrix with the anchor count.
bool gram_rank_oracle(const TMeshSpace& space, Flavor flavor, double rel_tol = 1e-8);

/// CSV dump: header row of column anchor labels, one data row per mesh
/// anchor prefixed with its label.
std::string to_csv(const RefinementMatrix& matrix);

/// Text grid of 0/1 per entry (one line per row) under an absolute zero
/// threshold.
std::string to_pattern(const RefinementMatrix& matrix, double zero_tol = 1e-12);

}  // namespace gts
