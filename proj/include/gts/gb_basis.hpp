#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gts/generators.hpp"

namespace gts {

/// Nondecreasing knot sequence s_0 <= ... <= s_{n+p-1} together with the
/// spline order p (polynomial flavor of order p has degree p-1). A vector of
/// n+p knots carries n basis functions; every knot value may appear at most
/// p times.
class KnotVector {
 public:
  KnotVector(std::vector<double> knots, int order);

  int order() const { return order_; }
  int size() const { return static_cast<int>(knots_.size()); }
  int num_funcs() const { return size() - order_; }
  int num_spans() const { return size() - 1; }
  double operator[](int i) const { return knots_[static_cast<size_t>(i)]; }
  const std::vector<double>& values() const { return knots_; }
  double domain_min() const { return knots_.front(); }
  double domain_max() const { return knots_.back(); }

  /// Number of knots equal in value to knots_[i].
  int multiplicity(int i) const;

  /// Span index j with knots_[j] <= s < knots_[j+1]; evaluation is
  /// right-continuous at interior knots. s equal to the last knot maps to
  /// the last span of positive length (left continuity at the end).
  /// Returns -1 outside [front, back].
  int find_span(double s) const;

 private:
  std::vector<double> knots_;
  int order_;
};

/// One polynomial-plus-core piece of a basis function on one knot span.
/// At order p the antiderivative level is k = p-2 and the piece value at
/// local coordinate x = s - knots[span] is
///   a * AntiD^k[U_span](x) + b * AntiD^k[V_span](x) + sum_j poly[j] x^j.
struct Piece {
  int span = 0;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> poly;
};

/// 1 / integral of a basis function, or the zero-spline marker; the order
/// raising recursion treats the integral of (delta * zero spline) as a unit
/// step at the right end of the would-be support.
struct DeltaValue {
  double value = 0.0;
  bool zero_spline = false;
};

/// Two-term expansion coefficients of one knot insertion:
/// N_j = alpha[j] Nbar_j + beta_next[j] Nbar_{j+1}.
struct Insertion {
  std::vector<double> alpha;      // alpha[j], j over original functions
  std::vector<double> beta_next;  // beta_next[j] multiplies Nbar_{j+1}
  int position = 0;               // 0-based span index of the inserted knot
};

/// GB-spline basis over mixed section cores, one core per span.
class GBBasis {
 public:
  /// cores.size() must equal kv.num_spans(); cores on zero-length spans are
  /// carried but never evaluated. Throws chebyshev_violation if a core is
  /// invalid on its (positive-length) span, multiplicity_too_high if a knot
  /// value repeats more than p times.
  static GBBasis build(KnotVector kv, std::vector<SectionCore> cores);

  int order() const { return kv_.order(); }
  int size() const { return kv_.num_funcs(); }
  const KnotVector& knots() const { return kv_; }
  const std::vector<SectionCore>& cores() const { return cores_; }

  /// Value of N_i at s; zero outside the support. Right-continuous at
  /// interior knots, left-continuous at the final knot.
  double evaluate(int i, double s) const;

  /// One-sided derivative of order r (0 <= r <= p-1) taken from the right
  /// (from_left = false) or the left. Exact piecewise-analytic derivative,
  /// used by smoothness tests.
  double derivative(int i, double s, int r, bool from_left) const;

  /// Reciprocal integral of N_i at the given order (2 <= ord <= p).
  DeltaValue delta(int i, int ord) const;

  bool is_zero_spline(int i) const { return deltas_.back()[static_cast<size_t>(i)].zero_spline; }

  const std::vector<Piece>& pieces(int i) const { return funcs_[static_cast<size_t>(i)]; }

 private:
  GBBasis(KnotVector kv, std::vector<SectionCore> cores);
  double piece_value(const Piece& piece, int level, double x) const;
  std::vector<DeltaValue> compute_deltas(const std::vector<std::vector<Piece>>& funcs,
                                         int level) const;

  KnotVector kv_;
  std::vector<SectionCore> cores_;
  std::vector<std::optional<GeneratorPair>> pairs_;  // nullopt on degenerate spans
  std::vector<std::vector<Piece>> funcs_;            // final order pieces
  std::vector<std::vector<DeltaValue>> deltas_;      // [ord-2][i]
};

/// Single knot insertion. The refined knot vector duplicates the section
/// core of the split span; sbar must satisfy front <= sbar < back and must
/// not push a knot value past multiplicity p.
/// Returns the refined basis and the expansion coefficients.
std::pair<GBBasis, Insertion> insert_knot(const GBBasis& basis, double sbar);

/// Repeated insertion of the sorted target values (duplicates allowed up to
/// the multiplicity bound). Returns the refined basis and the full expansion
/// matrix: row j holds the coefficients of original N_j over the refined
/// functions. All entries are nonnegative; zeros are exact.
struct RefineResult {
  RefineResult(GBBasis b, Eigen::MatrixXd c) : refined(std::move(b)), coeffs(std::move(c)) {}
  GBBasis refined;
  Eigen::MatrixXd coeffs;
};
RefineResult refine_to(const GBBasis& basis, std::vector<double> targets);

}  // namespace gts
