#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gts/gb_basis.hpp"
#include "gts/tmesh.hpp"

namespace gts {

/// One control point and positive weight per anchor, in canonical anchor
/// order.
struct ControlNet {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
};

/// Product of the two univariate blending functions of an anchor.
double blend(const TMeshSpace& space, const Anchor& a, double s, double t);

/// Point on a GB-spline curve: sum of control points weighted by the basis.
Eigen::Vector3d eval_curve(const GBBasis& basis, const std::vector<Eigen::Vector3d>& points,
                           double s);

/// Rational GT-spline surface over the parametric active region.
class GTSurface {
 public:
  /// Validates one point and one strictly positive weight per anchor.
  GTSurface(TMeshSpace space, ControlNet net);

  const TMeshSpace& space() const { return space_; }
  const ControlNet& net() const { return net_; }

  double s_lo() const;
  double s_hi() const;
  double t_lo() const;
  double t_hi() const;

  /// Weighted rational combination of the control points. Throws
  /// zero_denominator where no blending function is active.
  Eigen::Vector3d evaluate(double s, double t) const;

 private:
  TMeshSpace space_;
  ControlNet net_;
  std::vector<GBBasis> basis_s_, basis_t_;
};

/// Uniform knot lines mapping the index active region onto the given
/// parametric rectangle (index 1 at the low edge, index mu/nu at the high
/// edge), extended linearly beyond it.
TMeshSpace parametric_space(IndexTMesh mesh, double s_lo, double s_hi, double t_lo, double t_hi,
                            SectionCore core_s, SectionCore core_t);

/// Ruled screw surface: (s cos wt, s sin wt, t) on [r1, r2] x [0, h].
struct HelicoidSection {
  double r1, r2, h, omega;
};

/// Coil around a circle: ((R + r cos ws s) cos wt t, (R + r cos ws s) sin wt t,
/// r sin ws s + t) on [0, 2pi] x [0, h].
struct Spring {
  double R, r, h, omega_s, omega_t;
};

using ReferenceShape = std::variant<HelicoidSection, Spring>;

struct ParametricDomain {
  double s_lo, s_hi, t_lo, t_hi;
};

ParametricDomain domain_of(const ReferenceShape& shape);
Eigen::Vector3d reference_point(const ReferenceShape& shape, double s, double t);

struct Reproduction {
  GTSurface surface;
  double max_error;
};

/// Bi-order (4,4) tensor-product space sized for the shape: span lengths
/// keep omega * span comfortably below pi, and the active region extends one
/// span beyond the shape domain per side so the domain sits where the
/// blending functions sum to one and span the full section spaces.
TMeshSpace reproduction_space(const ReferenceShape& shape, CoreKind kind);

/// Least-squares fit of the reference shape by the blending functions of the
/// space (unit weights), validated on a denser grid; returns the fitted
/// surface and its max coordinate error. Throws singular_fit when the fit
/// grid under-determines the control net.
Reproduction reproduce_reference(const ReferenceShape& shape, const TMeshSpace& space,
                                 int fit_samples = 40, int check_samples = 101);

/// Sampled geometry over the active region: CSV rows "s,t,x,y,z" with a
/// header, or an OBJ triangulation of the sample grid.
std::string surface_to_csv(const GTSurface& surface, int resolution);
std::string surface_to_obj(const GTSurface& surface, int resolution);

}  // namespace gts
