#include "gts/surface.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "gts/errors.hpp"

namespace gts {

double blend(const TMeshSpace& space, const Anchor& a, double s, double t) {
  return space.local_basis_s(a).evaluate(0, s) * space.local_basis_t(a).evaluate(0, t);
}

Eigen::Vector3d eval_curve(const GBBasis& basis, const std::vector<Eigen::Vector3d>& points,
                           double s) {
  if (static_cast<int>(points.size()) != basis.size())
    fail(errc::dimension_mismatch, "control point count does not match the basis size");
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int i = 0; i < basis.size(); ++i) out += basis.evaluate(i, s) * points[static_cast<size_t>(i)];
  return out;
}

GTSurface::GTSurface(TMeshSpace space, ControlNet net)
    : space_(std::move(space)), net_(std::move(net)) {
  const auto& anchors = space_.mesh().anchors();
  if (net_.points.size() != anchors.size() || net_.weights.size() != anchors.size())
    fail(errc::dimension_mismatch, "control net does not match the anchor count");
  for (double w : net_.weights)
    if (!(w > 0.0)) fail(errc::invalid_argument, "control net weights must be positive");
  basis_s_.reserve(anchors.size());
  basis_t_.reserve(anchors.size());
  for (const Anchor& a : anchors) {
    basis_s_.push_back(space_.local_basis_s(a));
    basis_t_.push_back(space_.local_basis_t(a));
  }
}

double GTSurface::s_lo() const { return space_.line_s().value_at(1); }
double GTSurface::s_hi() const { return space_.line_s().value_at(space_.mesh().mu()); }
double GTSurface::t_lo() const { return space_.line_t().value_at(1); }
double GTSurface::t_hi() const { return space_.line_t().value_at(space_.mesh().nu()); }

Eigen::Vector3d GTSurface::evaluate(double s, double t) const {
  Eigen::Vector3d num = Eigen::Vector3d::Zero();
  double den = 0.0;
  for (size_t i = 0; i < net_.points.size(); ++i) {
    const double b = basis_s_[i].evaluate(0, s) * basis_t_[i].evaluate(0, t);
    if (b == 0.0) continue;
    const double wb = net_.weights[i] * b;
    num += wb * net_.points[i];
    den += wb;
  }
  if (den <= 0.0)
    fail(errc::zero_denominator, "no blending function covers the evaluation point");
  return num / den;
}

TMeshSpace parametric_space(IndexTMesh mesh, double s_lo, double s_hi, double t_lo, double t_hi,
                            SectionCore core_s, SectionCore core_t) {
  if (!(s_lo < s_hi) || !(t_lo < t_hi))
    fail(errc::invalid_argument, "parametric rectangle must have positive extent");
  const double ds = (s_hi - s_lo) / (mesh.mu() - 1);
  const double dt = (t_hi - t_lo) / (mesh.nu() - 1);
  std::vector<double> ks, kt;
  for (int i = mesh.xmin(); i <= mesh.xmax(); ++i) ks.push_back(s_lo + ds * (i - 1));
  for (int j = mesh.ymin(); j <= mesh.ymax(); ++j) kt.push_back(t_lo + dt * (j - 1));
  const size_t ni = ks.size() - 1, nj = kt.size() - 1;
  return TMeshSpace::build(std::move(mesh), std::move(ks), std::move(kt),
                           std::vector<SectionCore>(ni, core_s),
                           std::vector<SectionCore>(nj, core_t));
}

ParametricDomain domain_of(const ReferenceShape& shape) {
  if (const auto* h = std::get_if<HelicoidSection>(&shape))
    return {h->r1, h->r2, 0.0, h->h};
  const auto& sp = std::get<Spring>(shape);
  return {0.0, 2.0 * M_PI, 0.0, sp.h};
}

Eigen::Vector3d reference_point(const ReferenceShape& shape, double s, double t) {
  if (const auto* h = std::get_if<HelicoidSection>(&shape))
    return {s * std::cos(h->omega * t), s * std::sin(h->omega * t), t};
  const auto& sp = std::get<Spring>(shape);
  const double rad = sp.R + sp.r * std::cos(sp.omega_s * s);
  return {rad * std::cos(sp.omega_t * t), rad * std::sin(sp.omega_t * t),
          sp.r * std::sin(sp.omega_s * s) + t};
}

TMeshSpace reproduction_space(const ReferenceShape& shape, CoreKind kind) {
  const ParametricDomain dom = domain_of(shape);
  double ws, wt;
  if (const auto* h = std::get_if<HelicoidSection>(&shape)) {
    ws = h->omega;
    wt = h->omega;
  } else {
    const auto& sp = std::get<Spring>(shape);
    ws = sp.omega_s;
    wt = sp.omega_t;
  }
  auto spans_for = [](double omega, double length) {
    return std::max(1, static_cast<int>(std::ceil(omega * length / 2.8)));
  };
  const int ss = spans_for(ws, dom.s_hi - dom.s_lo);
  const int st = spans_for(wt, dom.t_hi - dom.t_lo);
  const double ds = (dom.s_hi - dom.s_lo) / ss;
  const double dt = (dom.t_hi - dom.t_lo) / st;
  auto core_for = [kind](double omega) {
    switch (kind) {
      case CoreKind::trigonometric:
        return trig_core(omega);
      case CoreKind::hyperbolic:
        return hyperbolic_core(omega);
      default:
        return polynomial_core();
    }
  };
  return parametric_space(tp_mesh(4, 4, ss + 3, st + 3), dom.s_lo - ds, dom.s_hi + ds,
                          dom.t_lo - dt, dom.t_hi + dt, core_for(ws), core_for(wt));
}

Reproduction reproduce_reference(const ReferenceShape& shape, const TMeshSpace& space,
                                 int fit_samples, int check_samples) {
  if (fit_samples < 2 || check_samples < 2)
    fail(errc::invalid_argument, "sample grids need at least two points per direction");
  const auto& anchors = space.mesh().anchors();
  const Eigen::Index n = static_cast<Eigen::Index>(anchors.size());
  const ParametricDomain dom = domain_of(shape);

  std::vector<GBBasis> bs, bt;
  bs.reserve(anchors.size());
  bt.reserve(anchors.size());
  for (const Anchor& a : anchors) {
    bs.push_back(space.local_basis_s(a));
    bt.push_back(space.local_basis_t(a));
  }

  const Eigen::Index rows = static_cast<Eigen::Index>(fit_samples) * fit_samples;
  Eigen::MatrixXd a_mat(rows, n);
  Eigen::MatrixXd f(rows, 3);
  for (int is = 0; is < fit_samples; ++is) {
    const double s = dom.s_lo + (dom.s_hi - dom.s_lo) * is / (fit_samples - 1);
    for (int it = 0; it < fit_samples; ++it) {
      const double t = dom.t_lo + (dom.t_hi - dom.t_lo) * it / (fit_samples - 1);
      const Eigen::Index row = static_cast<Eigen::Index>(is) * fit_samples + it;
      for (Eigen::Index j = 0; j < n; ++j)
        a_mat(row, j) = bs[static_cast<size_t>(j)].evaluate(0, s) *
                        bt[static_cast<size_t>(j)].evaluate(0, t);
      f.row(row) = reference_point(shape, s, t).transpose();
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a_mat);
  if (qr.rank() < n)
    fail(errc::singular_fit, "sample grid under-determines the control net");
  Eigen::MatrixXd x = qr.solve(f);

  ControlNet net;
  net.points.reserve(anchors.size());
  net.weights.assign(anchors.size(), 1.0);
  for (Eigen::Index j = 0; j < n; ++j) net.points.push_back(x.row(j).transpose());
  GTSurface surface(space, std::move(net));

  double worst = 0.0;
  for (int is = 0; is < check_samples; ++is) {
    const double s = dom.s_lo + (dom.s_hi - dom.s_lo) * is / (check_samples - 1);
    for (int it = 0; it < check_samples; ++it) {
      const double t = dom.t_lo + (dom.t_hi - dom.t_lo) * it / (check_samples - 1);
      const Eigen::Vector3d err = surface.evaluate(s, t) - reference_point(shape, s, t);
      worst = std::max(worst, err.cwiseAbs().maxCoeff());
    }
  }
  return {std::move(surface), worst};
}

namespace {

template <typename Emit>
void sample_grid(const GTSurface& surface, int resolution, Emit&& emit) {
  if (resolution < 2) fail(errc::invalid_argument, "grid resolution must be at least 2");
  for (int is = 0; is < resolution; ++is) {
    const double s = surface.s_lo() + (surface.s_hi() - surface.s_lo()) * is / (resolution - 1);
    for (int it = 0; it < resolution; ++it) {
      const double t = surface.t_lo() + (surface.t_hi() - surface.t_lo()) * it / (resolution - 1);
      emit(s, t, surface.evaluate(s, t));
    }
  }
}

}  // namespace

std::string surface_to_csv(const GTSurface& surface, int resolution) {
  std::ostringstream os;
  os << std::setprecision(17) << "s,t,x,y,z\n";
  sample_grid(surface, resolution, [&](double s, double t, const Eigen::Vector3d& p) {
    os << s << ',' << t << ',' << p.x() << ',' << p.y() << ',' << p.z() << '\n';
  });
  return os.str();
}

std::string surface_to_obj(const GTSurface& surface, int resolution) {
  std::ostringstream os;
  os << std::setprecision(17);
  sample_grid(surface, resolution, [&](double, double, const Eigen::Vector3d& p) {
    os << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  });
  for (int is = 0; is + 1 < resolution; ++is) {
    for (int it = 0; it + 1 < resolution; ++it) {
      const int a = is * resolution + it + 1;  // OBJ indices are 1-based
      const int b = a + resolution;
      os << "f " << a << ' ' << b << ' ' << a + 1 << '\n';
      os << "f " << a + 1 << ' ' << b << ' ' << b + 1 << '\n';
    }
  }
  return os.str();
}

}  // namespace gts
