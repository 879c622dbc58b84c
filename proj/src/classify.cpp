#include "gts/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gts/errors.hpp"

namespace gts {

namespace {

// One-way half of the overlap test: every index of a falling inside b's
// range must belong to b.
bool covers_range(const std::vector<int>& a, const std::vector<int>& b) {
  for (int k : a)
    if (k >= b.front() && k <= b.back() && !std::binary_search(b.begin(), b.end(), k))
      return false;
  return true;
}

bool windows_overlap(const std::vector<int>& w1, const std::vector<int>& w2) {
  return covers_range(w1, w2) && covers_range(w2, w1);
}

int window_multiplicity(const KnotLine& line, const std::vector<int>& window, double value) {
  int count = 0;
  for (int i : window)
    if (line.value_at(i) == value) ++count;
  return count;
}

// Shifted test along one axis; line == nullptr means simple knots, where
// distinct indices always carry distinct values.
bool shifted_axis(const std::vector<int>& w1, const std::vector<int>& w2, bool at_max,
                  const KnotLine* line) {
  const int e1 = at_max ? w1.back() : w1.front();
  const int e2 = at_max ? w2.back() : w2.front();
  if (e1 == e2) return false;
  if (line == nullptr) return true;
  const double v1 = line->value_at(e1);
  const double v2 = line->value_at(e2);
  if (v1 != v2) return true;
  return window_multiplicity(*line, w1, v1) != window_multiplicity(*line, w2, v2);
}

bool shifted_impl(const Anchor& a1, const Anchor& a2, ShiftDir dir, const KnotLine* ls,
                  const KnotLine* lt) {
  switch (dir) {
    case ShiftDir::left_h:
      return shifted_axis(a1.local_s, a2.local_s, false, ls);
    case ShiftDir::right_h:
      return shifted_axis(a1.local_s, a2.local_s, true, ls);
    case ShiftDir::down_v:
      return shifted_axis(a1.local_t, a2.local_t, false, lt);
    case ShiftDir::up_v:
      return shifted_axis(a1.local_t, a2.local_t, true, lt);
  }
  fail(errc::internal, "unknown shift direction");
}

std::set<WdcType> weakly_dc_impl(const IndexTMesh& mesh, const KnotLine* ls,
                                 const KnotLine* lt) {
  const std::vector<Anchor>& anchors = mesh.anchors();
  bool rd = true, ru = true, ld = true, lu = true;
  for (size_t i = 0; i < anchors.size() && (rd || ru || ld || lu); ++i)
    for (size_t j = i + 1; j < anchors.size() && (rd || ru || ld || lu); ++j) {
      const Anchor& a = anchors[i];
      const Anchor& b = anchors[j];
      const bool lh = shifted_axis(a.local_s, b.local_s, false, ls);
      const bool rh = shifted_axis(a.local_s, b.local_s, true, ls);
      const bool dv = shifted_axis(a.local_t, b.local_t, false, lt);
      const bool uv = shifted_axis(a.local_t, b.local_t, true, lt);
      rd = rd && (rh || dv);
      ru = ru && (rh || uv);
      ld = ld && (lh || dv);
      lu = lu && (lh || uv);
    }
  std::set<WdcType> out;
  if (rd) out.insert(WdcType::rd);
  if (ru) out.insert(WdcType::ru);
  if (ld) out.insert(WdcType::ld);
  if (lu) out.insert(WdcType::lu);
  return out;
}

void check_line_extents(const IndexTMesh& mesh, const KnotLine& line_s,
                        const KnotLine& line_t) {
  if (line_s.min_index() != mesh.xmin() || line_s.max_index() != mesh.xmax() ||
      line_t.min_index() != mesh.ymin() || line_t.max_index() != mesh.ymax())
    fail(errc::dimension_mismatch, "knot lines do not span the mesh index domain");
}

}  // namespace

SparsityMatrix sparsity_matrix(const IndexTMesh& mesh, const KnotLine& line_s,
                               const KnotLine& line_t) {
  check_line_extents(mesh, line_s, line_t);
  SparsityMatrix out;
  out.rows = mesh.anchors();
  out.cols = mesh.underlying_tp().anchors();
  const int n = static_cast<int>(out.rows.size());
  const int nh = static_cast<int>(out.cols.size());
  out.entries.resize(n, nh);
  for (int i = 0; i < n; ++i) {
    const std::vector<int> bar_s = bar_index_vector(out.rows[static_cast<size_t>(i)].local_s, line_s);
    const std::vector<int> bar_t = bar_index_vector(out.rows[static_cast<size_t>(i)].local_t, line_t);
    for (int j = 0; j < nh; ++j) {
      const Anchor& col = out.cols[static_cast<size_t>(j)];
      out.entries(i, j) =
          std::includes(bar_s.begin(), bar_s.end(), col.local_s.begin(), col.local_s.end()) &&
          std::includes(bar_t.begin(), bar_t.end(), col.local_t.begin(), col.local_t.end());
    }
  }
  return out;
}

SparsityMatrix sparsity_matrix(const IndexTMesh& mesh) {
  return sparsity_matrix(mesh, uniform_knot_line(mesh.xmin(), mesh.xmax()),
                         uniform_knot_line(mesh.ymin(), mesh.ymax()));
}

Reduction column_reduction(const BoolMatrix& matrix) {
  Reduction r;
  r.matrix = matrix;
  r.surviving_rows.resize(static_cast<size_t>(matrix.rows()));
  r.surviving_cols.resize(static_cast<size_t>(matrix.cols()));
  std::iota(r.surviving_rows.begin(), r.surviving_rows.end(), 0);
  std::iota(r.surviving_cols.begin(), r.surviving_cols.end(), 0);

  while (r.matrix.rows() > 0 && r.matrix.cols() > 0) {
    const BoolMatrix& m = r.matrix;
    std::vector<bool> drop(static_cast<size_t>(m.cols()), false);
    bool any = false;
    for (int i = 0; i < m.rows(); ++i) {
      int count = 0, hit = -1;
      for (int j = 0; j < m.cols(); ++j)
        if (m(i, j)) {
          ++count;
          hit = j;
        }
      if (count == 1) {
        drop[static_cast<size_t>(hit)] = true;
        any = true;
      }
    }
    if (!any) break;

    std::vector<int> keep_cols;
    for (int j = 0; j < m.cols(); ++j)
      if (!drop[static_cast<size_t>(j)]) keep_cols.push_back(j);
    BoolMatrix trimmed(m.rows(), static_cast<Eigen::Index>(keep_cols.size()));
    for (size_t j = 0; j < keep_cols.size(); ++j)
      trimmed.col(static_cast<Eigen::Index>(j)) = m.col(keep_cols[j]);

    std::vector<int> keep_rows;
    for (int i = 0; i < trimmed.rows(); ++i) {
      bool nonzero = false;
      for (int j = 0; j < trimmed.cols(); ++j) nonzero = nonzero || trimmed(i, j);
      if (nonzero) keep_rows.push_back(i);
    }
    BoolMatrix next(static_cast<Eigen::Index>(keep_rows.size()), trimmed.cols());
    for (size_t i = 0; i < keep_rows.size(); ++i)
      next.row(static_cast<Eigen::Index>(i)) = trimmed.row(keep_rows[i]);

    std::vector<int> cols2, rows2;
    for (int j : keep_cols) cols2.push_back(r.surviving_cols[static_cast<size_t>(j)]);
    for (int i : keep_rows) rows2.push_back(r.surviving_rows[static_cast<size_t>(i)]);
    r.surviving_cols = std::move(cols2);
    r.surviving_rows = std::move(rows2);
    r.matrix = std::move(next);
    ++r.passes;
  }
  return r;
}

bool is_vmcr(const IndexTMesh& mesh, const KnotLine& line_s, const KnotLine& line_t) {
  const SparsityMatrix sp = sparsity_matrix(mesh, line_s, line_t);
  return column_reduction(sp.entries.transpose()).is_void();
}

bool is_vmcr(const IndexTMesh& mesh) {
  return is_vmcr(mesh, uniform_knot_line(mesh.xmin(), mesh.xmax()),
                 uniform_knot_line(mesh.ymin(), mesh.ymax()));
}

bool shifted(const Anchor& a1, const Anchor& a2, ShiftDir dir, const KnotLine& line_s,
             const KnotLine& line_t) {
  return shifted_impl(a1, a2, dir, &line_s, &line_t);
}

bool shifted(const Anchor& a1, const Anchor& a2, ShiftDir dir) {
  return shifted_impl(a1, a2, dir, nullptr, nullptr);
}

const char* wdc_type_name(WdcType type) {
  switch (type) {
    case WdcType::rd:
      return "RD";
    case WdcType::ru:
      return "RU";
    case WdcType::ld:
      return "LD";
    case WdcType::lu:
      return "LU";
  }
  return "?";
}

std::set<WdcType> is_weakly_dc(const IndexTMesh& mesh, const KnotLine& line_s,
                               const KnotLine& line_t) {
  check_line_extents(mesh, line_s, line_t);
  return weakly_dc_impl(mesh, &line_s, &line_t);
}

std::set<WdcType> is_weakly_dc(const IndexTMesh& mesh) {
  return weakly_dc_impl(mesh, nullptr, nullptr);
}

bool is_dual_compatible(const IndexTMesh& mesh) {
  const std::vector<Anchor>& anchors = mesh.anchors();
  if (mesh.classification() != MeshClass::admissible_plus)
    fail(errc::requires_ad_plus, "dual compatibility is defined on admissible-plus meshes");
  for (size_t i = 0; i < anchors.size(); ++i)
    for (size_t j = i + 1; j < anchors.size(); ++j)
      if (!windows_overlap(anchors[i].local_s, anchors[j].local_s) &&
          !windows_overlap(anchors[i].local_t, anchors[j].local_t))
        return false;
  return true;
}

bool is_analysis_suitable(const IndexTMesh& mesh) {
  const std::vector<Extension> exts = mesh.extensions();
  for (const Extension& he : exts) {
    if (!he.horizontal) continue;
    for (const Extension& ve : exts) {
      if (ve.horizontal) continue;
      if (he.lo() <= ve.line && ve.line <= he.hi() && ve.lo() <= he.line &&
          he.line <= ve.hi())
        return false;
    }
  }
  return true;
}

ClassificationReport classify_mesh(const IndexTMesh& mesh, const KnotLine& line_s,
                                   const KnotLine& line_t) {
  ClassificationReport r;
  r.admissible = mesh.admissible();
  r.ad_plus = mesh.classification() == MeshClass::admissible_plus;
  if (!r.admissible) return r;
  r.anchors_count = static_cast<int>(mesh.anchors().size());
  r.extensions = mesh.extensions();
  r.analysis_suitable = is_analysis_suitable(mesh);
  r.dual_compatible = r.ad_plus && is_dual_compatible(mesh);
  r.weakly_dc_types = is_weakly_dc(mesh, line_s, line_t);
  r.vmcr = is_vmcr(mesh, line_s, line_t);
  return r;
}

ClassificationReport classify_mesh(const IndexTMesh& mesh) {
  return classify_mesh(mesh, uniform_knot_line(mesh.xmin(), mesh.xmax()),
                       uniform_knot_line(mesh.ymin(), mesh.ymax()));
}

std::vector<IndexTMesh> refine_example4(int steps, int max_steps) {
  if (steps < 0) fail(errc::invalid_argument, "refinement step count must be nonnegative");
  if (steps > max_steps)
    fail(errc::step_limit_exceeded, "refinement step count exceeds the configured maximum");

  struct Partial {
    double at, lo, hi;
  };
  // Parametric line positions; index meshes relabel them consecutively.
  std::vector<double> full_x, full_y;
  for (int i = -1; i <= 6; ++i) {
    full_x.push_back(i);
    full_y.push_back(i);
  }
  std::vector<Partial> part_v, part_h;

  auto build = [&]() {
    std::vector<double> xs = full_x, ys = full_y;
    for (const Partial& pv : part_v) xs.push_back(pv.at);
    for (const Partial& ph : part_h) ys.push_back(ph.at);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    auto index_of = [](const std::vector<double>& lines, double value) {
      auto it = std::lower_bound(lines.begin(), lines.end(), value);
      if (it == lines.end() || *it != value)
        fail(errc::internal, "refinement endpoint is not on a mesh line");
      return static_cast<int>(it - lines.begin()) - 1;  // first line has index -1
    };
    const int mu = index_of(xs, 4.0);
    const int nu = index_of(ys, 4.0);
    std::vector<LineSegment> vseg, hseg;
    for (double x : {2.0, 3.0})
      vseg.push_back({index_of(xs, x), -1, nu + 2});
    for (double y : {2.0, 3.0})
      hseg.push_back({index_of(ys, y), -1, mu + 2});
    for (const Partial& pv : part_v)
      vseg.push_back({index_of(xs, pv.at), index_of(ys, pv.lo), index_of(ys, pv.hi)});
    for (const Partial& ph : part_h)
      hseg.push_back({index_of(ys, ph.at), index_of(xs, ph.lo), index_of(xs, ph.hi)});
    return mesh_from_segments(4, 4, mu, nu, vseg, hseg);
  };

  std::vector<IndexTMesh> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  out.push_back(build());
  for (int k = 1; k <= steps; ++k) {
    const double h = std::ldexp(1.0, -k);  // 2^-k, exact
    // Two horizontal edges bisecting the cell rows of the bottom-right-most
    // 2x2 block, prolonged rightward through the frame...
    part_h.push_back({1 + h, 4 - 4 * h, 6});
    part_h.push_back({1 + 3 * h, 4 - 4 * h, 6});
    // ...then two vertical edges bisecting its cell columns, prolonged
    // downward through the frame.
    part_v.push_back({4 - 3 * h, -1, 1 + 2 * h});
    part_v.push_back({4 - h, -1, 1 + 2 * h});
    out.push_back(build());
  }
  return out;
}

IndexTMesh random_admissible_mesh(int p, int q, int mu, int nu, std::mt19937& rng,
                                  bool require_plus) {
  std::bernoulli_distribution full_coin(0.6);
  std::bernoulli_distribution partial_coin(0.4);
  std::uniform_int_distribution<int> style(0, 2);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> fx, fy;
    for (int l = 2; l < mu; ++l)
      if (full_coin(rng)) fx.push_back(l);
    for (int l = 2; l < nu; ++l)
      if (full_coin(rng)) fy.push_back(l);

    std::vector<LineSegment> vseg, hseg;
    const int ymin = -(q / 2) + 1, ymax = nu + q / 2;
    const int xmin = -(p / 2) + 1, xmax = mu + p / 2;
    for (int l : fx) vseg.push_back({l, ymin, ymax});
    for (int l : fy) hseg.push_back({l, xmin, xmax});

    // Partial lines stop on full lines of the other direction, so every
    // junction lands strictly inside the open active region.
    auto add_partials = [&](int hi_pos, const std::vector<int>& taken,
                            const std::vector<int>& stops, int lo_bound, int hi_bound,
                            std::vector<LineSegment>& segs) {
      for (int l = 2; l < hi_pos; ++l) {
        if (std::find(taken.begin(), taken.end(), l) != taken.end()) continue;
        if (stops.empty() || !partial_coin(rng)) continue;
        std::uniform_int_distribution<size_t> pick(0, stops.size() - 1);
        const int stop = stops[pick(rng)];
        switch (style(rng)) {
          case 0:
            segs.push_back({l, lo_bound, stop});
            break;
          case 1:
            segs.push_back({l, stop, hi_bound});
            break;
          default: {
            const int other = stops[pick(rng)];
            if (other == stop)
              segs.push_back({l, lo_bound, stop});
            else
              segs.push_back({l, std::min(stop, other), std::max(stop, other)});
            break;
          }
        }
      }
    };
    add_partials(mu, fx, fy, ymin, ymax, vseg);
    add_partials(nu, fy, fx, xmin, xmax, hseg);

    try {
      IndexTMesh m = mesh_from_segments(p, q, mu, nu, vseg, hseg);
      if (m.classification() == MeshClass::admissible_plus) return m;
      if (!require_plus && m.admissible()) return m;
    } catch (const Error&) {
      // layouts that fail to cut rectangles are simply re-rolled
    }
  }
  fail(errc::internal, "random mesh generation did not converge");
}

}  // namespace gts
