#include "gts/independence.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <utility>

#include "gts/errors.hpp"
#include "gts/gb_basis.hpp"

namespace gts {

namespace {

bool same_core(const SectionCore& a, const SectionCore& b) {
  if (a.kind != b.kind) return false;
  return a.kind == CoreKind::polynomial || a.omega == b.omega;
}

// Every positive-length interval skipped by a window gap must carry the same
// core as the gap's left endpoint: the insertion identity duplicates that
// core across the gap, so a disagreement would silently change the function.
void check_gap_cores(const std::vector<int>& window, const KnotLine& line,
                     const std::vector<SectionCore>& cores) {
  for (size_t j = 0; j + 1 < window.size(); ++j) {
    const SectionCore& left = cores[static_cast<size_t>(window[j] - line.min_index())];
    for (int k = window[j] + 1; k < window[j + 1]; ++k) {
      if (line.value_at(k + 1) <= line.value_at(k)) continue;
      if (!same_core(cores[static_cast<size_t>(k - line.min_index())], left))
        fail(errc::function_vector_mismatch,
             "local window gap spans intervals with incompatible section cores");
    }
  }
}

// Multiset difference: knot values of the filled window minus those of the
// local window, i.e. exactly the values the refinement inserts.
std::vector<double> insertion_targets(const std::vector<double>& bar_vals,
                                      const std::vector<double>& local_vals) {
  std::vector<double> out;
  size_t i = 0, j = 0;
  while (i < bar_vals.size()) {
    if (j < local_vals.size() && bar_vals[i] == local_vals[j]) {
      ++i;
      ++j;
    } else {
      out.push_back(bar_vals[i++]);
    }
  }
  if (j != local_vals.size())
    fail(errc::internal, "filled window does not contain the local window");
  return out;
}

struct AxisExpansion {
  int start = 0;  // full-line index of the first refined window
  Eigen::RowVectorXd coeffs;
};

AxisExpansion expand_axis(const GBBasis& local, const std::vector<int>& window,
                          const KnotLine& line, const std::vector<SectionCore>& cores) {
  check_gap_cores(window, line, cores);
  std::vector<int> bar = bar_index_vector(window, line);
  RefineResult rr = refine_to(local, insertion_targets(line.window(bar), line.window(window)));
  AxisExpansion e;
  e.start = bar.front();
  e.coeffs = rr.coeffs.row(0);
  return e;
}

int svd_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

std::string anchor_label(const Anchor& a) {
  std::ostringstream os;
  os << a.x1 << ':' << a.x2 << ':' << a.y1 << ':' << a.y2;
  return os.str();
}

}  // namespace

TMeshSpace polynomial_twin(const TMeshSpace& space) {
  const int ns = space.line_s().size() - 1;
  const int nt = space.line_t().size() - 1;
  return TMeshSpace::build(space.mesh(), space.line_s().values(), space.line_t().values(),
                           std::vector<SectionCore>(static_cast<size_t>(ns), polynomial_core()),
                           std::vector<SectionCore>(static_cast<size_t>(nt), polynomial_core()));
}

RefinementMatrix build_refinement_matrix(const TMeshSpace& space, Flavor flavor) {
  if (flavor == Flavor::polynomial) {
    RefinementMatrix m = build_refinement_matrix(polynomial_twin(space), Flavor::gb);
    m.flavor = Flavor::polynomial;
    return m;
  }

  RefinementMatrix m;
  m.flavor = Flavor::gb;
  m.rows = space.mesh().anchors();
  m.cols = space.mesh().underlying_tp().anchors();
  m.entries = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows.size()),
                                    static_cast<Eigen::Index>(m.cols.size()));

  // tensor-product windows are consecutive, so their start indices key the columns
  std::map<std::pair<int, int>, Eigen::Index> col_of;
  for (size_t j = 0; j < m.cols.size(); ++j)
    col_of[{m.cols[j].local_s.front(), m.cols[j].local_t.front()}] =
        static_cast<Eigen::Index>(j);

  for (size_t i = 0; i < m.rows.size(); ++i) {
    const Anchor& a = m.rows[i];
    AxisExpansion es =
        expand_axis(space.local_basis_s(a), a.local_s, space.line_s(), space.cores_s());
    AxisExpansion et =
        expand_axis(space.local_basis_t(a), a.local_t, space.line_t(), space.cores_t());
    for (Eigen::Index ks = 0; ks < es.coeffs.size(); ++ks) {
      for (Eigen::Index kt = 0; kt < et.coeffs.size(); ++kt) {
        auto it = col_of.find({es.start + static_cast<int>(ks), et.start + static_cast<int>(kt)});
        if (it == col_of.end())
          fail(errc::internal, "refined window does not match any tensor-product anchor");
        m.entries(static_cast<Eigen::Index>(i), it->second) = es.coeffs(ks) * et.coeffs(kt);
      }
    }
  }
  return m;
}

bool is_full_rank(const RefinementMatrix& matrix, double rel_tol) {
  const Eigen::Index n = matrix.entries.rows();
  if (n == 0) return true;
  return svd_rank(matrix.entries, rel_tol) == static_cast<int>(n);
}

std::vector<std::function<double(double, double)>> blend_functions(const TMeshSpace& space,
                                                                   Flavor flavor) {
  if (flavor == Flavor::polynomial) return blend_functions(polynomial_twin(space), Flavor::gb);
  std::vector<std::function<double(double, double)>> out;
  for (const Anchor& a : space.mesh().anchors()) {
    GBBasis bs = space.local_basis_s(a);
    GBBasis bt = space.local_basis_t(a);
    out.push_back([bs = std::move(bs), bt = std::move(bt)](double s, double t) {
      return bs.evaluate(0, s) * bt.evaluate(0, t);
    });
  }
  return out;
}

int sampled_rank(const std::vector<std::function<double(double, double)>>& funcs, double s_lo,
                 double s_hi, double t_lo, double t_hi, int samples_s, int samples_t,
                 double rel_tol) {
  if (funcs.empty()) return 0;
  if (samples_s < 2 || samples_t < 2)
    fail(errc::invalid_argument, "sampling grid needs at least two points per direction");
  Eigen::MatrixXd g(static_cast<Eigen::Index>(funcs.size()),
                    static_cast<Eigen::Index>(samples_s) * samples_t);
  for (int is = 0; is < samples_s; ++is) {
    const double s = s_lo + (s_hi - s_lo) * is / (samples_s - 1);
    for (int it = 0; it < samples_t; ++it) {
      const double t = t_lo + (t_hi - t_lo) * it / (samples_t - 1);
      const Eigen::Index col = static_cast<Eigen::Index>(is) * samples_t + it;
      for (size_t f = 0; f < funcs.size(); ++f)
        g(static_cast<Eigen::Index>(f), col) = funcs[f](s, t);
    }
  }
  return svd_rank(g, rel_tol);
}

bool gram_rank_oracle(const TMeshSpace& space, Flavor flavor, double rel_tol) {
  const IndexTMesh& mesh = space.mesh();
  auto funcs = blend_functions(space, flavor);
  const int ns = 4 * (mesh.p() + mesh.q()) + 1;
  const double s_lo = space.line_s().value_at(1), s_hi = space.line_s().value_at(mesh.mu());
  const double t_lo = space.line_t().value_at(1), t_hi = space.line_t().value_at(mesh.nu());
  return sampled_rank(funcs, s_lo, s_hi, t_lo, t_hi, ns, ns, rel_tol) ==
         static_cast<int>(funcs.size());
}

std::string to_csv(const RefinementMatrix& matrix) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "anchor";
  for (const Anchor& c : matrix.cols) os << ',' << anchor_label(c);
  os << '\n';
  for (Eigen::Index i = 0; i < matrix.entries.rows(); ++i) {
    os << anchor_label(matrix.rows[static_cast<size_t>(i)]);
    for (Eigen::Index j = 0; j < matrix.entries.cols(); ++j) os << ',' << matrix.entries(i, j);
    os << '\n';
  }
  return os.str();
}

std::string to_pattern(const RefinementMatrix& matrix, double zero_tol) {
  std::string out;
  for (Eigen::Index i = 0; i < matrix.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.entries.cols(); ++j)
      out += std::abs(matrix.entries(i, j)) > zero_tol ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace gts
