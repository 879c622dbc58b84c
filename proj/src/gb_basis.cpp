#include "gts/gb_basis.hpp"

#include <algorithm>
#include <cmath>

namespace gts {

KnotVector::KnotVector(std::vector<double> knots, int order)
    : knots_(std::move(knots)), order_(order) {
  if (order_ < 2)
    fail(errc::invalid_argument, "spline order must be at least 2");
  if (size() < order_ + 1)
    fail(errc::invalid_argument, "knot vector needs at least order+1 knots");
  for (int i = 1; i < size(); ++i)
    if (knots_[static_cast<size_t>(i)] < knots_[static_cast<size_t>(i - 1)])
      fail(errc::invalid_argument, "knots must be nondecreasing");
  int run = 1;
  for (int i = 1; i < size(); ++i) {
    run = (knots_[static_cast<size_t>(i)] == knots_[static_cast<size_t>(i - 1)]) ? run + 1 : 1;
    if (run > order_)
      fail(errc::multiplicity_too_high,
           "knot multiplicity exceeds the order at value " +
               std::to_string(knots_[static_cast<size_t>(i)]));
  }
}

int KnotVector::multiplicity(int i) const {
  double v = knots_[static_cast<size_t>(i)];
  int m = 0;
  for (double s : knots_)
    if (s == v) ++m;
  return m;
}

int KnotVector::find_span(double s) const {
  if (s < knots_.front() || s > knots_.back()) return -1;
  if (s == knots_.back()) {
    for (int j = size() - 2; j >= 0; --j)
      if (knots_[static_cast<size_t>(j)] < knots_[static_cast<size_t>(j + 1)]) return j;
    return -1;
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  return static_cast<int>(it - knots_.begin()) - 1;
}

namespace {

const Piece* find_piece(const std::vector<Piece>& pieces, int span) {
  for (const Piece& p : pieces)
    if (p.span == span) return &p;
  return nullptr;
}

}  // namespace

GBBasis::GBBasis(KnotVector kv, std::vector<SectionCore> cores)
    : kv_(std::move(kv)), cores_(std::move(cores)) {
  const int p = kv_.order();
  const int nknots = kv_.size();
  const int nspans = nknots - 1;

  pairs_.resize(static_cast<size_t>(nspans));
  for (int j = 0; j < nspans; ++j) {
    double a = kv_[j], b = kv_[j + 1];
    if (b > a) pairs_[static_cast<size_t>(j)].emplace(cores_[static_cast<size_t>(j)], a, b);
  }

  // Order 2 base case: the hat-like pair ratio on the two support spans.
  std::vector<std::vector<Piece>> cur(static_cast<size_t>(nknots - 2));
  for (int i = 0; i + 2 < nknots; ++i) {
    if (kv_[i] == kv_[i + 2]) continue;  // zero spline
    auto& pieces = cur[static_cast<size_t>(i)];
    if (const auto& g = pairs_[static_cast<size_t>(i)]) {
      pieces.push_back({i, 0.0, 1.0 / g->v(g->length()), {}});
    }
    if (const auto& g = pairs_[static_cast<size_t>(i + 1)]) {
      pieces.push_back({i + 1, 1.0 / g->u(0.0), 0.0, {}});
    }
  }

  deltas_.resize(static_cast<size_t>(p - 1));
  deltas_[0] = compute_deltas(cur, 0);

  // Raise the order: N_i^(ord) is the running integral of
  // delta_i N_i^(ord-1) - delta_{i+1} N_{i+1}^(ord-1).
  for (int ord = 3; ord <= p; ++ord) {
    const int level = ord - 3;  // antiderivative level of the inputs
    const auto& dl = deltas_[static_cast<size_t>(ord - 3)];
    std::vector<std::vector<Piece>> next(static_cast<size_t>(nknots - ord));
    for (int i = 0; i + ord < nknots; ++i) {
      if (kv_[i] == kv_[i + ord]) continue;  // zero spline
      const DeltaValue& dlo = dl[static_cast<size_t>(i)];
      const DeltaValue& dhi = dl[static_cast<size_t>(i + 1)];
      auto& out = next[static_cast<size_t>(i)];
      double running = 0.0;
      for (int j = i; j <= i + ord - 1; ++j) {
        // A zero lower spline integrates to a unit step at the right end of
        // its would-be support [knots_i, knots_{i+ord-1}]; the subtrahend's
        // step sits at knots_{i+ord}, beyond this function's support.
        if (dlo.zero_spline && j == i + ord - 1) running += 1.0;
        if (!(kv_[j] < kv_[j + 1])) continue;
        Piece comb{j, 0.0, 0.0, {}};
        if (!dlo.zero_spline) {
          if (const Piece* P = find_piece(cur[static_cast<size_t>(i)], j)) {
            comb.a += dlo.value * P->a;
            comb.b += dlo.value * P->b;
            comb.poly.resize(std::max(comb.poly.size(), P->poly.size()), 0.0);
            for (size_t m = 0; m < P->poly.size(); ++m) comb.poly[m] += dlo.value * P->poly[m];
          }
        }
        if (!dhi.zero_spline) {
          if (const Piece* P = find_piece(cur[static_cast<size_t>(i + 1)], j)) {
            comb.a -= dhi.value * P->a;
            comb.b -= dhi.value * P->b;
            comb.poly.resize(std::max(comb.poly.size(), P->poly.size()), 0.0);
            for (size_t m = 0; m < P->poly.size(); ++m) comb.poly[m] -= dhi.value * P->poly[m];
          }
        }
        Piece F{j, comb.a, comb.b, {}};
        F.poly.assign(comb.poly.size() + 1, 0.0);
        F.poly[0] = running;
        for (size_t m = 0; m < comb.poly.size(); ++m)
          F.poly[m + 1] = comb.poly[m] / static_cast<double>(m + 1);
        running = piece_value(F, level + 1, kv_[j + 1] - kv_[j]);
        out.push_back(std::move(F));
      }
    }
    cur = std::move(next);
    deltas_[static_cast<size_t>(ord - 2)] = compute_deltas(cur, ord - 2);
  }

  funcs_ = std::move(cur);
}

GBBasis GBBasis::build(KnotVector kv, std::vector<SectionCore> cores) {
  if (static_cast<int>(cores.size()) != kv.num_spans())
    fail(errc::dimension_mismatch,
         "need one section core per knot span (" + std::to_string(kv.num_spans()) +
             " spans, " + std::to_string(cores.size()) + " cores)");
  return GBBasis(std::move(kv), std::move(cores));
}

double GBBasis::piece_value(const Piece& piece, int level, double x) const {
  double val = 0.0;
  if (piece.a != 0.0 || piece.b != 0.0) {
    const auto& g = pairs_[static_cast<size_t>(piece.span)];
    val += piece.a * g->u_antideriv(level, x) + piece.b * g->v_antideriv(level, x);
  }
  double xp = 1.0;
  for (double c : piece.poly) {
    val += c * xp;
    xp *= x;
  }
  return val;
}

std::vector<DeltaValue> GBBasis::compute_deltas(const std::vector<std::vector<Piece>>& funcs,
                                                int level) const {
  std::vector<DeltaValue> out(funcs.size());
  for (size_t i = 0; i < funcs.size(); ++i) {
    if (funcs[i].empty()) {
      out[i] = {0.0, true};
      continue;
    }
    double integral = 0.0;
    for (const Piece& P : funcs[i]) {
      double h = kv_[P.span + 1] - kv_[P.span];
      // the piece's vanishing antiderivative over its span
      Piece lifted{P.span, P.a, P.b, {}};
      lifted.poly.assign(P.poly.size() + 1, 0.0);
      for (size_t m = 0; m < P.poly.size(); ++m)
        lifted.poly[m + 1] = P.poly[m] / static_cast<double>(m + 1);
      integral += piece_value(lifted, level + 1, h);
    }
    if (!(integral > 0.0))
      fail(errc::internal, "nonpositive integral for a nonzero basis function");
    out[i] = {1.0 / integral, false};
  }
  return out;
}

double GBBasis::evaluate(int i, double s) const {
  if (i < 0 || i >= size()) fail(errc::index_out_of_range, "basis index out of range");
  const auto& pieces = funcs_[static_cast<size_t>(i)];
  if (pieces.empty()) return 0.0;
  if (s < kv_[i] || s > kv_[i + order()]) return 0.0;
  int span = kv_.find_span(s);
  if (span < 0) return 0.0;
  const Piece* P = find_piece(pieces, span);
  if (!P) return 0.0;
  return piece_value(*P, order() - 2, s - kv_[span]);
}

double GBBasis::derivative(int i, double s, int r, bool from_left) const {
  if (i < 0 || i >= size()) fail(errc::index_out_of_range, "basis index out of range");
  const int p = order();
  if (r < 0 || r > p - 1) fail(errc::invalid_argument, "derivative order must be in [0, p-1]");
  int span;
  if (from_left) {
    auto& vals = kv_.values();
    auto it = std::lower_bound(vals.begin(), vals.end(), s);
    span = static_cast<int>(it - vals.begin()) - 1;
  } else {
    span = kv_.find_span(s);
  }
  if (span < 0 || span >= kv_.num_spans()) return 0.0;
  const Piece* P = find_piece(funcs_[static_cast<size_t>(i)], span);
  if (!P) return 0.0;
  const double x = s - kv_[span];
  const int k = p - 2;
  double val = 0.0;
  const auto& g = pairs_[static_cast<size_t>(P->span)];
  if (r <= k) {
    if (P->a != 0.0 || P->b != 0.0)
      val += P->a * g->u_antideriv(k - r, x) + P->b * g->v_antideriv(k - r, x);
    // r-th derivative of the local polynomial part
    for (size_t m = static_cast<size_t>(r); m < P->poly.size(); ++m) {
      double c = P->poly[m];
      for (int t = 0; t < r; ++t) c *= static_cast<double>(m - static_cast<size_t>(t));
      val += c * std::pow(x, static_cast<double>(m) - r);
    }
  } else {  // r == k + 1 == p - 1: one past the stored antiderivative level
    val = P->a * g->u_derivative(x) + P->b * g->v_derivative(x);
  }
  return val;
}

DeltaValue GBBasis::delta(int i, int ord) const {
  if (ord < 2 || ord > order()) fail(errc::invalid_argument, "delta order out of range");
  const auto& d = deltas_[static_cast<size_t>(ord - 2)];
  if (i < 0 || i >= static_cast<int>(d.size()))
    fail(errc::index_out_of_range, "delta index out of range");
  return d[static_cast<size_t>(i)];
}

std::pair<GBBasis, Insertion> insert_knot(const GBBasis& basis, double sbar) {
  const KnotVector& kv = basis.knots();
  const int p = kv.order();
  const int n = kv.num_funcs();
  const int nfull = kv.size();  // n + p
  if (!(sbar >= kv.domain_min() && sbar < kv.domain_max()))
    fail(errc::knot_outside_domain,
         "insertion knot sbar must satisfy front <= sbar < back of the knot line");

  const int i = kv.find_span(sbar);  // 0-based: kv[i] <= sbar < kv[i+1]
  int r = 0;                         // old multiplicity of sbar's value
  for (int j = 0; j < nfull; ++j)
    if (kv[j] == sbar) ++r;
  if (r + 1 > p)
    fail(errc::multiplicity_overflow, "insertion would exceed multiplicity p");

  std::vector<double> nk = kv.values();
  nk.insert(nk.begin() + i + 1, sbar);
  std::vector<SectionCore> nc = basis.cores();
  nc.insert(nc.begin() + i, basis.cores()[static_cast<size_t>(i)]);
  GBBasis refined = GBBasis::build(KnotVector(std::move(nk), p), std::move(nc));

  // Two-term coefficients, computed in 1-based indices to keep the recursion
  // ranges readable: ip is the split position, alpha/beta run over 1-based j.
  const int ip = i + 1;
  GeneratorPair g(basis.cores()[static_cast<size_t>(i)], kv[i], kv[i + 1]);
  const double a_mid = g.v(sbar - kv[i]) / g.v(g.length());
  const double b_mid = g.u(sbar - kv[i]) / g.u(0.0);

  std::vector<double> alpha(static_cast<size_t>(nfull + 3), 0.0);
  std::vector<double> beta(static_cast<size_t>(nfull + 3), 0.0);
  for (int j = 1; j <= nfull + 2; ++j) {
    alpha[static_cast<size_t>(j)] = (j < ip) ? 1.0 : (j == ip ? a_mid : 0.0);
    beta[static_cast<size_t>(j)] = (j < ip) ? 0.0 : (j == ip ? b_mid : 1.0);
  }

  // Reciprocal-integral ratio delta_old / delta_new. When both sides are
  // degenerate (zero splines) the insertion left that support untouched and
  // the two step functions coincide, so the ratio is 1; one-sided
  // degeneracy is impossible because the new knot lands strictly inside a
  // positive span of any function it affects.
  auto delta_ratio = [&](DeltaValue d_old, DeltaValue d_new) {
    if (d_old.zero_spline != d_new.zero_spline)
      fail(errc::internal, "insertion split a degenerate support");
    return d_old.zero_spline ? 1.0 : d_old.value / d_new.value;
  };

  for (int ord = 3; ord <= p; ++ord) {
    std::vector<double> alpha2(static_cast<size_t>(nfull + 3), 0.0);
    std::vector<double> beta2(static_cast<size_t>(nfull + 3), 0.0);
    // Entries with j past the order-ord function range are never read by the
    // final extraction (alpha chains in place, beta chains downward), so the
    // table only needs the in-range slice.
    for (int j = 1; j <= nfull + 2; ++j) {
      const bool in_range = j <= nfull - ord + 1;
      // alpha_{j,ord}
      if (j <= ip - ord) {
        alpha2[static_cast<size_t>(j)] = 1.0;
      } else if (j >= ip - r + 1 || !in_range) {
        alpha2[static_cast<size_t>(j)] = 0.0;
      } else {
        double ratio =
            delta_ratio(basis.delta(j - 1, ord - 1), refined.delta(j - 1, ord - 1));
        alpha2[static_cast<size_t>(j)] = ratio * alpha[static_cast<size_t>(j)];
      }
      // beta_{j,ord}
      if (j <= ip - ord + 1 || (!in_range && j < ip - r + 2)) {
        beta2[static_cast<size_t>(j)] = 0.0;
      } else if (j >= ip - r + 2) {
        beta2[static_cast<size_t>(j)] = 1.0;
      } else {
        double ratio =
            delta_ratio(basis.delta(j - 1, ord - 1), refined.delta(j, ord - 1));
        beta2[static_cast<size_t>(j)] = ratio * beta[static_cast<size_t>(j + 1)];
      }
    }
    alpha.swap(alpha2);
    beta.swap(beta2);
  }

  Insertion ins;
  ins.position = i;
  ins.alpha.resize(static_cast<size_t>(n));
  ins.beta_next.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    ins.alpha[static_cast<size_t>(j)] = alpha[static_cast<size_t>(j + 1)];
    ins.beta_next[static_cast<size_t>(j)] = beta[static_cast<size_t>(j + 2)];
  }
  return {std::move(refined), std::move(ins)};
}

RefineResult refine_to(const GBBasis& basis, std::vector<double> targets) {
  std::sort(targets.begin(), targets.end());
  const int n0 = basis.size();
  GBBasis cur = basis;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n0, n0);
  for (double t : targets) {
    auto [refined, ins] = insert_knot(cur, t);
    const int m = cur.size();
    Eigen::MatrixXd M2 = Eigen::MatrixXd::Zero(n0, m + 1);
    for (int k = 0; k < m; ++k) {
      if (ins.alpha[static_cast<size_t>(k)] != 0.0)
        M2.col(k) += ins.alpha[static_cast<size_t>(k)] * M.col(k);
      if (ins.beta_next[static_cast<size_t>(k)] != 0.0)
        M2.col(k + 1) += ins.beta_next[static_cast<size_t>(k)] * M.col(k);
    }
    M = std::move(M2);
    cur = std::move(refined);
  }
  return RefineResult(std::move(cur), std::move(M));
}

}  // namespace gts
