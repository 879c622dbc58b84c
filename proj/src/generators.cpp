#include "gts/generators.hpp"

#include <cmath>
#include <complex>

namespace gts {

namespace {

constexpr double kPi = 3.14159265358979323846;

// E_k(z) = sum_{j >= k} z^j / j!, the tail of the exponential series.
// AntiD^k[e^{az}](x) with derivatives 0..k-1 vanishing at 0 equals
// E_k(a x) / a^k, which is the whole reason this helper exists. Arguments
// stay small here (Chebyshev bounds cap w*h for trig; hyperbolic fixtures
// keep w*h a few units), so direct tail summation is accurate.
template <typename T>
T exp_tail(int k, T z) {
  if (k == 0) return std::exp(z);
  T term = z;
  for (int j = 2; j <= k; ++j) term *= z / static_cast<double>(j);
  // term == z^k / k!
  T sum = term;
  for (int j = k; j < k + 400; ++j) {
    term *= z / static_cast<double>(j + 1);
    sum += term;
    if (std::abs(term) <= 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

// k-fold vanishing antiderivative of x -> x at 0: x^{k+1} / (k+1)!
double antideriv_linear(int k, double x) {
  return std::pow(x, k + 1) / factorial(k + 1);
}

// k-fold vanishing antiderivative of x -> 1 at 0: x^k / k!
double antideriv_one(int k, double x) {
  return std::pow(x, k) / factorial(k);
}

}  // namespace

const char* core_kind_name(CoreKind kind) {
  switch (kind) {
    case CoreKind::polynomial: return "polynomial";
    case CoreKind::trigonometric: return "trigonometric";
    case CoreKind::hyperbolic: return "hyperbolic";
  }
  return "?";
}

void check_core_on_span(const SectionCore& core, double x0, double x1) {
  if (!(x1 > x0))
    fail(errc::degenerate_span, "generating pair needs a span of positive length");
  double h = x1 - x0;
  switch (core.kind) {
    case CoreKind::polynomial:
      break;
    case CoreKind::trigonometric:
      if (!(core.omega > 0.0))
        fail(errc::chebyshev_violation, "trigonometric core needs omega > 0");
      if (!(core.omega * h < kPi))
        fail(errc::chebyshev_violation,
             "trigonometric core violates omega * span < pi (omega=" +
                 std::to_string(core.omega) + ", span=" + std::to_string(h) + ")");
      break;
    case CoreKind::hyperbolic:
      if (!(core.omega > 0.0))
        fail(errc::chebyshev_violation, "hyperbolic core needs omega > 0");
      break;
  }
}

GeneratorPair::GeneratorPair(SectionCore core, double x0, double x1)
    : core_(core), x0_(x0), x1_(x1) {
  check_core_on_span(core, x0, x1);
}

double GeneratorPair::v_antideriv(int k, double x) const {
  double w = core_.omega;
  switch (core_.kind) {
    case CoreKind::polynomial:
      return antideriv_linear(k, x);
    case CoreKind::trigonometric: {
      // V = sin(w x) = Im e^{i w x}
      std::complex<double> iw(0.0, w);
      return (exp_tail(k, iw * x) / std::pow(iw, k)).imag();
    }
    case CoreKind::hyperbolic: {
      // V = sinh(w x) = (e^{w x} - e^{-w x}) / 2
      double pk = std::pow(w, k);
      double sk = (k % 2 == 0) ? pk : -pk;
      return 0.5 * (exp_tail(k, w * x) / pk - exp_tail(k, -w * x) / sk);
    }
  }
  return 0.0;
}

double GeneratorPair::u_antideriv(int k, double x) const {
  double w = core_.omega;
  double h = length();
  switch (core_.kind) {
    case CoreKind::polynomial:
      // U = h - x
      return h * antideriv_one(k, x) - antideriv_linear(k, x);
    case CoreKind::trigonometric: {
      // U = sin(w (h - x)) = Im[e^{i w h} e^{-i w x}]
      std::complex<double> iw(0.0, w);
      std::complex<double> phase = std::exp(iw * h);
      return (phase * exp_tail(k, -iw * x) / std::pow(-iw, k)).imag();
    }
    case CoreKind::hyperbolic: {
      // U = sinh(w (h - x)) = (e^{w h} e^{-w x} - e^{-w h} e^{w x}) / 2
      double pk = std::pow(w, k);
      double sk = (k % 2 == 0) ? pk : -pk;
      return 0.5 * (std::exp(w * h) * exp_tail(k, -w * x) / sk -
                    std::exp(-w * h) * exp_tail(k, w * x) / pk);
    }
  }
  return 0.0;
}

double GeneratorPair::v_derivative(double x) const {
  double w = core_.omega;
  switch (core_.kind) {
    case CoreKind::polynomial: return 1.0;
    case CoreKind::trigonometric: return w * std::cos(w * x);
    case CoreKind::hyperbolic: return w * std::cosh(w * x);
  }
  return 0.0;
}

double GeneratorPair::u_derivative(double x) const {
  double w = core_.omega;
  double h = length();
  switch (core_.kind) {
    case CoreKind::polynomial: return -1.0;
    case CoreKind::trigonometric: return -w * std::cos(w * (h - x));
    case CoreKind::hyperbolic: return -w * std::cosh(w * (h - x));
  }
  return 0.0;
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::none: return "none";
    case errc::invalid_argument: return "invalid_argument";
    case errc::chebyshev_violation: return "chebyshev_violation";
    case errc::degenerate_span: return "degenerate_span";
    case errc::multiplicity_too_high: return "multiplicity_too_high";
    case errc::index_out_of_range: return "index_out_of_range";
    case errc::knot_outside_domain: return "knot_outside_domain";
    case errc::multiplicity_overflow: return "multiplicity_overflow";
    case errc::function_vector_mismatch: return "function_vector_mismatch";
    case errc::malformed_partition: return "malformed_partition";
    case errc::not_admissible: return "not_admissible";
    case errc::insufficient_intersections: return "insufficient_intersections";
    case errc::requires_ad_plus: return "requires_ad_plus";
    case errc::step_limit_exceeded: return "step_limit_exceeded";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::zero_denominator: return "zero_denominator";
    case errc::singular_fit: return "singular_fit";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
    case errc::internal: return "internal";
  }
  return "?";
}

}  // namespace gts
