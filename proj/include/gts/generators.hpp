#pragma once

#include <string>

#include "gts/errors.hpp"

namespace gts {

enum class CoreKind { polynomial, trigonometric, hyperbolic };

const char* core_kind_name(CoreKind kind);

/// Section-space descriptor for one knot interval. The order-p spline's
/// (p-2)-th derivative lives span-wise in the two-dimensional space the core
/// generates: {1, s} for polynomial, {cos ws, sin ws} for trigonometric,
/// {cosh ws, sinh ws} for hyperbolic.
struct SectionCore {
  CoreKind kind = CoreKind::polynomial;
  double omega = 0.0;  // unused for polynomial

  bool operator==(const SectionCore& o) const {
    if (kind != o.kind) return false;
    if (kind == CoreKind::polynomial) return true;
    return omega == o.omega;
  }
};

inline SectionCore polynomial_core() { return {CoreKind::polynomial, 0.0}; }
inline SectionCore trig_core(double omega) { return {CoreKind::trigonometric, omega}; }
inline SectionCore hyperbolic_core(double omega) { return {CoreKind::hyperbolic, omega}; }

/// Generating pair (U, V) for a section core on a span [x0, x1]:
/// U(x0) > 0, U(x1) = 0, V(x0) = 0, V(x1) > 0. The canonical choices are
///   polynomial:    U = (x1 - s),           V = (s - x0)
///   trigonometric: U = sin(w (x1 - s)),    V = sin(w (s - x0))
///   hyperbolic:    U = sinh(w (x1 - s)),   V = sinh(w (s - x0))
/// All evaluation happens in the local coordinate x = s - x0.
///
/// antideriv(k, x) is the k-fold antiderivative whose derivatives of order
/// 0..k-1 all vanish at x = 0; these are what the order-raising integral
/// recursion produces, so a basis piece stays a two-term core combination
/// plus a polynomial at every order.
class GeneratorPair {
 public:
  /// Throws degenerate_span on x1 <= x0 and chebyshev_violation when the core
  /// is not an extended Chebyshev system on the span (trigonometric with
  /// w (x1 - x0) >= pi, or nonpositive frequency for trig/hyperbolic).
  GeneratorPair(SectionCore core, double x0, double x1);

  const SectionCore& core() const { return core_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double length() const { return x1_ - x0_; }

  double u(double x) const { return u_antideriv(0, x); }
  double v(double x) const { return v_antideriv(0, x); }

  double u_antideriv(int k, double x) const;
  double v_antideriv(int k, double x) const;

  /// First derivatives, needed only for endpoint smoothness checks.
  double u_derivative(double x) const;
  double v_derivative(double x) const;

 private:
  SectionCore core_;
  double x0_ = 0.0;
  double x1_ = 0.0;
};

/// Throws chebyshev_violation / degenerate_span exactly like the
/// GeneratorPair constructor, without building anything.
void check_core_on_span(const SectionCore& core, double x0, double x1);

}  // namespace gts
