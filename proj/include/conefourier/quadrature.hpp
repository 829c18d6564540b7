#pragma once

// Numerical integration used as the independent oracle: tanh-sinh
// (double-exponential), adaptive Gauss-Kronrod, Gauss-Laguerre, iterated
// tensor-product rules, and numerical Fourier transforms.
//
// Nothing here knows about the closed forms being verified; integrands are
// opaque callables.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "conefourier/kernel.hpp"

namespace conefourier {

enum class Rule { DoubleExponential, AdaptiveGK, GaussLaguerre };

struct QuadratureConfig {
  Rule rule = Rule::DoubleExponential;
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_levels = 12;          // tanh-sinh step halvings, h = 2^-level
  int max_subdivisions = 2000;  // adaptive GK
  double truncation_radius = 40.0;

  /// Throws DomainError on nonpositive tolerances or max_levels < 3.
  void validate() const;
};

struct IntegralResult {
  Cx value;
  double error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = false;
  // Integral of |f| by the same rule; a natural scale for absolute errors.
  double magnitude = 0.0;
  // Set by fourier_num when the GK cross-check path was requested.
  bool cross_checked = false;
  Cx cross_check_value;
  bool disagreement = false;
};

struct Interval {
  enum class Kind { Finite, HalfLine, FullLine };
  Kind kind = Kind::Finite;
  double lo = 0.0;
  double hi = 1.0;

  static Interval finite(double a, double b) { return {Kind::Finite, a, b}; }
  static Interval half_line(double a) { return {Kind::HalfLine, a, 0.0}; }
  static Interval full_line() { return {Kind::FullLine, 0.0, 0.0}; }
};

using Integrand1d = std::function<Cx(double)>;

/// f(x, x - a, b - x). The distances to the endpoints are exact even where
/// x itself has rounded onto an endpoint.
using GapIntegrand = std::function<Cx(double, double, double)>;

using PointIntegrand = std::function<Cx(std::span<const double>)>;

/// Point of a box with per-axis endpoint distances.
struct BoxPoint {
  std::span<const double> x;
  std::span<const double> gap_lo;
  std::span<const double> gap_hi;
};
using BoxIntegrand = std::function<Cx(const BoxPoint&)>;

/// f(x, c) on the unit ball with c[j] = 1 - (x_1^2 + ... + x_j^2), j = 0..d.
using BallIntegrand = std::function<Cx(std::span<const double>, std::span<const double>)>;

// All integrate_* functions throw ConvergenceError (carrying the best
// estimate) when the tolerance is not met. The error estimate is never
// reported below the rounding floor of about 8 eps * magnitude.

IntegralResult integrate_1d(const Integrand1d& f, const Interval& iv, const QuadratureConfig& cfg = {});

/// Tanh-sinh on a finite interval with endpoint distances passed through.
IntegralResult integrate_de(const GapIntegrand& f, double a, double b, const QuadratureConfig& cfg = {});

/// Globally adaptive G7/K15 on a finite interval.
IntegralResult integrate_gk(const Integrand1d& f, double a, double b, const QuadratureConfig& cfg = {});

/// Nodes and weights of the n-point Gauss-Laguerre rule for weight e^{-x}.
/// log_weights holds log w_i, accurate even where w_i underflows.
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> log_weights;
};
const GaussLaguerreRule& gauss_laguerre_rule(int n);

/// Integral over (0, inf) of e^{-x} g(x). The error estimate compares the
/// n-point and n/2-point rules.
IntegralResult integrate_gauss_laguerre(const Integrand1d& g, int n = 128);

/// Iterated integration over a product of intervals, outermost axis first.
/// Inner tolerances are ten times tighter per nesting level.
IntegralResult integrate_tensor(const PointIntegrand& f, const std::vector<Interval>& axes,
                                const QuadratureConfig& cfg = {});

/// Iterated tanh-sinh over a finite box with endpoint distances.
IntegralResult integrate_box(const BoxIntegrand& f, const std::vector<std::pair<double, double>>& box,
                             const QuadratureConfig& cfg = {});

/// Integral over the unit ball B^d through x_j = u_j sqrt(c[j-1]).
IntegralResult integrate_ball(const BallIntegrand& f, int d, const QuadratureConfig& cfg = {});

/// Substitution used on each axis of a Fourier integral.
///   Tanh:     x on the real line through u = tanh x in (-1, 1)
///   HalfTanh: x on the real line through u = (1 + tanh x)/2 in (0, 1)
///   Exp:      x on the real line through u = e^x, then u = v/(1 - v)
enum class FourierAxis { Tanh, HalfTanh, Exp };

/// Integral of e^{-i <xi, x>} f(x) over R^D. |xi_j| > 8 is rejected. With
/// cfg.rule == AdaptiveGK the transformed result is cross-checked against
/// GK on the truncated cube [-R, R]^D.
IntegralResult fourier_num(const std::function<double(std::span<const double>)>& f,
                           const std::vector<FourierAxis>& axes, const std::vector<double>& xi,
                           const QuadratureConfig& cfg = {});

/// Integral of F(xi) conj(G(xi)) over R^dims. The box half-width R starts
/// at cfg.truncation_radius and grows until C e^{-pi R/4} < abs_tol/10,
/// with C = |F(0) G(0)|; nodes outside the box are dropped.
IntegralResult parseval_lhs(const PointIntegrand& F, const PointIntegrand& G, int dims,
                            const QuadratureConfig& cfg = {});

/// The half-width parseval_lhs would use for the given envelope constant.
double parseval_radius(double envelope, double abs_tol, double start);

}  // namespace conefourier
