#pragma once

// Closed-form Fourier transforms of the ball and cone functions, and the
// two Parseval-derived function families (A: Laguerre cone, B: Jacobi cone).
//
// Axis indices are 0-based throughout: axis i of a d-dimensional multi-index
// corresponds to the factor with r = d - 1 - i trailing dimensions.

#include <span>
#include <vector>

#include "conefourier/kernel.hpp"
#include "conefourier/multivariate.hpp"

namespace conefourier {

/// prod_i sech^2(x_i)^(a + r_i/4) P_k^mu(v_1, ..., v_d) with
/// v_i = tanh x_i sqrt(sech^2 x_1 ... sech^2 x_{i-1}).
double f_d(std::span<const double> x, const MultiIndex& k, double a, double mu);

/// f_d peeling off the first coordinate at each step.
double f_d_via_g1(std::span<const double> x, const MultiIndex& k, double a, double mu);

/// f_d peeling off the last coordinate at each step.
double f_d_via_g2(std::span<const double> x, const MultiIndex& k, double a, double mu);

struct TransformParamsLaguerre {
  double a;
  double b;
  LaguerreConeParams cone;
  /// Throws DomainError unless a > 0, b > 0 and the cone parameters are valid.
  void validate() const;
};

struct TransformParamsJacobi {
  double a;
  double b;
  double c;
  JacobiConeParams cone;
  void validate() const;
};

/// exp(-e^t/2 + (b + |k|) t) L_{n-|k|}^{2|k|+2mu+beta+d-1}(e^t) f_d(x; k, a, mu).
double g_laguerre(double t, std::span<const double> x, const MultiIndex& k, int n, const TransformParamsLaguerre& p);

/// 2^{-|k|} (1 + tanh t)^{b+|k|} (1 - tanh t)^c P_{n-|k|}^{(2|k|+2mu+beta+d-1, gamma)}(-tanh t) f_d(x; k, a, mu).
double g_jacobi(double t, std::span<const double> x, const MultiIndex& k, int n, const TransformParamsJacobi& p);

/// One-axis factor of the ball transform: a Beta function times a
/// terminating 3F2 at unit argument.
Cx theta_hyper(int axis, double a, double mu, const MultiIndex& k, double xi);

/// The same factor written with a continuous Hahn polynomial.
Cx theta_hahn(int axis, double a, double mu, const MultiIndex& k, double xi);

/// 2F1(-(n-|k|), b+|k|-i xi; 2|k|+2mu+beta+d; 2).
Cx lambda_factor(int n, const MultiIndex& k, double b, double mu, double beta, double xi);

/// 3F2(-(n-|k|), n+|k|+2mu+beta+gamma+d, |k|+b-i xi/2; 2|k|+2mu+beta+d, |k|+b+c; 1).
Cx xi_factor(int n, const MultiIndex& k, double b, double c, double mu, double beta, double gamma, double xi);

/// Fourier transform of f_d at xi (d frequencies).
Cx ft_f_closed(const MultiIndex& k, double a, double mu, std::span<const double> xi);

/// Fourier transform of g_laguerre at xi (d + 1 frequencies, the last for t).
Cx ft_g_laguerre_closed(const MultiIndex& k, int n, const TransformParamsLaguerre& p, std::span<const double> xi);

/// Fourier transform of g_jacobi at xi (d + 1 frequencies, the last for t).
Cx ft_g_jacobi_closed(const MultiIndex& k, int n, const TransformParamsJacobi& p, std::span<const double> xi);

/// Parameter pairs of the A (c unused) and B families, with the couplings
/// mu = |a| - 1/2, beta = |b| - 2|a| - d + 1, gamma = |c| - 1.
class ParsevalParams {
 public:
  static ParsevalParams a_family(int d, double a1, double a2, double b1, double b2);
  static ParsevalParams b_family(int d, double a1, double a2, double b1, double b2, double c1, double c2);

  int d() const { return d_; }
  bool has_c() const { return has_c_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double b1() const { return b1_; }
  double b2() const { return b2_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double abs_a() const { return a1_ + a2_; }
  double abs_b() const { return b1_ + b2_; }
  double abs_c() const { return c1_ + c2_; }
  double mu() const { return abs_a() - 0.5; }
  double beta() const { return abs_b() - 2.0 * abs_a() - d_ + 1.0; }
  double gamma() const { return abs_c() - 1.0; }

  /// Parameters with the two members of every pair exchanged.
  ParsevalParams swapped() const;

  /// Throws DomainError if manually supplied cone parameters differ from the
  /// coupled values (tolerance 1e-12).
  void require_matching(double mu, double beta) const;
  void require_matching(double mu, double beta, double gamma) const;

 private:
  ParsevalParams(int d, double a1, double a2, double b1, double b2, double c1, double c2, bool has_c);
  int d_;
  double a1_, a2_, b1_, b2_, c1_, c2_;
  bool has_c_;
};

Cx a_family(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp);
Cx a_family_hahn(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp);
Cx b_family(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp);
Cx b_family_hahn(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp);

/// Diagonal value of the A-family orthogonality integral (the weighted
/// frequency-space integral for (n, k) = (m, l)).
double a_norm_rhs(int n, const MultiIndex& k, const ParsevalParams& pp);

/// Diagonal value of the B-family orthogonality integral.
double b_norm_rhs(int n, const MultiIndex& k, const ParsevalParams& pp);

}  // namespace conefourier
