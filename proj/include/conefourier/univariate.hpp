#pragma once

// One-variable orthogonal polynomials (Gegenbauer, Laguerre, Jacobi,
// continuous Hahn) in hypergeometric form, and their norm constants.

#include "conefourier/kernel.hpp"

namespace conefourier {

/// C_n^{(mu)}(x) = (2mu)_n/n! 2F1(-n, n+2mu; mu+1/2; (1-x)/2).
/// Requires mu > -1/2 and mu != 0.
double gegenbauer(int n, double mu, double x);

/// h_n^mu = integral of (1-x^2)^{mu-1/2} C_n^{(mu)}(x)^2 over [-1, 1].
double gegenbauer_norm(int n, double mu);

/// L_n^alpha(t), alpha > -1.
double laguerre(int n, double alpha, double t);

/// Gamma(n+alpha+1)/n!.
double laguerre_norm(int n, double alpha);

/// P_n^{(alpha,beta)}(t), alpha, beta > -1.
double jacobi(int n, double alpha, double beta, double t);

/// Integral of (1-t)^alpha (1+t)^beta P_n^2 over [-1, 1].
double jacobi_norm(int n, double alpha, double beta);

/// Continuous Hahn polynomial p_k(x; a, b, c, d).
Cx continuous_hahn(int k, Cx x, Cx a, Cx b, Cx c, Cx d);

/// Real x and parameters, with the parameter sums of the series formed in
/// extended precision. Near-cancelling sums are sensitive to their rounding.
Cx continuous_hahn_real(int k, long double x, long double a, long double b, long double c, long double d);

}  // namespace conefourier
