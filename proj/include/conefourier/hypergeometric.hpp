#pragma once

// Generalized hypergeometric series pFq(a_1..a_p; b_1..b_q; x).

#include <complex>
#include <vector>

#include "conefourier/kernel.hpp"

namespace conefourier {

struct HyperParams {
  std::vector<Cx> numerator;
  std::vector<Cx> denominator;
  Cx argument{0.0, 0.0};
};

/// Finite sum for a series with a nonpositive-integer numerator parameter.
/// Valid for any argument. Throws DomainError when nothing terminates the
/// series or a denominator vanishes before the last term.
Cx phyper_terminating(const HyperParams& p);

using CxL = std::complex<long double>;

/// Terms 0..n of a series whose parameters are already in extended
/// precision. No pole checks.
CxL terminating_sum(const std::vector<CxL>& num, const std::vector<CxL>& den, CxL z, int n);

/// Number of the last term of a terminating series (smallest |a_i| among
/// nonpositive-integer numerators), or -1 when none terminates.
int termination_index(const HyperParams& p);

struct SeriesResult {
  Cx value;
  double error_estimate = 0.0;
  int terms = 0;
};

/// Summation inside the unit disk. Stops once three consecutive terms fall
/// below tol * |partial sum|. DomainError for |x| >= 1 or p > q + 1,
/// ConvergenceError after max_terms.
SeriesResult phyper_convergent(const HyperParams& p, double tol = 1e-15, int max_terms = 100000);

}  // namespace conefourier
