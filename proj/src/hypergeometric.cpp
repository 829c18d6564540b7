#include "conefourier/hypergeometric.hpp"

#include <cmath>
#include <sstream>

#include "conefourier/errors.hpp"

namespace conefourier {

int termination_index(const HyperParams& p) {
  int best = -1;
  for (const Cx& a : p.numerator) {
    if (!is_nonpositive_integer(a)) continue;
    const int m = static_cast<int>(-std::round(a.real()));
    if (best < 0 || m < best) best = m;
  }
  return best;
}

Cx phyper_terminating(const HyperParams& p) {
  const int n = termination_index(p);
  if (n < 0) throw DomainError("phyper_terminating: no numerator parameter is a nonpositive integer");
  for (const Cx& b : p.denominator) {
    if (!is_nonpositive_integer(b)) continue;
    const int m = static_cast<int>(-std::round(b.real()));
    if (m < n) {
      std::ostringstream os;
      os << "phyper_terminating: denominator parameter " << b.real()
         << " vanishes before the series terminates at term " << n;
      throw DomainError(os.str());
    }
  }
  std::vector<CxL> num, den;
  for (const Cx& a : p.numerator) num.emplace_back(a.real(), a.imag());
  for (const Cx& b : p.denominator) den.emplace_back(b.real(), b.imag());
  const CxL sum = terminating_sum(num, den, CxL(p.argument.real(), p.argument.imag()), n);
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Alternating terms can exceed the sum by many orders of magnitude, so the
// finite sum is accumulated in extended precision.
CxL terminating_sum(const std::vector<CxL>& num, const std::vector<CxL>& den, CxL z, int n) {
  CxL term = 1.0L;
  CxL sum = 1.0L;
  for (int j = 0; j < n; ++j) {
    const long double dj = j;
    CxL ratio = z / (dj + 1.0L);
    for (const CxL& a : num) ratio *= a + dj;
    for (const CxL& b : den) ratio /= b + dj;
    term *= ratio;
    sum += term;
  }
  return sum;
}

SeriesResult phyper_convergent(const HyperParams& p, double tol, int max_terms) {
  if (p.numerator.size() > p.denominator.size() + 1) {
    throw DomainError("phyper_convergent: requires p <= q + 1");
  }
  if (std::abs(p.argument) >= 1.0) {
    throw DomainError("phyper_convergent: requires |x| < 1");
  }
  for (const Cx& b : p.denominator) {
    if (is_nonpositive_integer(b)) throw DomainError("phyper_convergent: nonpositive-integer denominator");
  }
  Cx term = 1.0;
  Cx sum = 1.0;
  int small = 0;
  double tail = 0.0;
  for (int j = 0; j < max_terms; ++j) {
    const double dj = j;
    Cx ratio = p.argument / (dj + 1.0);
    for (const Cx& a : p.numerator) ratio *= a + dj;
    for (const Cx& b : p.denominator) ratio /= b + dj;
    term *= ratio;
    sum += term;
    if (term == 0.0) return {sum, 0.0, j + 2};
    if (std::abs(term) < tol * std::abs(sum)) {
      tail += std::abs(term);
      if (++small == 3) return {sum, tail + tol * std::abs(sum), j + 2};
    } else {
      small = 0;
      tail = 0.0;
    }
  }
  throw ConvergenceError("phyper_convergent: no convergence within the term limit", sum.real(),
                         sum.imag(), std::abs(term));
}

}  // namespace conefourier
