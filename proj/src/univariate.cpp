#include "conefourier/univariate.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "conefourier/errors.hpp"
#include "conefourier/hypergeometric.hpp"

namespace conefourier {
namespace {

void require_degree(int n, const char* fn) {
  if (n < 0) throw DomainError(std::string(fn) + ": degree must be nonnegative");
}

void require_mu(double mu, const char* fn) {
  if (!(mu > -0.5)) {
    std::ostringstream os;
    os << fn << ": requires mu > -1/2, got mu = " << mu;
    throw DomainError(os.str());
  }
  if (mu == 0.0) throw DomainError(std::string(fn) + ": mu = 0 is excluded (the normalization degenerates)");
}

void require_gt_minus_one(double v, const char* name, const char* fn) {
  if (!(v > -1.0)) {
    std::ostringstream os;
    os << fn << ": requires " << name << " > -1, got " << v;
    throw DomainError(os.str());
  }
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double gegenbauer(int n, double mu, double x) {
  require_degree(n, "gegenbauer");
  require_mu(mu, "gegenbauer");
  if (x < 0.0) return sign_pow(n) * gegenbauer(n, mu, -x);
  const HyperParams hp{{Cx(-n), Cx(n + 2.0 * mu)}, {Cx(mu + 0.5)}, Cx((1.0 - x) / 2.0)};
  return pochhammer(2.0 * mu, n) / std::exp(log_factorial(n)) * phyper_terminating(hp).real();
}

double gegenbauer_norm(int n, double mu) {
  require_degree(n, "gegenbauer_norm");
  require_mu(mu, "gegenbauer_norm");
  LogAbs h = log_pochhammer(2.0 * mu, n);
  h *= log_gamma_signed(mu + 0.5);
  h *= LogAbs{0.5 * std::log(std::numbers::pi), 1};
  h /= LogAbs{log_factorial(n), 1};
  h /= LogAbs::of(n + mu);
  h /= log_gamma_signed(mu);
  return h.value();
}

double laguerre(int n, double alpha, double t) {
  require_degree(n, "laguerre");
  require_gt_minus_one(alpha, "alpha", "laguerre");
  const HyperParams hp{{Cx(-n)}, {Cx(alpha + 1.0)}, Cx(t)};
  return pochhammer(alpha + 1.0, n) / std::exp(log_factorial(n)) * phyper_terminating(hp).real();
}

double laguerre_norm(int n, double alpha) {
  require_degree(n, "laguerre_norm");
  require_gt_minus_one(alpha, "alpha", "laguerre_norm");
  return (log_gamma_signed(alpha + n + 1.0) / LogAbs{log_factorial(n), 1}).value();
}

double jacobi(int n, double alpha, double beta, double t) {
  require_degree(n, "jacobi");
  require_gt_minus_one(alpha, "alpha", "jacobi");
  require_gt_minus_one(beta, "beta", "jacobi");
  if (t < 0.0) return sign_pow(n) * jacobi(n, beta, alpha, -t);
  const HyperParams hp{{Cx(-n), Cx(n + alpha + beta + 1.0)}, {Cx(alpha + 1.0)}, Cx((1.0 - t) / 2.0)};
  return pochhammer(alpha + 1.0, n) / std::exp(log_factorial(n)) * phyper_terminating(hp).real();
}

double jacobi_norm(int n, double alpha, double beta) {
  require_degree(n, "jacobi_norm");
  require_gt_minus_one(alpha, "alpha", "jacobi_norm");
  require_gt_minus_one(beta, "beta", "jacobi_norm");
  LogAbs h{(alpha + beta + 1.0) * std::numbers::ln2, 1};
  h *= log_gamma_signed(n + alpha + 1.0);
  h *= log_gamma_signed(n + beta + 1.0);
  if (n == 0) {
    h /= log_gamma_signed(alpha + beta + 2.0);
  } else {
    h /= LogAbs::of(2.0 * n + alpha + beta + 1.0);
    h /= log_gamma_signed(n + alpha + beta + 1.0);
    h /= LogAbs{log_factorial(n), 1};
  }
  return h.value();
}

Cx continuous_hahn(int k, Cx x, Cx a, Cx b, Cx c, Cx d) {
  require_degree(k, "continuous_hahn");
  if (k == 0) return 1.0;
  const HyperParams hp{{Cx(-k), static_cast<double>(k) + a + b + c + d - 1.0, a + kI * x}, {a + c, a + d}, Cx(1.0)};
  const Cx sum = phyper_terminating(hp);
  Cx ik = 1.0;
  for (int i = 0; i < k; ++i) ik *= kI;
  return ik * pochhammer(a + c, k) * pochhammer(a + d, k) / std::exp(log_factorial(k)) * sum;
}

Cx continuous_hahn_real(int k, long double x, long double a, long double b, long double c, long double d) {
  require_degree(k, "continuous_hahn");
  if (k == 0) return 1.0;
  for (long double den : {a + c, a + d}) {
    if (den <= 0.0L && den == std::round(den) && -den < k) {
      throw DomainError("continuous_hahn: denominator parameter vanishes before the series terminates");
    }
  }
  const CxL sum = terminating_sum({CxL(-k), CxL(k + a + b + c + d - 1.0L), CxL(a, x)}, {CxL(a + c), CxL(a + d)}, 1.0L, k);
  long double pre = 1.0L;
  for (int i = 0; i < k; ++i) pre *= (a + c + i) * (a + d + i) / (i + 1.0L);
  CxL ik = 1.0L;
  for (int i = 0; i < k; ++i) ik *= CxL(0.0L, 1.0L);
  const CxL v = ik * pre * sum;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace conefourier
