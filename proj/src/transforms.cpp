#include "conefourier/transforms.hpp"

#include <cmath>
#include <sstream>

#include "conefourier/errors.hpp"
#include "conefourier/hypergeometric.hpp"
#include "conefourier/univariate.hpp"

namespace conefourier {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kExpUnderflow = -745.0;

// log(1 + e^z) without overflow.
double log1pexp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

// log sech^2(x).
double log_sech2(double x) {
  const double ax = std::abs(x);
  return -2.0 * (ax + std::log1p(std::exp(-2.0 * ax)) - kLn2);
}

void require_ball_params(std::span<const double> x, const MultiIndex& k, double mu, const char* fn) {
  if (static_cast<int>(x.size()) != k.dim()) {
    std::ostringstream os;
    os << fn << ": expected " << k.dim() << " coordinates, got " << x.size();
    throw DomainError(os.str());
  }
  if (!(mu > -0.5) || mu == 0.0) throw DomainError(std::string(fn) + ": requires mu > -1/2 and mu != 0");
}

void require_frequencies(std::span<const double> xi, std::size_t n, const char* fn) {
  if (xi.size() != n) {
    std::ostringstream os;
    os << fn << ": expected " << n << " frequencies, got " << xi.size();
    throw DomainError(os.str());
  }
}

void require_degree(int n, const MultiIndex& k, const char* fn) {
  if (k.total() > n) throw DomainError(std::string(fn) + ": requires |k| <= n");
}

Cx pow2(Cx z) { return std::exp(z * kLn2); }

// sum_{i=1}^{d-1} i k_i (0-based components).
int weighted_index_sum(const MultiIndex& k) {
  int s = 0;
  for (int i = 1; i < k.dim(); ++i) s += i * k[i];
  return s;
}

struct AxisShape {
  double tail;  // tail(i + 1)
  double r;     // d - 1 - i
};

AxisShape axis_shape(const MultiIndex& k, int i) { return {double(k.tail(i + 1)), double(k.dim() - 1 - i)}; }

void require_axis(int axis, const MultiIndex& k, const char* fn) {
  if (axis < 0 || axis >= k.dim()) throw DomainError(std::string(fn) + ": axis out of range");
}

// Per-axis product shared by the A and B families, hypergeometric form.
Cx family_axes_hyper(std::span<const Cx> x, const MultiIndex& k, const ParsevalParams& pp) {
  const double abs_a = pp.abs_a();
  Cx prod{1.0, 0.0};
  for (int i = 0; i < k.dim(); ++i) {
    const auto [tail, r] = axis_shape(k, i);
    const double alpha1 = pp.a1() + 0.5 * tail + 0.25 * r;
    const Cx z = alpha1 + 0.5 * x[i];
    const Cx w = alpha1 - 0.5 * x[i];
    const Cx f = phyper_terminating({{Cx(-k[i]), Cx(k[i] + 2.0 * (tail + abs_a + 0.5 * (r - 1.0))), z},
                                     {Cx(tail + abs_a + 0.5 * r), Cx(tail + 2.0 * pp.a1() + 0.5 * r)},
                                     Cx(1.0)});
    prod *= gamma_cx(w) * gamma_cx(z) * f;
  }
  return prod;
}

// The same product with continuous Hahn polynomials.
Cx family_axes_hahn(std::span<const Cx> x, const MultiIndex& k, const ParsevalParams& pp) {
  const double abs_a = pp.abs_a();
  Cx prod{1.0, 0.0};
  for (int i = 0; i < k.dim(); ++i) {
    const auto [tail, r] = axis_shape(k, i);
    const double alpha1 = pp.a1() + 0.5 * tail + 0.25 * r;
    const double alpha2 = pp.a2() + 0.5 * tail + 0.25 * r;
    const Cx z = alpha1 + 0.5 * x[i];
    const Cx w = alpha1 - 0.5 * x[i];
    const Cx scale = std::exp(log_factorial(k[i])) * std::pow(kI, -k[i]) /
                     (pochhammer(tail + 2.0 * pp.a1() + 0.5 * r, k[i]) * pochhammer(tail + abs_a + 0.5 * r, k[i]));
    const Cx p = continuous_hahn(k[i], -kI * x[i] / 2.0, alpha1, alpha2, alpha2, alpha1);
    prod *= scale * p * gamma_cx(w) * gamma_cx(z);
  }
  return prod;
}

void require_family_args(std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp,
                         bool need_c, const char* fn) {
  if (k.dim() != pp.d()) throw DomainError(std::string(fn) + ": multi-index dimension differs from d");
  if (static_cast<int>(x.size()) != k.dim()) throw DomainError(std::string(fn) + ": expected d spatial arguments");
  if (need_c && !pp.has_c()) throw DomainError(std::string(fn) + ": parameters carry no c pair");
  require_degree(n, k, fn);
}

// log of (2 pi)^{d+1} h_k prod_i (k_i!)^2 Gamma(tail+2a1+r/2) Gamma(tail+2a2+r/2) / ((2 tail + 2|a| + r - 1)_{k_i})^2
// times 2^{-2d|a| - d(d-5)/2 - 2 sum tail(i+1)}, the part shared by both families.
LogAbs family_norm_common(const MultiIndex& k, const ParsevalParams& pp) {
  const int d = k.dim();
  const double abs_a = pp.abs_a();
  double log2_exp = -2.0 * d * abs_a - 0.5 * d * (d - 5.0);
  for (int i = 0; i < d; ++i) log2_exp -= 2.0 * k.tail(i + 1);
  LogAbs v{(d + 1) * std::log(2.0 * std::numbers::pi) + log2_exp * kLn2, 1};
  v *= LogAbs::of(ball_norm(k, pp.mu()));
  for (int i = 0; i < d; ++i) {
    const auto [tail, r] = axis_shape(k, i);
    v *= LogAbs{2.0 * log_factorial(k[i]), 1};
    v *= log_gamma_signed(tail + 2.0 * pp.a1() + 0.5 * r);
    v *= log_gamma_signed(tail + 2.0 * pp.a2() + 0.5 * r);
    const LogAbs q = log_pochhammer(2.0 * tail + 2.0 * abs_a + r - 1.0, k[i]);
    v /= q * q;
  }
  return v;
}

}  // namespace

double f_d(std::span<const double> x, const MultiIndex& k, double a, double mu) {
  require_ball_params(x, k, mu, "f_d");
  // Each ball factor c_i^{k_i/2} C(x_i / sqrt(c_i)) is evaluated as
  // sech^{k_i}-powers times C(tanh x_i), which stays exact where the
  // partial complement c_i = prod_{j<i} sech^2 x_j underflows.
  double log_scale = 0.0;
  double log_c = 0.0;
  double prod = 1.0;
  for (int i = 0; i < k.dim(); ++i) {
    const auto [tail, r] = axis_shape(k, i);
    const double ls = log_sech2(x[i]);
    log_scale += (a + 0.25 * r) * ls + 0.5 * k[i] * log_c;
    log_c += ls;
    if (k[i] > 0) prod *= gegenbauer(k[i], mu + tail + 0.5 * r, std::tanh(x[i]));
  }
  if (prod == 0.0 || log_scale < kExpUnderflow) return 0.0;
  return prod * std::exp(log_scale);
}

double f_d_via_g1(std::span<const double> x, const MultiIndex& k, double a, double mu) {
  require_ball_params(x, k, mu, "f_d_via_g1");
  const int d = k.dim();
  if (d == 1) return std::exp(a * log_sech2(x[0])) * gegenbauer(k[0], mu, std::tanh(x[0]));
  const double tail = k.tail(1);
  const double head = std::exp((a + 0.5 * tail + 0.25 * (d - 1)) * log_sech2(x[0])) *
                      gegenbauer(k[0], tail + mu + 0.5 * (d - 1), std::tanh(x[0]));
  const MultiIndex rest(std::vector<int>(k.components().begin() + 1, k.components().end()));
  return head * f_d_via_g1(x.subspan(1), rest, a, mu);
}

double f_d_via_g2(std::span<const double> x, const MultiIndex& k, double a, double mu) {
  require_ball_params(x, k, mu, "f_d_via_g2");
  const int d = k.dim();
  const int kd = k[d - 1];
  const double last = std::exp(a * log_sech2(x[d - 1])) * gegenbauer(kd, mu, std::tanh(x[d - 1]));
  if (d == 1) return last;
  const MultiIndex rest(std::vector<int>(k.components().begin(), k.components().end() - 1));
  return last * f_d_via_g2(x.first(d - 1), rest, a + 0.5 * kd + 0.25, mu + kd + 0.5);
}

void TransformParamsLaguerre::validate() const {
  cone.validate();
  if (!(a > 0.0)) throw DomainError("TransformParamsLaguerre: requires a > 0");
  if (!(b > 0.0)) throw DomainError("TransformParamsLaguerre: requires b > 0");
  if (cone.mu == 0.0) throw DomainError("TransformParamsLaguerre: mu = 0 is excluded");
}

void TransformParamsJacobi::validate() const {
  cone.validate();
  if (!(a > 0.0)) throw DomainError("TransformParamsJacobi: requires a > 0");
  if (!(b > 0.0)) throw DomainError("TransformParamsJacobi: requires b > 0");
  if (!(c > 0.0)) throw DomainError("TransformParamsJacobi: requires c > 0");
  if (cone.mu == 0.0) throw DomainError("TransformParamsJacobi: mu = 0 is excluded");
}

double g_laguerre(double t, std::span<const double> x, const MultiIndex& k, int n, const TransformParamsLaguerre& p) {
  p.validate();
  if (k.dim() != p.cone.d) throw DomainError("g_laguerre: multi-index dimension differs from d");
  require_degree(n, k, "g_laguerre");
  const int m = k.total();
  const double log_env = -0.5 * std::exp(t) + (p.b + m) * t;
  if (log_env < kExpUnderflow) return 0.0;
  const double alpha = 2.0 * m + 2.0 * p.cone.mu + p.cone.beta + p.cone.d - 1.0;
  const double f = f_d(x, k, p.a, p.cone.mu);
  if (f == 0.0) return 0.0;
  return std::exp(log_env) * laguerre(n - m, alpha, std::exp(t)) * f;
}

double g_jacobi(double t, std::span<const double> x, const MultiIndex& k, int n, const TransformParamsJacobi& p) {
  p.validate();
  if (k.dim() != p.cone.d) throw DomainError("g_jacobi: multi-index dimension differs from d");
  require_degree(n, k, "g_jacobi");
  const int m = k.total();
  const double log_plus = kLn2 - log1pexp(-2.0 * t);   // log(1 + tanh t)
  const double log_minus = kLn2 - log1pexp(2.0 * t);   // log(1 - tanh t)
  const double log_env = (p.b + m) * log_plus + p.c * log_minus - m * kLn2;
  if (log_env < kExpUnderflow) return 0.0;
  const double alpha = 2.0 * m + 2.0 * p.cone.mu + p.cone.beta + p.cone.d - 1.0;
  const double f = f_d(x, k, p.a, p.cone.mu);
  if (f == 0.0) return 0.0;
  return std::exp(log_env) * jacobi(n - m, alpha, p.cone.gamma, -std::tanh(t)) * f;
}

Cx theta_hyper(int axis, double a, double mu, const MultiIndex& k, double xi) {
  require_axis(axis, k, "theta_hyper");
  const auto [tail, r] = axis_shape(k, axis);
  const double alpha = a + 0.5 * tail + 0.25 * r;
  const Cx z = alpha + 0.5 * kI * xi;
  const Cx w = alpha - 0.5 * kI * xi;
  const int ki = k[axis];
  const Cx f = phyper_terminating({{Cx(-ki), Cx(ki + 2.0 * (tail + mu + 0.5 * r)), z},
                                   {Cx(tail + mu + 0.5 * (r + 1.0)), Cx(tail + 2.0 * a + 0.5 * r)},
                                   Cx(1.0)});
  return beta_cx(z, w) * f;
}

Cx theta_hahn(int axis, double a, double mu, const MultiIndex& k, double xi) {
  require_axis(axis, k, "theta_hahn");
  const auto [tail, r] = axis_shape(k, axis);
  const long double alpha = a + 0.5L * tail + 0.25L * r;
  const long double beta = mu - static_cast<long double>(a) + 0.5L * (tail + 1.0L) + 0.25L * r;
  const int ki = k[axis];
  const double alpha_d = a + 0.5 * tail + 0.25 * r;
  const Cx z = alpha_d + 0.5 * kI * xi;
  const Cx w = alpha_d - 0.5 * kI * xi;
  const Cx scale = std::exp(log_factorial(ki)) * std::pow(kI, -ki) /
                   (pochhammer(tail + mu + 0.5 * (r + 1.0), ki) * pochhammer(tail + 2.0 * a + 0.5 * r, ki));
  return scale * beta_cx(z, w) * continuous_hahn_real(ki, 0.5L * xi, alpha, beta, beta, alpha);
}

Cx lambda_factor(int n, const MultiIndex& k, double b, double mu, double beta, double xi) {
  require_degree(n, k, "lambda_factor");
  const int m = k.total();
  const int d = k.dim();
  return phyper_terminating({{Cx(-(n - m)), Cx(b + m, -xi)}, {Cx(2.0 * m + 2.0 * mu + beta + d)}, Cx(2.0)});
}

Cx xi_factor(int n, const MultiIndex& k, double b, double c, double mu, double beta, double gamma, double xi) {
  require_degree(n, k, "xi_factor");
  const int m = k.total();
  const int d = k.dim();
  return phyper_terminating({{Cx(-(n - m)), Cx(n + m + 2.0 * mu + beta + gamma + d), Cx(m + b, -0.5 * xi)},
                             {Cx(2.0 * m + 2.0 * mu + beta + d), Cx(m + b + c)},
                             Cx(1.0)});
}

Cx ft_f_closed(const MultiIndex& k, double a, double mu, std::span<const double> xi) {
  require_frequencies(xi, k.dim(), "ft_f_closed");
  if (!(a > 0.0)) throw DomainError("ft_f_closed: requires a > 0");
  if (!(mu > -0.5) || mu == 0.0) throw DomainError("ft_f_closed: requires mu > -1/2 and mu != 0");
  const int d = k.dim();
  Cx v = pow2(Cx(2.0 * d * a + 0.25 * d * (d - 5.0) + weighted_index_sum(k)));
  for (int i = 0; i < d; ++i) {
    const auto [tail, r] = axis_shape(k, i);
    v *= pochhammer(2.0 * (tail + mu + 0.5 * r), k[i]) / std::exp(log_factorial(k[i]));
    v *= theta_hyper(i, a, mu, k, xi[i]);
  }
  return v;
}

Cx ft_g_laguerre_closed(const MultiIndex& k, int n, const TransformParamsLaguerre& p, std::span<const double> xi) {
  p.validate();
  if (k.dim() != p.cone.d) throw DomainError("ft_g_laguerre_closed: multi-index dimension differs from d");
  require_degree(n, k, "ft_g_laguerre_closed");
  const int d = k.dim();
  require_frequencies(xi, d + 1, "ft_g_laguerre_closed");
  const int m = k.total();
  const int big_n = n - m;
  const double mu = p.cone.mu;
  const double beta = p.cone.beta;
  const Cx z(p.b + m, -xi[d]);
  Cx v = ft_f_closed(k, p.a, mu, xi.first(d));
  v *= pow2(z) * pochhammer(2.0 * m + 2.0 * mu + beta + d, big_n) * gamma_cx(z) / std::exp(log_factorial(big_n));
  v *= lambda_factor(n, k, p.b, mu, beta, xi[d]);
  return v;
}

Cx ft_g_jacobi_closed(const MultiIndex& k, int n, const TransformParamsJacobi& p, std::span<const double> xi) {
  p.validate();
  if (k.dim() != p.cone.d) throw DomainError("ft_g_jacobi_closed: multi-index dimension differs from d");
  require_degree(n, k, "ft_g_jacobi_closed");
  const int d = k.dim();
  require_frequencies(xi, d + 1, "ft_g_jacobi_closed");
  const int m = k.total();
  const int big_n = n - m;
  const double mu = p.cone.mu;
  const double beta = p.cone.beta;
  const double t = xi[d];
  Cx v = ft_f_closed(k, p.a, mu, xi.first(d));
  v *= std::exp((p.b + p.c - 1.0) * kLn2) * pochhammer(2.0 * m + 2.0 * mu + beta + d, big_n);
  v *= gamma_cx(Cx(p.b + m, -0.5 * t)) * gamma_cx(Cx(p.c, 0.5 * t)) /
       (std::exp(log_factorial(big_n)) * gamma_cx(Cx(m + p.b + p.c)));
  v *= xi_factor(n, k, p.b, p.c, mu, beta, p.cone.gamma, t);
  return v;
}

ParsevalParams::ParsevalParams(int d, double a1, double a2, double b1, double b2, double c1, double c2, bool has_c)
    : d_(d), a1_(a1), a2_(a2), b1_(b1), b2_(b2), c1_(c1), c2_(c2), has_c_(has_c) {
  if (d < 1) throw DomainError("ParsevalParams: requires d >= 1");
  if (!(a1 > 0.0 && a2 > 0.0 && b1 > 0.0 && b2 > 0.0)) {
    throw DomainError("ParsevalParams: requires a1, a2, b1, b2 > 0");
  }
  if (has_c && !(c1 > 0.0 && c2 > 0.0)) throw DomainError("ParsevalParams: requires c1, c2 > 0");
  if (mu() == 0.0) throw DomainError("ParsevalParams: |a| = 1/2 gives the excluded mu = 0");
  if (!(beta() > -d)) throw DomainError("ParsevalParams: coupled beta = |b| - 2|a| - d + 1 must exceed -d");
}

ParsevalParams ParsevalParams::a_family(int d, double a1, double a2, double b1, double b2) {
  return {d, a1, a2, b1, b2, 0.0, 0.0, false};
}

ParsevalParams ParsevalParams::b_family(int d, double a1, double a2, double b1, double b2, double c1, double c2) {
  return {d, a1, a2, b1, b2, c1, c2, true};
}

ParsevalParams ParsevalParams::swapped() const { return {d_, a2_, a1_, b2_, b1_, c2_, c1_, has_c_}; }

void ParsevalParams::require_matching(double mu_in, double beta_in) const {
  constexpr double tol = 1e-12;
  if (std::abs(mu_in - mu()) > tol) {
    std::ostringstream os;
    os << "ParsevalParams: mu = " << mu_in << " does not match |a| - 1/2 = " << mu();
    throw DomainError(os.str());
  }
  if (std::abs(beta_in - beta()) > tol) {
    std::ostringstream os;
    os << "ParsevalParams: beta = " << beta_in << " does not match |b| - 2|a| - d + 1 = " << beta();
    throw DomainError(os.str());
  }
}

void ParsevalParams::require_matching(double mu_in, double beta_in, double gamma_in) const {
  require_matching(mu_in, beta_in);
  if (!has_c_) throw DomainError("ParsevalParams: gamma given but no c pair");
  if (std::abs(gamma_in - gamma()) > 1e-12) {
    std::ostringstream os;
    os << "ParsevalParams: gamma = " << gamma_in << " does not match |c| - 1 = " << gamma();
    throw DomainError(os.str());
  }
}

Cx a_family(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp) {
  require_family_args(x, k, n, pp, false, "a_family");
  const int m = k.total();
  const Cx lam = phyper_terminating({{Cx(-(n - m)), pp.b1() + m - t}, {Cx(2.0 * m + pp.abs_b())}, Cx(2.0)});
  return lam * pochhammer(pp.b1() - t, m) * family_axes_hyper(x, k, pp);
}

Cx a_family_hahn(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp) {
  require_family_args(x, k, n, pp, false, "a_family_hahn");
  const int m = k.total();
  const Cx lam = phyper_terminating({{Cx(-(n - m)), pp.b1() + m - t}, {Cx(2.0 * m + pp.abs_b())}, Cx(2.0)});
  return lam * pochhammer(pp.b1() - t, m) * family_axes_hahn(x, k, pp);
}

Cx b_family(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp) {
  require_family_args(x, k, n, pp, true, "b_family");
  const int m = k.total();
  const Cx xi = phyper_terminating(
      {{Cx(-(n - m)), Cx(n + m + pp.abs_b() + pp.abs_c() - 1.0), m + pp.b1() - 0.5 * t},
       {Cx(2.0 * m + pp.abs_b()), Cx(m + pp.b1() + pp.c1())},
       Cx(1.0)});
  return xi * pochhammer(pp.b1() - 0.5 * t, m) * family_axes_hyper(x, k, pp);
}

Cx b_family_hahn(Cx t, std::span<const Cx> x, const MultiIndex& k, int n, const ParsevalParams& pp) {
  require_family_args(x, k, n, pp, true, "b_family_hahn");
  const int m = k.total();
  const int big_n = n - m;
  const Cx scale = std::exp(log_factorial(big_n)) * std::pow(kI, -big_n) * pochhammer(pp.b1() - 0.5 * t, m) /
                   (pochhammer(2.0 * m + pp.abs_b(), big_n) * pochhammer(m + pp.b1() + pp.c1(), big_n));
  const Cx p = continuous_hahn(big_n, kI * t / 2.0, m + pp.b1(), pp.c2(), m + pp.b2(), pp.c1());
  return scale * p * family_axes_hahn(x, k, pp);
}

double a_norm_rhs(int n, const MultiIndex& k, const ParsevalParams& pp) {
  if (k.dim() != pp.d()) throw DomainError("a_norm_rhs: multi-index dimension differs from d");
  require_degree(n, k, "a_norm_rhs");
  const int m = k.total();
  const int big_n = n - m;
  LogAbs v = family_norm_common(k, pp);
  v *= LogAbs{(-2.0 * m - pp.abs_b()) * kLn2, 1};
  v *= log_gamma_signed(pp.abs_b() + n + m);
  v *= LogAbs{log_factorial(big_n), 1};
  const LogAbs q = log_pochhammer(2.0 * m + pp.abs_b(), big_n);
  v /= q * q;
  return v.value();
}

double b_norm_rhs(int n, const MultiIndex& k, const ParsevalParams& pp) {
  if (k.dim() != pp.d()) throw DomainError("b_norm_rhs: multi-index dimension differs from d");
  if (!pp.has_c()) throw DomainError("b_norm_rhs: parameters carry no c pair");
  require_degree(n, k, "b_norm_rhs");
  const int m = k.total();
  const int big_n = n - m;
  const double bb = pp.abs_b();
  const double cc = pp.abs_c();
  LogAbs v = family_norm_common(k, pp);
  v *= LogAbs{kLn2, 1};
  v *= LogAbs{log_factorial(big_n), 1};
  v *= log_gamma_signed(n + m + bb);
  v *= log_gamma_signed(n - m + cc);
  v *= log_gamma_signed(m + pp.b1() + pp.c1());
  v *= log_gamma_signed(m + pp.b2() + pp.c2());
  const LogAbs q = log_pochhammer(2.0 * m + bb, big_n);
  v /= q * q;
  // (2N + x) Gamma(N + x) with x = 2m + |b| + |c| - 1; at N = 0 this is Gamma(x + 1).
  const double x = 2.0 * m + bb + cc - 1.0;
  if (big_n == 0) {
    v /= log_gamma_signed(x + 1.0);
  } else {
    v /= LogAbs::of(2.0 * big_n + x);
    v /= log_gamma_signed(big_n + x);
  }
  return v.value();
}

}  // namespace conefourier
