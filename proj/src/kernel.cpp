#include "conefourier/kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "conefourier/errors.hpp"

namespace conefourier {
namespace {

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kLogPi = 1.14472988584940017414;
constexpr double kMaxLog = 709.78;

bool is_pole(Cx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

[[noreturn]] void throw_pole(const char* fn, Cx z) {
  std::ostringstream os;
  os << fn << ": pole at z = " << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  throw PoleError(os.str());
}

// sin(pi x) and cos(pi x) with exact argument reduction.
double sinpi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < -1.0) r += 2.0;
  if (r > 1.0) r -= 2.0;
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double cospi(double x) { return sinpi(x + 0.5); }

// sin(pi z) for complex z.
Cx sinpi_cx(Cx z) {
  const double py = std::numbers::pi * z.imag();
  return {sinpi(z.real()) * std::cosh(py), cospi(z.real()) * std::sinh(py)};
}

// Lanczos log Gamma, Re z >= 1/2.
Cx lanczos_log_gamma(Cx z) {
  Cx ser = kLanczos[0];
  for (std::size_t j = 1; j < kLanczos.size(); ++j) {
    ser += kLanczos[j] / (z + static_cast<double>(j));
  }
  const Cx t = z + (kLanczosG + 0.5);
  return (z + 0.5) * std::log(t) - t + kLogSqrt2Pi + std::log(ser) - std::log(z);
}

// Branch of log sin(pi z) analytic in the upper half plane, Im z >= 0.
Cx log_sinpi_upper(Cx z) {
  const double x = z.real();
  const double y = z.imag();
  const double m = std::exp(-2.0 * std::numbers::pi * y);
  const Cx w{m * cospi(2.0 * x), m * sinpi(2.0 * x)};
  return Cx{std::numbers::pi * y - std::numbers::ln2,
            -std::numbers::pi * x + 0.5 * std::numbers::pi} +
         std::log(1.0 - w);
}

Cx log_gamma_upper(Cx z) {
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  return kLogPi - log_sinpi_upper(z) - lanczos_log_gamma(1.0 - z);
}

}  // namespace

bool is_nonpositive_integer(Cx z, double tol) {
  if (std::abs(z.imag()) >= tol) return false;
  return is_nonpositive_integer(z.real(), tol);
}

bool is_nonpositive_integer(double x, double tol) {
  const double r = std::round(x);
  return r <= 0.0 && std::abs(x - r) < tol;
}

Cx log_gamma_cx(Cx z) {
  if (is_pole(z)) throw_pole("log_gamma_cx", z);
  if (z.imag() == 0.0 && z.real() > 0.0) return std::lgamma(z.real());
  if (z.imag() < 0.0) return std::conj(log_gamma_upper(std::conj(z)));
  return log_gamma_upper(z);
}

Cx gamma_cx(Cx z) {
  if (is_pole(z)) throw_pole("gamma_cx", z);
  if (z.imag() == 0.0) {
    const double g = std::tgamma(z.real());
    if (!std::isfinite(g)) throw OverflowError("gamma_cx: |Gamma(z)| overflows; use log_gamma_cx");
    return g;
  }
  const bool lower = z.imag() < 0.0;
  const Cx w = lower ? std::conj(z) : z;
  Cx g;
  if (w.real() >= 0.5) {
    const Cx lg = lanczos_log_gamma(w);
    if (lg.real() > kMaxLog) throw OverflowError("gamma_cx: |Gamma(z)| overflows; use log_gamma_cx");
    g = std::exp(lg);
  } else {
    const Cx lg = lanczos_log_gamma(1.0 - w);
    const Cx s = sinpi_cx(w);
    const double log_den = lg.real() + std::log(std::abs(s));
    if (kLogPi - log_den > kMaxLog) {
      throw OverflowError("gamma_cx: |Gamma(z)| overflows; use log_gamma_cx");
    }
    g = std::numbers::pi / (s * std::exp(lg));
  }
  return lower ? std::conj(g) : g;
}

Cx beta_cx(Cx a, Cx b) {
  if (is_pole(a)) throw_pole("beta_cx", a);
  if (is_pole(b)) throw_pole("beta_cx", b);
  if (is_pole(a + b)) throw_pole("beta_cx", a + b);
  const Cx l = log_gamma_cx(a) + log_gamma_cx(b) - log_gamma_cx(a + b);
  if (l.real() > kMaxLog) throw OverflowError("beta_cx: result overflows");
  return std::exp(l);
}

Cx pochhammer(Cx alpha, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be nonnegative");
  if (n <= kPochhammerSwitch || is_nonpositive_integer(alpha) ||
      is_nonpositive_integer(alpha + static_cast<double>(n))) {
    Cx p = 1.0;
    for (int i = 0; i < n; ++i) p *= alpha + static_cast<double>(i);
    return p;
  }
  const Cx l = log_gamma_cx(alpha + static_cast<double>(n)) - log_gamma_cx(alpha);
  if (l.real() > kMaxLog) throw OverflowError("pochhammer: result overflows");
  return std::exp(l);
}

double pochhammer(double alpha, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be nonnegative");
  if (n <= kPochhammerSwitch || is_nonpositive_integer(alpha) ||
      is_nonpositive_integer(alpha + n)) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= alpha + i;
    return p;
  }
  return log_pochhammer(alpha, n).value();
}

LogAbs LogAbs::of(double x) {
  if (x == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(x)), x < 0.0 ? -1 : 1};
}

LogAbs& LogAbs::operator/=(const LogAbs& o) {
  if (o.sign == 0) throw PoleError("LogAbs: division by zero");
  log_abs -= o.log_abs;
  sign *= o.sign;
  return *this;
}

double LogAbs::value() const {
  if (sign == 0) return 0.0;
  if (log_abs > kMaxLog) throw OverflowError("value overflows double range");
  return sign * std::exp(log_abs);
}

LogAbs log_gamma_signed(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw_pole("log_gamma_signed", Cx{x, 0.0});
  int sign = 1;
  const double l = ::lgamma_r(x, &sign);
  return {l, sign};
}

LogAbs log_pochhammer(double alpha, int n) {
  if (n < 0) throw DomainError("log_pochhammer: n must be nonnegative");
  if (n == 0) return {};
  const bool exact_integer = alpha <= 0.0 && alpha == std::floor(alpha);
  if (exact_integer || n <= 64) {
    LogAbs acc;
    for (int i = 0; i < n; ++i) acc *= LogAbs::of(alpha + i);
    return acc;
  }
  return log_gamma_signed(alpha + n) / log_gamma_signed(alpha);
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: n must be nonnegative");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace conefourier
