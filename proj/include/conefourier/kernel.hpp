#pragma once

// Complex special functions: Gamma, log-Gamma, Beta and Pochhammer symbols.
//
// All routines are pure functions of their arguments and may be called
// concurrently.

#include <complex>
#include <numbers>

namespace conefourier {

using Cx = std::complex<double>;

inline constexpr Cx kI{0.0, 1.0};

/// True if z is a nonpositive integer within `tol` (real and imaginary parts).
bool is_nonpositive_integer(Cx z, double tol = 1e-10);
bool is_nonpositive_integer(double x, double tol = 1e-10);

/// Principal branch of log Gamma(z): analytic off the negative real axis and
/// real on the positive real axis. Throws PoleError at z = 0, -1, -2, ...
Cx log_gamma_cx(Cx z);

/// Gamma(z) for complex z. Throws PoleError at the poles and OverflowError
/// when |Gamma(z)| exceeds the double range.
Cx gamma_cx(Cx z);

/// Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), assembled in log space.
Cx beta_cx(Cx a, Cx b);

/// Rising factorial (alpha)_n. Iterated product up to kPochhammerSwitch
/// factors, log-Gamma ratio above.
Cx pochhammer(Cx alpha, int n);
double pochhammer(double alpha, int n);

inline constexpr int kPochhammerSwitch = 24;

/// Sign and log-magnitude of a real quantity. Products of Gamma values and
/// Pochhammer symbols are accumulated in this form and exponentiated once.
struct LogAbs {
  double log_abs = 0.0;
  int sign = 1;  // 0 encodes an exact zero

  static LogAbs of(double x);

  LogAbs& operator*=(const LogAbs& o) {
    log_abs += o.log_abs;
    sign *= o.sign;
    return *this;
  }
  LogAbs& operator/=(const LogAbs& o);
  friend LogAbs operator*(LogAbs a, const LogAbs& b) { return a *= b; }
  friend LogAbs operator/(LogAbs a, const LogAbs& b) { return a /= b; }

  /// Throws OverflowError when the magnitude exceeds the double range.
  double value() const;
};

/// log|Gamma(x)| with sign for real x. Throws PoleError at nonpositive integers.
LogAbs log_gamma_signed(double x);

/// (alpha)_n in log-magnitude form, exact zero when a factor vanishes.
LogAbs log_pochhammer(double alpha, int n);

/// log(n!).
double log_factorial(int n);

}  // namespace conefourier
