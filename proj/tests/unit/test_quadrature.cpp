#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conefourier/errors.hpp"
#include "conefourier/multivariate.hpp"
#include "conefourier/quadrature.hpp"

using namespace conefourier;

namespace {

constexpr double kPi = std::numbers::pi;

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

TEST_CASE("integrate_1d examples") {
  const auto one = integrate_1d([](double) { return Cx(1.0); }, Interval::finite(0, 1));
  CHECK(one.converged);
  CHECK(std::abs(one.value - 1.0) < 1e-15);
  CHECK(one.evaluations > 0);

  // Written in x alone, the integrand loses 1 - x^2 to rounding next to the
  // endpoints, which caps the accuracy near 1e-8. The gap form is exact.
  const auto arcsine = integrate_1d([](double x) { return Cx(1.0 / std::sqrt(1 - x * x)); }, Interval::finite(-1, 1));
  CHECK(std::abs(arcsine.value - kPi) < 1e-7);
  const auto arcsine_gap =
      integrate_de([](double, double lo, double hi) { return Cx(1.0 / std::sqrt(lo * hi)); }, -1.0, 1.0);
  CHECK(std::abs(arcsine_gap.value - kPi) < 1e-13);

  const Cx z(0.5, 0.5);
  const auto euler = integrate_1d([&](double t) { return std::pow(Cx(t), z - 1.0) * std::exp(-t); }, Interval::half_line(0));
  CHECK(std::abs(euler.value - gamma_cx(z)) < 1e-11 * std::abs(gamma_cx(z)));

  const auto gauss = integrate_1d([](double x) { return Cx(std::exp(-x * x)); }, Interval::full_line());
  CHECK(std::abs(gauss.value - std::sqrt(kPi)) < 1e-13);
}

TEST_CASE("the three rules agree on a half-line integrand") {
  const auto f = [](double t) { return Cx(std::pow(t, 1.5) * std::exp(-t)); };
  const double exact = std::tgamma(2.5);
  for (Rule r : {Rule::DoubleExponential, Rule::AdaptiveGK, Rule::GaussLaguerre}) {
    QuadratureConfig cfg;
    cfg.rule = r;
    cfg.rel_tol = r == Rule::GaussLaguerre ? 1e-5 : 1e-10;
    cfg.abs_tol = 1e-12;
    const auto res = integrate_1d(f, Interval::half_line(0), cfg);
    CHECK(std::abs(res.value - exact) < 10.0 * cfg.rel_tol * exact);
  }
  // t^{3/2} is not smooth at 0, so 128 Gauss-Laguerre nodes stall near 1e-7.
  QuadratureConfig strict;
  strict.rule = Rule::GaussLaguerre;
  CHECK_THROWS_AS(integrate_1d(f, Interval::half_line(0), strict), ConvergenceError);
  const auto gl = integrate_gauss_laguerre([](double x) { return Cx(x * x); });
  CHECK(std::abs(gl.value - 2.0) < 1e-12);
  const auto& rule = gauss_laguerre_rule(128);
  CHECK(rule.nodes.size() == 128);
  CHECK(gauss_laguerre_rule(1).nodes.at(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(gauss_laguerre_rule(0), DomainError);
  CHECK_THROWS_AS(integrate_gauss_laguerre([](double) { return Cx(1.0); }, 2), DomainError);
}

TEST_CASE("configuration validation and non-convergence") {
  QuadratureConfig cfg;
  cfg.max_levels = 2;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate_1d([](double) { return Cx(1.0); }, Interval::finite(0, 1), cfg), DomainError);
  CHECK_THROWS_AS(integrate_1d([](double) { return Cx(1.0); }, Interval::finite(1, 0)), DomainError);

  cfg = {};
  cfg.max_levels = 4;
  try {
    integrate_1d([](double x) { return Cx(std::cos(200.0 * x)); }, Interval::finite(0, 3), cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.best_re));
    CHECK(e.achieved > 0.0);
  }
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const Cx alpha(u(rng), u(rng)), beta(u(rng), u(rng));
    const double s = 1.0 + std::abs(u(rng));
    const auto f = [&](double x) { return Cx(std::exp(-s * x * x) * std::cos(x)); };
    const auto g = [&](double x) { return Cx(sech(x) * x * x, std::tanh(x) * sech(x)); };
    const Cx lhs = integrate_1d([&](double x) { return alpha * f(x) + beta * g(x); }, Interval::full_line()).value;
    const Cx rhs = alpha * integrate_1d(f, Interval::full_line()).value + beta * integrate_1d(g, Interval::full_line()).value;
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("double-exponential and Gauss-Kronrod agree on random smooth integrands") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QuadratureConfig gk;
  gk.rule = Rule::AdaptiveGK;
  for (int i = 0; i < 20; ++i) {
    const double a = 4 * u(rng) - 2, b = 6 * u(rng), c = 3 * u(rng), d = 5 * u(rng);
    const double lo = -1 - u(rng), hi = 1 + 2 * u(rng);
    const auto f = [&](double x) { return Cx(std::exp(a * x) * std::cos(b * x + c) / (1 + d * x * x)); };
    const auto r1 = integrate_1d(f, Interval::finite(lo, hi));
    const auto r2 = integrate_1d(f, Interval::finite(lo, hi), gk);
    CHECK(std::abs(r1.value - r2.value) <= 5.0 * (r1.error_estimate + r2.error_estimate));
  }
}

TEST_CASE("error estimates are honest on integrals with known values") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int honest = 0;
  for (int i = 0; i < 100; ++i) {
    IntegralResult r;
    Cx exact;
    switch (i % 4) {
      case 0: {
        const double s = -0.9 + 3.9 * u(rng);
        r = integrate_1d([&](double x) { return Cx(std::pow(x, s)); }, Interval::finite(0, 1));
        exact = 1.0 / (s + 1.0);
        break;
      }
      case 1: {
        const double mu = 0.05 + 3 * u(rng);
        r = integrate_1d([&](double x) { return Cx(std::pow(1 - x * x, mu - 0.5)); }, Interval::finite(-1, 1));
        exact = beta_cx(0.5, mu + 0.5);
        break;
      }
      case 2: {
        const Cx z(0.3 + 3 * u(rng), 4 * u(rng) - 2);
        r = integrate_1d([&](double t) { return std::pow(Cx(t), z - 1.0) * std::exp(-t); }, Interval::half_line(0));
        exact = gamma_cx(z);
        break;
      }
      default: {
        const double xi = 8 * u(rng) - 4;
        r = integrate_1d([&](double x) { return sech(x) * Cx(std::cos(xi * x), -std::sin(xi * x)); }, Interval::full_line());
        exact = kPi * sech(kPi * xi / 2);
        break;
      }
    }
    if (std::abs(r.value - exact) <= 10.0 * r.error_estimate) ++honest;
  }
  CHECK(honest >= 95);
}

TEST_CASE("integrate_tensor and integrate_ball") {
  const auto sq = integrate_tensor([](std::span<const double>) { return Cx(1.0); },
                                   {Interval::finite(0, 1), Interval::finite(0, 1)});
  CHECK(std::abs(sq.value - 1.0) < 1e-15);
  const auto prod = integrate_tensor(
      [](std::span<const double> x) { return Cx(std::exp(-x[0]) * std::exp(-x[1] * x[1]) * x[2] * x[2]); },
      {Interval::half_line(0), Interval::full_line(), Interval::finite(-1, 1)});
  CHECK(std::abs(prod.value - std::sqrt(kPi) * 2.0 / 3.0) < 1e-11);

  const auto w = integrate_ball([](std::span<const double>, std::span<const double> c) { return Cx(std::sqrt(c[2])); }, 2);
  CHECK(std::abs(w.value - 2.0 * kPi / 3.0) < 1e-12);

  const MultiIndex k10({1, 0}), k01({0, 1});
  const auto off = integrate_ball(
      [&](std::span<const double> x, std::span<const double> c) {
        const BallPoint p = BallPoint::with_complements({x.begin(), x.end()}, {c.begin(), c.end()});
        if (c[1] < 1e-14) return Cx(0.0);
        return Cx(ball_op(k10, 1.0, p) * ball_op(k01, 1.0, p) * std::sqrt(c[2]));
      },
      2);
  CHECK(std::abs(off.value) < 1e-10);

  const auto box = integrate_box(
      [](const BoxPoint& p) { return Cx(1.0 / (std::sqrt(p.gap_lo[0]) * std::sqrt(p.gap_hi[1]))); }, {{0.0, 1.0}, {0.0, 1.0}});
  CHECK(std::abs(box.value - 4.0) < 1e-11);
}

TEST_CASE("fourier_num on the sech pair") {
  const auto f = [](std::span<const double> x) { return sech(x[0]); };
  CHECK(std::abs(fourier_num(f, {FourierAxis::Tanh}, {0.0}).value - kPi) < 1e-12);
  CHECK(std::abs(fourier_num(f, {FourierAxis::Tanh}, {1.0}).value - kPi * sech(kPi / 2)) < 1e-12);
  CHECK(std::abs(fourier_num(f, {FourierAxis::HalfTanh}, {-0.7}).value - kPi * sech(0.35 * kPi)) < 1e-12);
  CHECK(std::abs(fourier_num(f, {FourierAxis::Exp}, {2.0}).value - kPi * sech(kPi)) < 1e-11);
  CHECK_THROWS_AS(fourier_num(f, {FourierAxis::Tanh}, {8.5}), DomainError);
  CHECK_THROWS_AS(fourier_num(f, {FourierAxis::Tanh}, {0.0, 1.0}), DomainError);

  QuadratureConfig gk;
  gk.rule = Rule::AdaptiveGK;
  gk.rel_tol = 1e-10;
  gk.abs_tol = 1e-12;
  const auto r = fourier_num(f, {FourierAxis::Tanh}, {0.5}, gk);
  CHECK(r.cross_checked);
  CHECK_FALSE(r.disagreement);
  CHECK(std::abs(r.cross_check_value - r.value) < 1e-9);

  // Separable two-dimensional transform.
  const auto f2 = [](std::span<const double> x) { return sech(x[0]) * std::exp(-std::exp(x[1]) / 2 + x[1]); };
  const auto r2 = fourier_num(f2, {FourierAxis::Tanh, FourierAxis::Exp}, {0.4, -0.8});
  const Cx expected = kPi * sech(0.2 * kPi) * std::pow(2.0, Cx(1.0, 0.8)) * gamma_cx({1.0, 0.8});
  CHECK(std::abs(r2.value - expected) < 1e-10 * std::abs(expected));
}

TEST_CASE("parseval_lhs on the sech pair") {
  const PointIntegrand F = [](std::span<const double> xi) { return Cx(kPi * sech(kPi * xi[0] / 2)); };
  const auto r = parseval_lhs(F, F, 1);
  // (2 pi) times the integral of sech^2.
  CHECK(std::abs(r.value - 4.0 * kPi) < 1e-11);
  const auto r2 = parseval_lhs(
      [&](std::span<const double> xi) { return F(xi.subspan(0, 1)) * F(xi.subspan(1, 1)); },
      [&](std::span<const double> xi) { return F(xi.subspan(0, 1)) * F(xi.subspan(1, 1)); }, 2);
  CHECK(std::abs(r2.value - 16.0 * kPi * kPi) < 1e-9);
  CHECK(parseval_radius(1.0, 1e-13, 40.0) >= 40.0);
  CHECK(parseval_radius(1e30, 1e-13, 40.0) > 40.0);
}
