#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conefourier/errors.hpp"
#include "conefourier/multivariate.hpp"
#include "conefourier/univariate.hpp"

using namespace conefourier;

namespace {

constexpr double kPi = std::numbers::pi;

double ball_integral(const MultiIndex& k, const MultiIndex& l, double mu) {
  const int d = k.dim();
  const auto r = integrate_ball(
      [&](std::span<const double> x, std::span<const double> c) {
        // Nodes whose partial complement has underflowed carry no weight.
        for (int j = 0; j < d; ++j) {
          if (k[j] + l[j] > 0 && c[j] < 1e-14) return Cx(0.0);
        }
        const BallPoint p = BallPoint::with_complements({x.begin(), x.end()}, {c.begin(), c.end()});
        return Cx(ball_op(k, mu, p) * ball_op(l, mu, p) * std::pow(c[d], mu - 0.5));
      },
      d);
  return r.value.real();
}

// Integral over {|x| <= t} in the original coordinates (no separation).
double cone_direct_d1(const std::function<double(double, double)>& f, bool jacobi) {
  QuadratureConfig inner;
  inner.abs_tol = 1e-15;
  inner.rel_tol = 1e-13;
  const Interval outer = jacobi ? Interval::finite(0, 1) : Interval::half_line(0);
  return integrate_1d(
             [&](double t) {
               return integrate_1d([&](double x) { return Cx(f(t, x)); }, Interval::finite(-t, t), inner).value;
             },
             outer)
      .value.real();
}

}  // namespace

TEST_CASE("multi-index bookkeeping") {
  const MultiIndex k({2, 0, 3});
  CHECK(k.dim() == 3);
  CHECK(k.total() == 5);
  CHECK(k.tail(1) == 3);
  CHECK(k.tail(3) == 0);
  for (int i = 0; i < 3; ++i) CHECK(k.tail(i) == k[i] + k.tail(i + 1));
  CHECK_THROWS_AS(MultiIndex({1, -1}), DomainError);
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), DomainError);

  for (int d = 1; d <= 4; ++d) {
    for (int m = 0; m <= 5; ++m) {
      const auto all = multi_indices(d, m);
      CHECK(static_cast<long long>(all.size()) == space_dimension(m, d));
      for (const auto& idx : all) CHECK(idx.total() == m);
    }
  }
  CHECK(space_dimension(0, 5) == 1);
  CHECK(space_dimension(7, 1) == 1);
  CHECK(space_dimension(3, 2) == 4);
}

TEST_CASE("ball_weight") {
  CHECK(ball_weight(0.8, BallPoint::from_coordinates({0.0, 0.0})) == 1.0);
  CHECK(std::abs(ball_weight(0.5, BallPoint::from_coordinates({0.3, -0.6})) - 1.0) < 1e-15);
  CHECK(std::abs(ball_weight(1.0, BallPoint::from_coordinates({0.5, std::sqrt(0.5)})) - 0.5) < 1e-15);
  CHECK_THROWS_AS(ball_weight(0.3, BallPoint::from_coordinates({1.0, 0.0})), DomainError);
  CHECK_THROWS_AS(BallPoint::from_coordinates({0.9, 0.9}), DomainError);
}

TEST_CASE("ball_op examples") {
  const BallPoint p = BallPoint::from_coordinates({0.3, -0.4});
  CHECK(ball_op(MultiIndex({0, 0}), 1.3, p) == 1.0);
  CHECK(std::abs(ball_op(MultiIndex({1, 0}), 1.3, p) - 3.6 * 0.3) < 1e-15);
  CHECK(std::abs(ball_op(MultiIndex({0, 1}), 1.3, p) - 2.6 * -0.4) < 1e-15);
  // A division at a vanishing partial complement is rejected.
  CHECK_THROWS_AS(ball_op(MultiIndex({0, 1}), 1.0, BallPoint::from_coordinates({1.0, 0.0})), DomainError);
  CHECK_NOTHROW(ball_op(MultiIndex({1, 0}), 1.0, BallPoint::from_coordinates({1.0, 0.0})));
}

TEST_CASE("ball_op product form against direct Gegenbauer composition") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.55, 0.55);
  for (int i = 0; i < 40; ++i) {
    const std::vector<int> kv = {i % 3, (i / 3) % 3, (i / 9) % 2};
    const MultiIndex k(kv);
    const double mu = 0.4 + 0.05 * i;
    const std::vector<double> x = {u(rng), u(rng), u(rng)};
    double expected = 1.0;
    double partial = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double c = 1.0 - partial;
      const double lambda = mu + k.tail(j + 1) + (3 - 1 - j) / 2.0;
      expected *= std::pow(c, kv[j] / 2.0) * gegenbauer(kv[j], lambda, x[j] / std::sqrt(c));
      partial += x[j] * x[j];
    }
    CHECK(std::abs(ball_op(k, mu, BallPoint::from_coordinates(x)) - expected) < 1e-13 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("ball_norm against ball quadrature") {
  for (double mu : {0.3, 1.0, 2.2}) CHECK(std::abs(ball_norm(MultiIndex({0, 0}), mu) - kPi / (mu + 0.5)) < 1e-13);
  const MultiIndex k10({1, 0});
  CHECK(std::abs(ball_norm(k10, 1.0) - ball_integral(k10, k10, 1.0)) < 1e-11);
  const MultiIndex k110({1, 1, 0});
  const double h = ball_integral(k110, k110, 0.7);
  CHECK(std::abs(ball_norm(k110, 0.7) - h) < 1e-9 * h);
  CHECK(std::abs(ball_integral(k10, MultiIndex({0, 1}), 1.0)) < 1e-10);
  // The d = j boundary factor for small mu.
  const MultiIndex k2({2, 1});
  const double hs = ball_integral(k2, k2, 0.06);
  CHECK(std::abs(ball_norm(k2, 0.06) - hs) < 1e-8 * hs);
}

TEST_CASE("cone bases examples") {
  const LaguerreConeParams lp{0.5, 1.2, 1};
  const RadialFamily lag = [](int n, double alpha, double t) { return laguerre(n, alpha, t); };
  CHECK(cone_basis(lag, MultiIndex({0}), 0, ConePoint::from_tx(1.7, {0.4}), 1.2) == 1.0);
  CHECK(std::abs(cone_basis(lag, MultiIndex({1}), 1, ConePoint::from_tx(1.7, {0.4}), 1.2) - 2.4 * 0.4) < 1e-14);
  CHECK(std::abs(laguerre_cone(MultiIndex({1}), 1, lp, ConePoint::from_tx(1.7, {0.4})) - 2.4 * 0.4) < 1e-14);
  CHECK(std::abs(laguerre_cone(MultiIndex({0}), 1, lp, ConePoint::from_tx(1.7, {0.4})) - (2.4 + 0.5 + 1 - 1.7)) < 1e-14);
  CHECK(laguerre_cone(MultiIndex({0}), 0, lp, ConePoint::from_tx(0.2, {0.1})) == 1.0);

  // L_1^{5.5}(2) * 2 * 3 * (0.3 / 2)
  const LaguerreConeParams lp2{0.5, 1.0, 2};
  CHECK(std::abs(laguerre_cone(MultiIndex({1, 0}), 2, lp2, ConePoint::from_tx(2.0, {0.3, 0.1})) - 4.05) < 1e-13);

  const JacobiConeParams jp{0.5, 1.0, 0.5, 1};
  CHECK(jacobi_cone(MultiIndex({0}), 0, jp, ConePoint::from_tx(0.5, {0.1})) == 1.0);
  CHECK(std::abs(jacobi_cone(MultiIndex({0}), 1, jp, ConePoint::from_tx(1.0, {0.2})) + 1.5) < 1e-14);
  // P_1^{(4.5, 0.5)}(0.2) * 0.4 * C_1^1(0.25)
  CHECK(std::abs(jacobi_cone(MultiIndex({1}), 2, jp, ConePoint::from_tx(0.4, {0.1})) - 0.54) < 1e-14);

  CHECK_THROWS_AS(ConePoint::from_tx(0.0, {0.0}), DomainError);
  CHECK_THROWS_AS(ConePoint::from_tx(1.0, {1.5}), DomainError);
  CHECK_THROWS_AS(laguerre_cone(MultiIndex({2}), 1, lp, ConePoint::from_tx(1.0, {0.1})), DomainError);
  CHECK_THROWS_AS((LaguerreConeParams{-1.0, 0.5, 1}.validate()), DomainError);
  CHECK_THROWS_AS((JacobiConeParams{0.5, 0.5, -1.0, 1}.validate()), DomainError);
}

TEST_CASE("concrete cone bases match the generic construction") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ut(0.05, 0.95);
  std::uniform_real_distribution<double> uy(-0.6, 0.6);
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 3;
    const double beta = 0.3, mu = 0.9, gamma = 0.4;
    const MultiIndex k(std::vector<int>(d, 1));
    const int n = d + i % 3;
    const double t = ut(rng) * (i % 2 == 0 ? 8.0 : 1.0);
    std::vector<double> x(d);
    for (auto& v : x) v = uy(rng) * t / std::sqrt(static_cast<double>(d));
    const ConePoint p = ConePoint::from_tx(t, x);
    if (i % 2 == 0) {
      const LaguerreConeParams lp{beta, mu, d};
      const RadialFamily q = [&](int m, double alpha, double s) { return laguerre(m, alpha + beta, s); };
      const double g = cone_basis(q, k, n, p, mu);
      CHECK(std::abs(laguerre_cone(k, n, lp, p) - g) < 1e-13 * std::max(1.0, std::abs(g)));
    } else {
      const JacobiConeParams jp{beta, mu, gamma, d};
      const RadialFamily q = [&](int m, double alpha, double s) { return jacobi(m, alpha + beta, gamma, 1 - 2 * s); };
      const double g = cone_basis(q, k, n, p, mu);
      CHECK(std::abs(jacobi_cone(k, n, jp, p) - g) < 1e-13 * std::max(1.0, std::abs(g)));
    }
  }
}

TEST_CASE("t^m P_k(x/t) is a polynomial of total degree m") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& kv : {std::vector<int>{1, 1}, std::vector<int>{2, 1}, std::vector<int>{0, 3}}) {
    const MultiIndex k(kv);
    const int m = k.total();
    for (int line = 0; line < 4; ++line) {
      // Points (t, x) = (2, 0.2, 0.1) + s v stay inside the cone for s in [0, 1].
      const double v[3] = {0.5 * u(rng), 0.3 * u(rng), 0.3 * u(rng)};
      const int npts = m + 2;
      std::vector<double> s(npts), f(npts);
      double scale = 0.0;
      for (int i = 0; i < npts; ++i) {
        s[i] = static_cast<double>(i) / (npts - 1);
        const double t = 2.0 + s[i] * v[0];
        const std::vector<double> x = {0.2 + s[i] * v[1], 0.1 + s[i] * v[2]};
        f[i] = std::pow(t, m) * ball_op(k, 0.8, BallPoint::from_coordinates({x[0] / t, x[1] / t}));
        scale = std::max(scale, std::abs(f[i]));
      }
      for (int level = 1; level < npts; ++level) {
        for (int i = npts - 1; i >= level; --i) f[i] = (f[i] - f[i - 1]) / (s[i] - s[i - level]);
      }
      CHECK(std::abs(f[npts - 1]) < 1e-9 * scale);
    }
  }
}

TEST_CASE("cone inner products") {
  const double beta = 0.5, mu = 0.8, gamma = 0.5;
  const ConeWeight wl{ConeWeight::Kind::Laguerre, beta, mu, 0.0, 1};
  const ConeWeight wj{ConeWeight::Kind::Jacobi, beta, mu, gamma, 1};
  const LaguerreConeParams lp{beta, mu, 1};
  const JacobiConeParams jp{beta, mu, gamma, 1};

  const ConeFunction one = [](const ConePoint&) { return 1.0; };
  const double mass = cone_inner_product_separated(one, one, wl).value.real();
  CHECK(std::abs(mass - gegenbauer_norm(0, mu) * std::tgamma(2 * mu + beta + 1)) < 1e-12 * mass);
  const double direct = cone_direct_d1(
      [&](double t, double x) { return std::pow(t * t - x * x, mu - 0.5) * std::pow(t, beta) * std::exp(-t); }, false);
  CHECK(std::abs(mass - direct) < 1e-9 * mass);
  CHECK(std::abs(laguerre_cone_norm(MultiIndex({0}), 0, lp) - mass) < 1e-12 * mass);

  const ConeFunction l00 = [&](const ConePoint& p) { return laguerre_cone(MultiIndex({0}), 0, lp, p); };
  const ConeFunction l11 = [&](const ConePoint& p) { return laguerre_cone(MultiIndex({1}), 1, lp, p); };
  CHECK(std::abs(cone_inner_product_separated(l00, l11, wl).value) < 1e-12 * mass);

  const ConeFunction j12 = [&](const ConePoint& p) { return jacobi_cone(MultiIndex({1}), 2, jp, p); };
  const double hj = cone_inner_product_separated(j12, j12, wj).value.real();
  CHECK(hj > 0.0);
  CHECK(std::abs(hj - jacobi_cone_norm(MultiIndex({1}), 2, jp)) < 1e-10 * hj);
  const double hj_direct = cone_direct_d1(
      [&](double t, double x) {
        const double v = jacobi_cone(MultiIndex({1}), 2, jp, ConePoint::from_tx(t, {x}));
        return v * v * std::pow(t * t - x * x, mu - 0.5) * std::pow(t, beta) * std::pow(1 - t, gamma);
      },
      true);
  CHECK(std::abs(hj - hj_direct) < 1e-8 * hj);
}
