#include "conefourier/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "conefourier/multivariate.hpp"
#include "conefourier/transforms.hpp"
#include "conefourier/univariate.hpp"
#include "param_access.hpp"

namespace conefourier {
namespace {

// ---------------------------------------------------------------------------
// Parameter access

struct Keys {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const std::map<std::string, Keys>& key_table() {
  static const std::map<std::string, Keys> t = {
      {"gegenbauer-orth", {{"n", "m", "mu"}, {}}},
      {"laguerre-orth", {{"n", "m", "alpha"}, {}}},
      {"jacobi-orth", {{"n", "m", "alpha", "beta"}, {}}},
      {"ball-orth", {{"k", "l", "mu"}, {"d"}}},
      {"ball-eigen", {{"k", "mu", "x"}, {"d", "h"}}},
      {"cone-orth-laguerre", {{"n", "k", "m", "l", "beta", "mu"}, {"d"}}},
      {"cone-orth-jacobi", {{"n", "k", "m", "l", "beta", "mu", "gamma"}, {"d"}}},
      {"ft-f", {{"k", "a", "mu", "xi"}, {"d"}}},
      {"ft-g-laguerre", {{"n", "k", "a", "b", "beta", "mu", "xi"}, {"d"}}},
      {"ft-g-jacobi", {{"n", "k", "a", "b", "c", "beta", "mu", "gamma", "xi"}, {"d"}}},
      {"theta-dual", {{"k", "a", "mu", "xi"}, {"d", "axis"}}},
      {"fd-recursion", {{"k", "a", "mu", "x", "path"}, {"d"}}},
      {"parseval-a", {{"n", "k", "m", "l", "a1", "a2", "b1", "b2"}, {"d"}}},
      {"parseval-b", {{"n", "k", "m", "l", "a1", "a2", "b1", "b2", "c1", "c2"}, {"d"}}},
      {"norm-constants", {{"form"}, {"d", "k", "mu", "a1", "a2", "b1", "b2"}}},
  };
  return t;
}

void check_keys(const std::string& id, const ParamMap& p) {
  const Keys& keys = key_table().at(id);
  detail::require_keys(id, p, keys.required, keys.optional);
}

using detail::integer;
using detail::multi_index;
using detail::scalar;
using detail::scalar_or;
using detail::vec;

// ---------------------------------------------------------------------------
// Outcomes

// pass <=> |lhs - rhs| <= tol * judge_scale. rel_err is |lhs - rhs| / |rhs|,
// or relative to judge_scale where the expected value is zero.
struct Outcome {
  Cx lhs;
  Cx rhs;
  double judge_scale = 0.0;
  long long evals = 0;
  std::string reason;
};

QuadratureConfig oracle_config(const QuadratureConfig& cfg, double tol, double scale) {
  QuadratureConfig c = cfg;
  c.rel_tol = std::max(cfg.rel_tol, tol / 100.0);
  if (scale > 0.0 && std::isfinite(scale)) c.abs_tol = std::max(cfg.abs_tol, tol * scale / 100.0);
  return c;
}

Outcome orthogonality(const IntegralResult& r, double diag_n, double diag_m, bool same) {
  Outcome o;
  o.lhs = r.value;
  o.rhs = same ? Cx(diag_n) : Cx{};
  o.judge_scale = std::sqrt(std::abs(diag_n * diag_m));
  o.evals = r.evaluations;
  return o;
}

Outcome transform_outcome(const IntegralResult& r, Cx closed) {
  Outcome o;
  o.lhs = r.value;
  o.rhs = closed;
  o.judge_scale = std::max(std::abs(closed), 1e-6 * r.magnitude);
  o.evals = r.evaluations;
  if (r.cross_checked && r.disagreement) o.reason = "transformed and truncated-GK oracle paths disagree";
  return o;
}

// ---------------------------------------------------------------------------
// Checks

Outcome gegenbauer_orth(const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  const int n = integer(p, "n");
  const int m = integer(p, "m");
  const double mu = scalar(p, "mu");
  if (n < 0 || m < 0) throw DomainError("gegenbauer-orth: degrees must be nonnegative");
  const double hn = gegenbauer_norm(n, mu);
  const double hm = gegenbauer_norm(m, mu);
  GapIntegrand f = [&](double x, double lo, double hi) {
    return Cx(gegenbauer(n, mu, x) * gegenbauer(m, mu, x) * std::pow(lo * hi, mu - 0.5));
  };
  return orthogonality(integrate_de(f, -1.0, 1.0, oracle_config(cfg, tol, std::sqrt(hn * hm))), hn, hm, n == m);
}

Outcome laguerre_orth(const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  const int n = integer(p, "n");
  const int m = integer(p, "m");
  const double alpha = scalar(p, "alpha");
  if (n < 0 || m < 0) throw DomainError("laguerre-orth: degrees must be nonnegative");
  const double hn = laguerre_norm(n, alpha);
  const double hm = laguerre_norm(m, alpha);
  Integrand1d f = [&](double t) {
    if (!(t > 0.0)) return Cx{};
    return Cx(laguerre(n, alpha, t) * laguerre(m, alpha, t) * std::exp(alpha * std::log(t) - t));
  };
  const auto r = integrate_1d(f, Interval::half_line(0.0), oracle_config(cfg, tol, std::sqrt(hn * hm)));
  return orthogonality(r, hn, hm, n == m);
}

Outcome jacobi_orth(const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  const int n = integer(p, "n");
  const int m = integer(p, "m");
  const double alpha = scalar(p, "alpha");
  const double beta = scalar(p, "beta");
  if (n < 0 || m < 0) throw DomainError("jacobi-orth: degrees must be nonnegative");
  const double hn = jacobi_norm(n, alpha, beta);
  const double hm = jacobi_norm(m, alpha, beta);
  GapIntegrand f = [&](double t, double lo, double hi) {
    return Cx(jacobi(n, alpha, beta, t) * jacobi(m, alpha, beta, t) * std::pow(hi, alpha) * std::pow(lo, beta));
  };
  return orthogonality(integrate_de(f, -1.0, 1.0, oracle_config(cfg, tol, std::sqrt(hn * hm))), hn, hm, n == m);
}

Outcome ball_orth(const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  const MultiIndex k = multi_index(p, "k");
  const MultiIndex l = multi_index(p, "l");
  const double mu = scalar(p, "mu");
  if (k.dim() != l.dim()) throw ParameterError("ball-orth: 'k' and 'l' differ in length");
  const int d = k.dim();
  const double hk = ball_norm(k, mu);
  const double hl = ball_norm(l, mu);
  BallIntegrand f = [&](std::span<const double> x, std::span<const double> c) {
    // Nodes where a divided-by complement underflows carry a factor
    // c^{k_j/2} <= 1e-7 on a set of negligible measure.
    for (int j = 0; j < d; ++j) {
      if (k[j] + l[j] > 0 && c[j] < 1e-14) return Cx{};
    }
    const BallPoint bp = BallPoint::with_complements({x.begin(), x.end()}, {c.begin(), c.end()});
    return Cx(ball_op(k, mu, bp) * ball_op(l, mu, bp) * std::pow(c[d], mu - 0.5));
  };
  return orthogonality(integrate_ball(f, d, oracle_config(cfg, tol, std::sqrt(hk * hl))), hk, hl, k == l);
}

Outcome ball_eigen(const ParamMap& p) {
  const MultiIndex k = multi_index(p, "k");
  const double mu = scalar(p, "mu");
  const int d = k.dim();
  const std::vector<double> x = vec(p, "x", d);
  const double h = scalar_or(p, "h", 1e-4);
  if (!(h > 0.0)) throw DomainError("ball-eigen: step h must be positive");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (std::sqrt(r2) + h * std::sqrt(2.0 * d) >= 1.0) throw DomainError("ball-eigen: stencil leaves the open unit ball");

  auto P = [&](std::vector<double> y) { return ball_op(k, mu, BallPoint::from_coordinates(std::move(y))); };
  auto shifted = [&](int i, double si, int j, double sj) {
    std::vector<double> y = x;
    y[i] += si * h;
    if (j >= 0) y[j] += sj * h;
    return P(std::move(y));
  };
  const double p0 = P(x);
  double laplace = 0.0;
  double mixed = 0.0;
  double euler = 0.0;
  for (int i = 0; i < d; ++i) {
    const double fp = shifted(i, 1.0, -1, 0.0);
    const double fm = shifted(i, -1.0, -1, 0.0);
    const double dii = (fp - 2.0 * p0 + fm) / (h * h);
    laplace += dii;
    mixed += x[i] * x[i] * dii;
    euler += x[i] * (fp - fm) / (2.0 * h);
    for (int j = i + 1; j < d; ++j) {
      const double dij = (shifted(i, 1.0, j, 1.0) - shifted(i, 1.0, j, -1.0) - shifted(i, -1.0, j, 1.0) +
                          shifted(i, -1.0, j, -1.0)) /
                         (4.0 * h * h);
      mixed += 2.0 * x[i] * x[j] * dij;
    }
  }
  const int n = k.total();
  const double lambda = -(n + d) * (n + 2.0 * mu - 1.0);
  Outcome o;
  o.lhs = laplace - mixed - (d + 2.0 * mu) * euler - d * (2.0 * mu - 1.0) * p0;
  o.rhs = lambda * p0;
  // Pointwise values may vanish; the root-mean-square of lambda P over the
  // ball is the natural scale.
  const double rms = std::abs(lambda) * std::sqrt(ball_norm(k, mu) / ball_norm(MultiIndex(std::vector<int>(d, 0)), mu));
  o.judge_scale = std::max(std::abs(o.rhs), rms);
  o.evals = 1 + 2 * d + 2 * d * (d - 1);
  return o;
}

Outcome cone_orth(const ParamMap& p, const QuadratureConfig& cfg, double tol, bool laguerre_kind) {
  const int n = integer(p, "n");
  const int m = integer(p, "m");
  const MultiIndex k = multi_index(p, "k");
  const MultiIndex l = multi_index(p, "l");
  if (k.dim() != l.dim()) throw ParameterError("cone orthogonality: 'k' and 'l' differ in length");
  const int d = k.dim();
  const double beta = scalar(p, "beta");
  const double mu = scalar(p, "mu");
  ConeWeight w{laguerre_kind ? ConeWeight::Kind::Laguerre : ConeWeight::Kind::Jacobi, beta, mu, 0.0, d};
  ConeFunction f;
  ConeFunction g;
  double hf;
  double hg;
  if (laguerre_kind) {
    const LaguerreConeParams lp{beta, mu, d};
    f = [=](const ConePoint& q) { return laguerre_cone(k, n, lp, q); };
    g = [=](const ConePoint& q) { return laguerre_cone(l, m, lp, q); };
    hf = laguerre_cone_norm(k, n, lp);
    hg = laguerre_cone_norm(l, m, lp);
  } else {
    w.gamma = scalar(p, "gamma");
    const JacobiConeParams jp{beta, mu, w.gamma, d};
    f = [=](const ConePoint& q) { return jacobi_cone(k, n, jp, q); };
    g = [=](const ConePoint& q) { return jacobi_cone(l, m, jp, q); };
    hf = jacobi_cone_norm(k, n, jp);
    hg = jacobi_cone_norm(l, m, jp);
  }
  const auto r = cone_inner_product_separated(f, g, w, oracle_config(cfg, tol, std::sqrt(hf * hg)));
  return orthogonality(r, hf, hg, n == m && k == l);
}

Outcome ft_f(const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  const MultiIndex k = multi_index(p, "k");
  const double a = scalar(p, "a");
  const double mu = scalar(p, "mu");
  const std::vector<double> xi = vec(p, "xi", k.dim());
  const Cx closed = ft_f_closed(k, a, mu, xi);
  auto f = [&](std::span<const double> x) { return f_d(x, k, a, mu); };
  const auto r = fourier_num(f, std::vector<FourierAxis>(k.dim(), FourierAxis::Tanh), xi,
                             oracle_config(cfg, tol, std::abs(closed)));
  return transform_outcome(r, closed);
}

Outcome ft_g_laguerre(const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  const MultiIndex k = multi_index(p, "k");
  const int d = k.dim();
  const int n = integer(p, "n");
  const TransformParamsLaguerre tp{scalar(p, "a"), scalar(p, "b"), {scalar(p, "beta"), scalar(p, "mu"), d}};
  const std::vector<double> xi = vec(p, "xi", d + 1);
  const Cx closed = ft_g_laguerre_closed(k, n, tp, xi);
  auto f = [&](std::span<const double> z) { return g_laguerre(z[d], z.first(d), k, n, tp); };
  std::vector<FourierAxis> axes(d, FourierAxis::Tanh);
  axes.push_back(FourierAxis::Exp);
  const auto r = fourier_num(f, axes, xi, oracle_config(cfg, tol, std::abs(closed)));
  return transform_outcome(r, closed);
}

Outcome ft_g_jacobi(const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  const MultiIndex k = multi_index(p, "k");
  const int d = k.dim();
  const int n = integer(p, "n");
  const TransformParamsJacobi tp{scalar(p, "a"),
                                 scalar(p, "b"),
                                 scalar(p, "c"),
                                 {scalar(p, "beta"), scalar(p, "mu"), scalar(p, "gamma"), d}};
  const std::vector<double> xi = vec(p, "xi", d + 1);
  const Cx closed = ft_g_jacobi_closed(k, n, tp, xi);
  auto f = [&](std::span<const double> z) { return g_jacobi(z[d], z.first(d), k, n, tp); };
  std::vector<FourierAxis> axes(d, FourierAxis::Tanh);
  axes.push_back(FourierAxis::HalfTanh);
  const auto r = fourier_num(f, axes, xi, oracle_config(cfg, tol, std::abs(closed)));
  return transform_outcome(r, closed);
}

Outcome theta_dual(const ParamMap& p) {
  const MultiIndex k = multi_index(p, "k");
  const int axis = integer(scalar_or(p, "axis", 0.0), "axis");
  Outcome o;
  o.lhs = theta_hahn(axis, scalar(p, "a"), scalar(p, "mu"), k, scalar(p, "xi"));
  o.rhs = theta_hyper(axis, scalar(p, "a"), scalar(p, "mu"), k, scalar(p, "xi"));
  o.judge_scale = std::abs(o.rhs);
  return o;
}

Outcome fd_recursion(const ParamMap& p) {
  const MultiIndex k = multi_index(p, "k");
  const double a = scalar(p, "a");
  const double mu = scalar(p, "mu");
  const std::vector<double> x = vec(p, "x", k.dim());
  const int path = integer(p, "path");
  if (path != 1 && path != 2) throw ParameterError("fd-recursion: 'path' must be 1 or 2");
  Outcome o;
  o.lhs = path == 1 ? f_d_via_g1(x, k, a, mu) : f_d_via_g2(x, k, a, mu);
  o.rhs = f_d(x, k, a, mu);
  o.judge_scale = std::abs(o.rhs);
  return o;
}

Outcome parseval(const ParamMap& p, const QuadratureConfig& cfg, double tol, bool b_kind) {
  const MultiIndex k = multi_index(p, "k");
  const MultiIndex l = multi_index(p, "l");
  if (k.dim() != l.dim()) throw ParameterError("parseval: 'k' and 'l' differ in length");
  const int d = k.dim();
  const int n = integer(p, "n");
  const int m = integer(p, "m");
  const ParsevalParams pp =
      b_kind ? ParsevalParams::b_family(d, scalar(p, "a1"), scalar(p, "a2"), scalar(p, "b1"), scalar(p, "b2"),
                                        scalar(p, "c1"), scalar(p, "c2"))
             : ParsevalParams::a_family(d, scalar(p, "a1"), scalar(p, "a2"), scalar(p, "b1"), scalar(p, "b2"));
  const ParsevalParams sw = pp.swapped();
  const double hn = b_kind ? b_norm_rhs(n, k, pp) : a_norm_rhs(n, k, pp);
  const double hm = b_kind ? b_norm_rhs(m, l, sw) : a_norm_rhs(m, l, sw);

  // F(xi) = weight part 1 times the family at (i t, i x); G carries the
  // second factor at (-i t, -i x) with swapped parameters, conjugated so
  // that the oracle's F conj(G) is the plain product.
  auto family = [&](Cx t, std::span<const Cx> x, const MultiIndex& idx, int deg, const ParsevalParams& q) {
    if (b_kind) return gamma_cx(q.b1() - t / 2.0) * gamma_cx(q.c2() - t / 2.0) * b_family(t, x, idx, deg, q);
    return gamma_cx(q.b1() - t) * a_family(t, x, idx, deg, q);
  };
  PointIntegrand F = [&](std::span<const double> z) {
    std::vector<Cx> x(d);
    for (int i = 0; i < d; ++i) x[i] = kI * z[i];
    return family(kI * z[d], x, k, n, pp);
  };
  PointIntegrand G = [&](std::span<const double> z) {
    std::vector<Cx> x(d);
    for (int i = 0; i < d; ++i) x[i] = -kI * z[i];
    return std::conj(family(-kI * z[d], x, l, m, sw));
  };
  const double scale = std::sqrt(std::abs(hn * hm));
  const auto r = parseval_lhs(F, G, d + 1, oracle_config(cfg, tol, scale));
  return orthogonality(r, hn, hm, n == m && k == l);
}

Outcome norm_constants(const ParamMap& p) {
  const int form = integer(p, "form");
  Outcome o;
  if (form == 0) {
    // Ball norm against the product of one-variable Gegenbauer norms that
    // the substitution x_j = u_j sqrt(1 - x_1^2 - ... - x_{j-1}^2) produces.
    for (const char* key : {"k", "mu"}) {
      if (!p.contains(key)) throw ParameterError(std::string("norm-constants: form 0 needs '") + key + "'");
    }
    const MultiIndex k = multi_index(p, "k");
    const double mu = scalar(p, "mu");
    double prod = 1.0;
    for (int i = 0; i < k.dim(); ++i) prod *= gegenbauer_norm(k[i], ball_lambda(k, mu, i));
    o.lhs = prod;
    o.rhs = ball_norm(k, mu);
  } else if (form == 1) {
    // A-family constant at d = 1, n = k = 0 against its reduced form
    // 4 pi^2 2^{2 - 2|a| - |b|} h_0 Gamma(|b|) Gamma(2 a1) Gamma(2 a2).
    for (const char* key : {"a1", "a2", "b1", "b2"}) {
      if (!p.contains(key)) throw ParameterError(std::string("norm-constants: form 1 needs '") + key + "'");
    }
    const auto pp = ParsevalParams::a_family(1, scalar(p, "a1"), scalar(p, "a2"), scalar(p, "b1"), scalar(p, "b2"));
    const MultiIndex zero(std::vector<int>{0});
    const double pi = std::numbers::pi;
    o.lhs = 4.0 * pi * pi * std::exp2(2.0 - 2.0 * pp.abs_a() - pp.abs_b()) * ball_norm(zero, pp.mu()) *
            std::tgamma(pp.abs_b()) * std::tgamma(2.0 * pp.a1()) * std::tgamma(2.0 * pp.a2());
    o.rhs = a_norm_rhs(0, zero, pp);
  } else {
    throw ParameterError("norm-constants: 'form' must be 0 or 1");
  }
  o.judge_scale = std::abs(o.rhs);
  return o;
}

Outcome dispatch(const std::string& id, const ParamMap& p, const QuadratureConfig& cfg, double tol) {
  if (id == "gegenbauer-orth") return gegenbauer_orth(p, cfg, tol);
  if (id == "laguerre-orth") return laguerre_orth(p, cfg, tol);
  if (id == "jacobi-orth") return jacobi_orth(p, cfg, tol);
  if (id == "ball-orth") return ball_orth(p, cfg, tol);
  if (id == "ball-eigen") return ball_eigen(p);
  if (id == "cone-orth-laguerre") return cone_orth(p, cfg, tol, true);
  if (id == "cone-orth-jacobi") return cone_orth(p, cfg, tol, false);
  if (id == "ft-f") return ft_f(p, cfg, tol);
  if (id == "ft-g-laguerre") return ft_g_laguerre(p, cfg, tol);
  if (id == "ft-g-jacobi") return ft_g_jacobi(p, cfg, tol);
  if (id == "theta-dual") return theta_dual(p);
  if (id == "fd-recursion") return fd_recursion(p);
  if (id == "parseval-a") return parseval(p, cfg, tol, false);
  if (id == "parseval-b") return parseval(p, cfg, tol, true);
  return norm_constants(p);
}

// ---------------------------------------------------------------------------
// Grids

ParamMap pm(std::initializer_list<std::pair<const std::string, std::vector<double>>> init) { return ParamMap(init); }

std::vector<double> as_vec(const MultiIndex& k) { return {k.components().begin(), k.components().end()}; }

std::vector<MultiIndex> indices_up_to(int d, int max_total) {
  std::vector<MultiIndex> out;
  for (int m = 0; m <= max_total; ++m) {
    for (auto& k : multi_indices(d, m)) out.push_back(k);
  }
  return out;
}

// (n, k) with |k| <= n <= max_n, k of dimension d.
std::vector<std::pair<int, MultiIndex>> cone_indices(int d, int max_n) {
  std::vector<std::pair<int, MultiIndex>> out;
  for (int n = 0; n <= max_n; ++n) {
    for (const auto& k : indices_up_to(d, n)) out.emplace_back(n, k);
  }
  return out;
}

Grid cone_pair_grid(int d, int max_n, const ParamMap& base) {
  Grid g;
  const auto idx = cone_indices(d, max_n);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i; j < idx.size(); ++j) {
      ParamMap p = base;
      p["n"] = {double(idx[i].first)};
      p["k"] = as_vec(idx[i].second);
      p["m"] = {double(idx[j].first)};
      p["l"] = as_vec(idx[j].second);
      g.push_back(std::move(p));
    }
  }
  return g;
}

Grid default_grid_impl(const std::string& id, std::uint64_t seed) {
  Grid g;
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  if (id == "gegenbauer-orth" || id == "laguerre-orth" || id == "jacobi-orth") {
    std::vector<ParamMap> settings;
    if (id == "gegenbauer-orth") settings = {pm({{"mu", {0.3}}}), pm({{"mu", {1.0}}}), pm({{"mu", {2.5}}})};
    if (id == "laguerre-orth") settings = {pm({{"alpha", {-0.5}}}), pm({{"alpha", {0.0}}}), pm({{"alpha", {1.5}}})};
    if (id == "jacobi-orth") {
      settings = {pm({{"alpha", {-0.5}}, {"beta", {-0.5}}}), pm({{"alpha", {0.0}}, {"beta", {0.0}}}),
                  pm({{"alpha", {1.0}}, {"beta", {0.5}}})};
    }
    for (const auto& s : settings) {
      for (int n = 0; n <= 6; ++n) {
        for (int m = 0; m <= 6; ++m) {
          ParamMap p = s;
          p["n"] = {double(n)};
          p["m"] = {double(m)};
          g.push_back(std::move(p));
        }
      }
    }
  } else if (id == "ball-orth") {
    const auto idx = indices_up_to(2, 4);
    for (double mu : {0.7, 1.5}) {
      for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i; j < idx.size(); ++j) {
          g.push_back(pm({{"mu", {mu}}, {"k", as_vec(idx[i])}, {"l", as_vec(idx[j])}}));
        }
      }
    }
  } else if (id == "ball-eigen") {
    for (const auto& k : indices_up_to(2, 3)) {
      for (int rep = 0; rep < 2; ++rep) {
        const double r = 0.85 * std::sqrt(uni(0.0, 1.0));
        const double phi = uni(0.0, 2.0 * std::numbers::pi);
        g.push_back(pm({{"mu", {1.0}}, {"k", as_vec(k)}, {"x", {r * std::cos(phi), r * std::sin(phi)}}}));
      }
    }
  } else if (id == "cone-orth-laguerre") {
    g = cone_pair_grid(1, 3, pm({{"beta", {0.5}}, {"mu", {0.8}}}));
  } else if (id == "cone-orth-jacobi") {
    g = cone_pair_grid(1, 3, pm({{"beta", {0.5}}, {"mu", {0.8}}, {"gamma", {0.5}}}));
  } else if (id == "ft-f") {
    for (int k = 0; k <= 2; ++k) {
      for (double a : {0.5, 1.0}) {
        for (double xi : {-2.0, -1.0, -0.5, 0.0, 1.0, 2.0}) {
          g.push_back(pm({{"k", {double(k)}}, {"a", {a}}, {"mu", {1.0}}, {"xi", {xi}}}));
        }
      }
    }
  } else if (id == "ft-g-laguerre" || id == "ft-g-jacobi") {
    const bool lag = id == "ft-g-laguerre";
    const std::vector<ParamMap> settings =
        lag ? std::vector<ParamMap>{pm({{"a", {0.7}}, {"b", {1.2}}, {"beta", {0.5}}, {"mu", {0.9}}}),
                                    pm({{"a", {1.0}}, {"b", {0.8}}, {"beta", {-0.3}}, {"mu", {0.6}}})}
            : std::vector<ParamMap>{
                  pm({{"a", {0.7}}, {"b", {1.2}}, {"c", {0.9}}, {"beta", {0.5}}, {"mu", {0.9}}, {"gamma", {0.4}}}),
                  pm({{"a", {1.0}}, {"b", {0.8}}, {"c", {1.5}}, {"beta", {-0.3}}, {"mu", {0.6}}, {"gamma", {-0.2}}})};
    const std::vector<double> xs = {-2.0, -0.5, 0.0, 1.0};
    for (const auto& s : settings) {
      for (auto [n, k] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}}) {
        for (double x1 : xs) {
          for (double x2 : xs) {
            ParamMap p = s;
            p["n"] = {double(n)};
            p["k"] = {double(k)};
            p["xi"] = {x1, x2};
            g.push_back(std::move(p));
          }
        }
      }
    }
  } else if (id == "theta-dual") {
    for (int rep = 0; rep < 200; ++rep) {
      const int d = pick(1, 3);
      std::vector<double> k(d);
      for (double& v : k) v = pick(0, 4);
      g.push_back(pm({{"k", k},
                      {"axis", {double(pick(0, d - 1))}},
                      {"a", {uni(0.2, 2.0)}},
                      {"mu", {uni(0.3, 2.0)}},
                      {"xi", {uni(-5.0, 5.0)}}}));
    }
  } else if (id == "fd-recursion") {
    for (int d : {2, 3}) {
      for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> k(d);
        int budget = 4;
        for (double& v : k) {
          v = pick(0, budget);
          budget -= int(v);
        }
        std::vector<double> x(d);
        for (double& v : x) v = uni(-3.0, 3.0);
        const double a = uni(0.2, 2.0);
        const double mu = uni(0.3, 2.0);
        for (int path : {1, 2}) {
          g.push_back(pm({{"k", k}, {"x", x}, {"a", {a}}, {"mu", {mu}}, {"path", {double(path)}}}));
        }
      }
    }
  } else if (id == "parseval-a" || id == "parseval-b") {
    const bool b_kind = id == "parseval-b";
    ParamMap base = pm({{"a1", {0.6}}, {"a2", {0.7}}, {"b1", {1.5}}, {"b2", {1.2}}});
    if (b_kind) {
      base["c1"] = {0.8};
      base["c2"] = {0.9};
    }
    g = cone_pair_grid(1, 2, base);
    ParamMap spot = base;
    spot["b1"] = {2.5};
    spot["n"] = {1.0};
    spot["m"] = {1.0};
    spot["k"] = {1.0, 0.0};
    spot["l"] = {1.0, 0.0};
    g.push_back(std::move(spot));
  } else if (id == "norm-constants") {
    for (double mu : {0.3, 1.5}) {
      for (int d = 1; d <= 3; ++d) {
        for (const auto& k : indices_up_to(d, 2)) g.push_back(pm({{"form", {0.0}}, {"mu", {mu}}, {"k", as_vec(k)}}));
      }
    }
    g.push_back(pm({{"form", {1.0}}, {"a1", {0.6}}, {"a2", {0.7}}, {"b1", {1.5}}, {"b2", {1.2}}}));
    g.push_back(pm({{"form", {1.0}}, {"a1", {1.1}}, {"a2", {0.4}}, {"b1", {0.9}}, {"b2", {2.3}}}));
  }
  return g;
}

std::string params_inline(const ParamMap& p, char sep) {
  std::string s;
  for (const auto& [k, v] : p) {
    if (!s.empty()) s += sep;
    s += k + "=";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += format_number(v[i]);
    }
  }
  return s;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<int>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

void append_report(std::string& out, const CheckReport& r, const std::string& indent) {
  const std::string in = indent + "  ";
  out += "{\n";
  out += in + "\"id\": " + json_string(r.id) + ",\n";
  out += in + "\"params\": {";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    out += first ? "" : ", ";
    first = false;
    out += json_string(k) + ": ";
    if (v.size() == 1) {
      out += format_number(v[0]);
    } else {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
      out += "]";
    }
  }
  out += "},\n";
  out += in + "\"lhs\": {\"re\": " + format_number(r.lhs.real()) + ", \"im\": " + format_number(r.lhs.imag()) + "},\n";
  out += in + "\"rhs\": {\"re\": " + format_number(r.rhs.real()) + ", \"im\": " + format_number(r.rhs.imag()) + "},\n";
  out += in + "\"abs_err\": " + format_number(r.abs_err) + ",\n";
  out += in + "\"rel_err\": " + format_number(r.rel_err) + ",\n";
  out += in + "\"tol\": " + format_number(r.tol) + ",\n";
  out += in + "\"pass\": " + (r.pass ? "true" : "false") + ",\n";
  out += in + "\"seconds\": " + format_number(r.seconds) + ",\n";
  out += in + "\"evals\": " + std::to_string(r.evals);
  if (!r.reason.empty()) out += ",\n" + in + "\"reason\": " + json_string(r.reason);
  out += "\n" + indent + "}";
}

}  // namespace

const std::vector<std::string>& identity_catalog() {
  static const std::vector<std::string> ids = {
      "gegenbauer-orth", "laguerre-orth", "jacobi-orth",  "ball-orth",    "ball-eigen",
      "cone-orth-laguerre", "cone-orth-jacobi", "ft-f", "ft-g-laguerre", "ft-g-jacobi",
      "theta-dual",      "fd-recursion",  "parseval-a",   "parseval-b",   "norm-constants"};
  return ids;
}

bool is_identity(const std::string& id) { return key_table().contains(id); }

double identity_tolerance(const std::string& id, const ParamMap& params) {
  if (id == "theta-dual" || id == "fd-recursion") return 1e-12;
  if (id == "norm-constants") return 1e-11;
  if (id == "gegenbauer-orth" || id == "laguerre-orth" || id == "jacobi-orth") return 1e-10;
  if (id == "ball-orth") return 1e-8;
  if (id == "ball-eigen") return 1e-4;
  if (id == "parseval-a" || id == "parseval-b") {
    const auto it = params.find("k");
    const bool higher = it != params.end() && it->second.size() > 1;
    return higher ? 1e-4 : 1e-5;
  }
  return 1e-6;
}

CheckReport check_identity(const std::string& id, const ParamMap& params, const QuadratureConfig& cfg, bool timing) {
  if (!is_identity(id)) throw ParameterError("unknown identity '" + id + "'");
  check_keys(id, params);
  cfg.validate();
  CheckReport rep;
  rep.id = id;
  rep.params = params;
  rep.tol = identity_tolerance(id, params);
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = dispatch(id, params, cfg, rep.tol);
  } catch (const ConvergenceError& e) {
    o.lhs = Cx(e.best_re, e.best_im);
    o.rhs = Cx(std::numeric_limits<double>::quiet_NaN());
    o.reason = std::string("oracle did not converge: ") + e.what();
  }
  if (timing) rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.lhs = o.lhs;
  rep.rhs = o.rhs;
  rep.evals = o.evals;
  rep.reason = o.reason;
  rep.abs_err = std::abs(o.lhs - o.rhs);
  const double rhs_mag = std::abs(o.rhs);
  rep.rel_err = rhs_mag > 0.0 ? rep.abs_err / rhs_mag : (o.judge_scale > 0.0 ? rep.abs_err / o.judge_scale : rep.abs_err);
  const bool finite = std::isfinite(o.lhs.real()) && std::isfinite(o.lhs.imag()) && std::isfinite(o.rhs.real()) &&
                      std::isfinite(o.rhs.imag());
  rep.scale = o.judge_scale;
  rep.pass = finite && o.reason.empty() && rep.abs_err <= rep.tol * o.judge_scale;
  if (!finite && rep.reason.empty()) rep.reason = "non-finite value";
  return rep;
}

Grid default_grid(const std::string& id, std::uint64_t seed) {
  if (!is_identity(id)) throw ParameterError("unknown identity '" + id + "'");
  return default_grid_impl(id, seed);
}

SuiteResult run_suite(const std::vector<std::string>& ids, const SuiteOptions& opt) {
  opt.quad.validate();
  std::vector<std::pair<std::string, ParamMap>> tasks;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!is_identity(id)) throw ParameterError("unknown identity '" + id + "'");
    if (!seen.insert(id).second) continue;
    const auto it = opt.grids.find(id);
    const Grid grid = it != opt.grids.end() ? it->second : default_grid_impl(id, opt.seed);
    for (const auto& p : grid) tasks.emplace_back(id, p);
  }
  std::vector<CheckReport> reports(tasks.size());
  auto run_one = [&](std::size_t i) {
    const auto& [id, p] = tasks[i];
    try {
      reports[i] = check_identity(id, p, opt.quad, opt.timing);
    } catch (const std::exception& e) {
      CheckReport r;
      r.id = id;
      r.params = p;
      r.lhs = r.rhs = Cx(std::numeric_limits<double>::quiet_NaN());
      r.abs_err = r.rel_err = std::numeric_limits<double>::quiet_NaN();
      r.tol = identity_tolerance(id, p);
      r.reason = e.what();
      reports[i] = std::move(r);
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(tasks.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
      });
    }
  }
  std::ranges::stable_sort(reports, [](const CheckReport& a, const CheckReport& b) {
    return std::tie(a.id, a.params) < std::tie(b.id, b.params);
  });
  SuiteResult res;
  res.summary.total = static_cast<int>(reports.size());
  for (const auto& r : reports) {
    if (r.pass) ++res.summary.passed;
    double& mx = res.summary.max_rel_err_by_id[r.id];
    const double e = std::isnan(r.rel_err) ? std::numeric_limits<double>::infinity() : r.rel_err;
    mx = std::max(mx, e);
  }
  res.reports = std::move(reports);
  return res;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string report_to_json(const CheckReport& r) {
  std::string out;
  append_report(out, r, "");
  return out + "\n";
}

std::string suite_to_json(const SuiteResult& s) {
  std::string out = "{\n  \"reports\": [";
  for (std::size_t i = 0; i < s.reports.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    append_report(out, s.reports[i], "    ");
  }
  out += s.reports.empty() ? "],\n" : "\n  ],\n";
  out += "  \"summary\": {\n";
  out += "    \"total\": " + std::to_string(s.summary.total) + ",\n";
  out += "    \"passed\": " + std::to_string(s.summary.passed) + ",\n";
  out += "    \"max_rel_err_by_id\": {";
  bool first = true;
  for (const auto& [id, e] : s.summary.max_rel_err_by_id) {
    out += first ? "" : ", ";
    first = false;
    out += json_string(id) + ": " + format_number(e);
  }
  out += "}\n  }\n}\n";
  return out;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::string out = "id,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tol,pass,seconds,evals\n";
  for (const auto& r : reports) {
    out += r.id + "," + params_inline(r.params, ';') + "," + format_number(r.lhs.real()) + "," +
           format_number(r.lhs.imag()) + "," + format_number(r.rhs.real()) + "," + format_number(r.rhs.imag()) + "," +
           format_number(r.abs_err) + "," + format_number(r.rel_err) + "," + format_number(r.tol) + "," +
           (r.pass ? "1" : "0") + "," + format_number(r.seconds) + "," + std::to_string(r.evals) + "\n";
  }
  return out;
}

}  // namespace conefourier
