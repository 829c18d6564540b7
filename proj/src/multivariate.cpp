#include "conefourier/multivariate.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "conefourier/errors.hpp"
#include "conefourier/univariate.hpp"

namespace conefourier {
namespace {

constexpr double kBallSlack = 1e-12;
constexpr double kComplementGuard = 1e-14;

void require_mu(double mu, const char* fn) {
  if (!(mu > -0.5)) {
    std::ostringstream os;
    os << fn << ": requires mu > -1/2, got mu = " << mu;
    throw DomainError(os.str());
  }
}

void enumerate(int d, int m, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  const int i = static_cast<int>(cur.size());
  if (i == d - 1) {
    cur.push_back(m);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = m; v >= 0; --v) {
    cur.push_back(v);
    enumerate(d, m - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> k) : k_(std::move(k)) {
  if (k_.empty()) throw DomainError("MultiIndex: dimension must be at least 1");
  tail_.assign(k_.size() + 1, 0);
  for (int i = static_cast<int>(k_.size()) - 1; i >= 0; --i) {
    if (k_[i] < 0) throw DomainError("MultiIndex: components must be nonnegative");
    tail_[i] = tail_[i + 1] + k_[i];
  }
}

std::vector<MultiIndex> multi_indices(int d, int m) {
  if (d < 1 || m < 0) throw DomainError("multi_indices: requires d >= 1 and m >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur;
  enumerate(d, m, cur, out);
  return out;
}

BallPoint BallPoint::from_coordinates(std::vector<double> x) {
  if (x.empty()) throw DomainError("BallPoint: dimension must be at least 1");
  std::vector<double> c(x.size() + 1);
  c[0] = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) c[j + 1] = c[j] - x[j] * x[j];
  if (c.back() < -2.0 * kBallSlack) throw DomainError("BallPoint: point lies outside the unit ball");
  for (double& v : c) v = std::max(v, 0.0);
  return {std::move(x), std::move(c)};
}

BallPoint BallPoint::with_complements(std::vector<double> x, std::vector<double> c) {
  if (x.empty() || c.size() != x.size() + 1) throw DomainError("BallPoint: complement count must be d + 1");
  return {std::move(x), std::move(c)};
}

ConePoint ConePoint::from_tx(double t, const std::vector<double>& x) {
  if (!(t > 0.0)) throw DomainError("ConePoint: requires t > 0");
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / t;
  return {t, BallPoint::from_coordinates(std::move(y))};
}

std::vector<double> ConePoint::x() const {
  std::vector<double> out(y.x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t * y.x[i];
  return out;
}

void LaguerreConeParams::validate() const {
  if (d < 1) throw DomainError("LaguerreConeParams: requires d >= 1");
  if (!(beta > -d)) throw DomainError("LaguerreConeParams: requires beta > -d");
  require_mu(mu, "LaguerreConeParams");
}

void JacobiConeParams::validate() const {
  if (d < 1) throw DomainError("JacobiConeParams: requires d >= 1");
  if (!(beta > -d)) throw DomainError("JacobiConeParams: requires beta > -d");
  require_mu(mu, "JacobiConeParams");
  if (!(gamma > -1.0)) throw DomainError("JacobiConeParams: requires gamma > -1");
}

long long space_dimension(int n, int d) {
  if (n < 0 || d < 1) throw DomainError("space_dimension: requires n >= 0 and d >= 1");
  long long r = 1;
  for (int i = 1; i <= n; ++i) r = r * (d - 1 + i) / i;
  return r;
}

double ball_weight(double mu, const BallPoint& p) {
  require_mu(mu, "ball_weight");
  const double c = p.complement.back();
  if (c <= 0.0) {
    if (mu < 0.5) throw DomainError("ball_weight: the weight is singular on the boundary for mu < 1/2");
    return mu == 0.5 ? 1.0 : 0.0;
  }
  return std::pow(c, mu - 0.5);
}

double ball_lambda(const MultiIndex& k, double mu, int i) {
  return mu + k.tail(i + 1) + 0.5 * (k.dim() - 1 - i);
}

double ball_op(const MultiIndex& k, double mu, const BallPoint& p) {
  require_mu(mu, "ball_op");
  if (mu == 0.0) throw DomainError("ball_op: mu = 0 is excluded");
  if (p.dim() != k.dim()) throw DomainError("ball_op: point and multi-index dimensions differ");
  double v = 1.0;
  for (int i = 0; i < k.dim(); ++i) {
    if (k[i] == 0) continue;
    const double c = p.complement[i];
    if (c < kComplementGuard) {
      throw DomainError("ball_op: partial norm reaches 1 where the factor divides by it");
    }
    const double s = std::sqrt(c);
    v *= std::pow(s, k[i]) * gegenbauer(k[i], ball_lambda(k, mu, i), p.x[i] / s);
  }
  return v;
}

double ball_norm(const MultiIndex& k, double mu) {
  require_mu(mu, "ball_norm");
  if (mu == 0.0) throw DomainError("ball_norm: mu = 0 is excluded");
  const int d = k.dim();
  LogAbs h{0.5 * d * std::log(std::numbers::pi), 1};
  h *= log_gamma_signed(mu + 0.5);
  h *= log_pochhammer(mu + 0.5 * d, k.total());
  h /= log_gamma_signed(mu + 0.5 * (d + 1) + k.total());
  for (int i = 0; i < d; ++i) {
    const double r = d - 1 - i;
    h *= log_pochhammer(mu + 0.5 * r, k.tail(i));
    h *= log_pochhammer(2.0 * mu + 2.0 * k.tail(i + 1) + r, k[i]);
    h /= LogAbs{log_factorial(k[i]), 1};
    h /= log_pochhammer(mu + 0.5 * (r + 1.0), k.tail(i));
  }
  return h.value();
}

double cone_basis(const RadialFamily& q, const MultiIndex& k, int n, const ConePoint& p, double mu) {
  const int m = k.total();
  if (m > n) throw DomainError("cone_basis: requires |k| <= n");
  if (!(p.t > 0.0)) throw DomainError("cone_basis: requires t > 0");
  if (p.y.dim() != k.dim()) throw DomainError("cone_basis: point and multi-index dimensions differ");
  const double alpha = k.dim() + 2.0 * m + 2.0 * mu - 1.0;
  return q(n - m, alpha, p.t) * std::pow(p.t, m) * ball_op(k, mu, p.y);
}

double laguerre_cone(const MultiIndex& k, int n, const LaguerreConeParams& params, const ConePoint& p) {
  params.validate();
  if (k.dim() != params.d) throw DomainError("laguerre_cone: multi-index dimension differs from d");
  const int m = k.total();
  if (m > n) throw DomainError("laguerre_cone: requires |k| <= n");
  if (!(p.t > 0.0)) throw DomainError("laguerre_cone: requires t > 0");
  const double alpha = 2.0 * m + 2.0 * params.mu + params.beta + params.d - 1.0;
  return laguerre(n - m, alpha, p.t) * std::pow(p.t, m) * ball_op(k, params.mu, p.y);
}

double jacobi_cone(const MultiIndex& k, int n, const JacobiConeParams& params, const ConePoint& p) {
  params.validate();
  if (k.dim() != params.d) throw DomainError("jacobi_cone: multi-index dimension differs from d");
  const int m = k.total();
  if (m > n) throw DomainError("jacobi_cone: requires |k| <= n");
  if (!(p.t > 0.0)) throw DomainError("jacobi_cone: requires t > 0");
  const double alpha = 2.0 * m + 2.0 * params.mu + params.beta + params.d - 1.0;
  return jacobi(n - m, alpha, params.gamma, 1.0 - 2.0 * p.t) * std::pow(p.t, m) * ball_op(k, params.mu, p.y);
}

double laguerre_cone_norm(const MultiIndex& k, int n, const LaguerreConeParams& params) {
  params.validate();
  const int m = k.total();
  if (m > n) throw DomainError("laguerre_cone_norm: requires |k| <= n");
  const double alpha = 2.0 * m + 2.0 * params.mu + params.beta + params.d - 1.0;
  return ball_norm(k, params.mu) * laguerre_norm(n - m, alpha);
}

double jacobi_cone_norm(const MultiIndex& k, int n, const JacobiConeParams& params) {
  params.validate();
  const int m = k.total();
  if (m > n) throw DomainError("jacobi_cone_norm: requires |k| <= n");
  const double alpha = 2.0 * m + 2.0 * params.mu + params.beta + params.d - 1.0;
  const double scale = std::exp(-(alpha + params.gamma + 1.0) * std::numbers::ln2);
  return ball_norm(k, params.mu) * scale * jacobi_norm(n - m, alpha, params.gamma);
}

IntegralResult cone_inner_product_separated(const ConeFunction& f, const ConeFunction& g, const ConeWeight& w,
                                            const QuadratureConfig& cfg) {
  const int d = w.d;
  if (w.kind == ConeWeight::Kind::Laguerre) {
    LaguerreConeParams{w.beta, w.mu, d}.validate();
  } else {
    JacobiConeParams{w.beta, w.mu, w.gamma, d}.validate();
  }
  const bool laguerre_weight = w.kind == ConeWeight::Kind::Laguerre;
  const double radial_power = d + 2.0 * w.mu - 1.0 + w.beta;
  std::vector<std::pair<double, double>> box(d + 1, {-1.0, 1.0});
  box[0] = {0.0, 1.0};
  std::vector<double> y(d);
  std::vector<double> c(d + 1);
  BoxIntegrand h = [&](const BoxPoint& p) {
    double t;
    double jac = 1.0;
    double radial;
    if (laguerre_weight) {
      // t = v / (1 - v) on (0, inf).
      t = p.gap_lo[0] / p.gap_hi[0];
      jac /= p.gap_hi[0] * p.gap_hi[0];
      radial = std::exp(radial_power * std::log(t) - t);
    } else {
      t = p.x[0];
      radial = std::pow(p.gap_lo[0], radial_power) * std::pow(p.gap_hi[0], w.gamma);
    }
    if (radial == 0.0 || !(t > 0.0)) return Cx{};
    c[0] = 1.0;
    for (int j = 0; j < d; ++j) {
      const int a = j + 1;
      const double u = p.gap_lo[a] < p.gap_hi[a] ? -1.0 + p.gap_lo[a] : 1.0 - p.gap_hi[a];
      const double r = std::sqrt(c[j]);
      y[j] = u * r;
      jac *= r;
      c[j + 1] = c[j] * p.gap_lo[a] * p.gap_hi[a];
    }
    const double ball_w = std::pow(c[d], w.mu - 0.5);
    const ConePoint cp{t, BallPoint::with_complements(y, c)};
    return Cx{f(cp) * g(cp) * ball_w * radial * jac};
  };
  return integrate_box(h, box, cfg);
}

}  // namespace conefourier
