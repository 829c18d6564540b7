#include "conefourier/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <string>

#include "conefourier/errors.hpp"

namespace conefourier {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kSMax = 6.1;
constexpr double kTruncate = 1e-20;

// Integral of one nesting level. magnitude integrates |f| (or the inner
// magnitudes), error integrates the inner error estimates plus this level's.
struct Sample {
  Cx value;
  double magnitude = 0.0;
  double error = 0.0;
  bool ok = true;
  int failed_axis = -1;
  long long evals = 0;
};

struct Tol {
  double abs;
  double rel;
  Tol tighter() const { return {abs / 10.0, rel / 10.0}; }
};

Sample leaf(Cx v) { return {v, std::abs(v), 0.0, true, -1, 1}; }

struct Accumulator {
  Cx sum;
  double mag = 0.0;
  double err = 0.0;
  bool ok = true;
  int failed_axis = -1;
  long long evals = 0;

  double add(double w, const Sample& s) {
    sum += w * s.value;
    mag += w * s.magnitude;
    err += w * s.error;
    if (!s.ok) {
      ok = false;
      if (failed_axis < 0) failed_axis = s.failed_axis;
    }
    evals += s.evals;
    return w * s.magnitude;
  }
};

// Tanh-sinh on (a, b). f(x, gap_lo, gap_hi) -> Sample.
template <class F>
Sample de_rule(const F& f, double a, double b, Tol tol, int max_levels, int axis) {
  const double half = 0.5 * (b - a);
  const double mid = a + half;
  Accumulator acc;

  auto node = [&](double s) -> double {
    const double as = std::abs(s);
    const double u = kHalfPi * std::sinh(as);
    const double ch = std::cosh(u);
    const double th = std::tanh(u);
    const double gap = half * std::exp(-u) / ch;
    if (!(gap > 0.0)) return 0.0;
    const double far = half * (1.0 + th);
    double x;
    double gl;
    double gh;
    if (s > 0.0) {
      gl = far;
      gh = gap;
      x = th < 0.5 ? mid + half * th : b - gap;
    } else if (s < 0.0) {
      gl = gap;
      gh = far;
      x = th < 0.5 ? mid - half * th : a + gap;
    } else {
      gl = gh = half;
      x = mid;
    }
    const double w = half * kHalfPi * std::cosh(as) / (ch * ch);
    return acc.add(w, f(x, gl, gh));
  };

  node(0.0);
  std::array<double, 2> smax{kSMax, kSMax};
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    int small = 0;
    for (int k = 1; k <= static_cast<int>(kSMax); ++k) {
      const double c = node(sign * k);
      if (k >= 2 && c <= kTruncate * acc.mag) {
        if (++small >= 2) {
          smax[side] = k;
          break;
        }
      } else {
        small = 0;
      }
    }
  }

  std::vector<Cx> history{acc.sum};
  double h = 1.0;
  double err = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int level = 1; level <= max_levels; ++level) {
    h *= 0.5;
    for (int side = 0; side < 2; ++side) {
      const double sign = side == 0 ? 1.0 : -1.0;
      for (long j = 1;; j += 2) {
        const double s = j * h;
        if (s > smax[side]) break;
        node(sign * s);
      }
    }
    const Cx estimate = h * acc.sum;
    history.push_back(estimate);
    if (level < 3) continue;
    const double d1 = std::abs(estimate - history[level - 1]);
    const double d2 = std::abs(estimate - history[level - 2]);
    double est = d1;
    if (d2 > 0.0 && d1 < d2) est = std::min(d1, d1 * d1 / d2);
    const double floor = 8.0 * kEps * h * acc.mag;
    err = std::max(est, floor);
    const double target = std::max(tol.abs, tol.rel * std::abs(estimate));
    if (est <= std::max(target, floor)) {
      converged = true;
      break;
    }
  }
  Sample out;
  out.value = history.back();
  out.magnitude = h * acc.mag;
  out.error = err + h * acc.err;
  out.ok = converged && acc.ok;
  out.failed_axis = acc.ok ? (converged ? -1 : axis) : acc.failed_axis;
  out.evals = acc.evals;
  return out;
}

// QUADPACK 15-point Kronrod rule and its embedded 7-point Gauss rule.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

template <class F>
Sample gk15(const F& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const double dhl = std::abs(hl);
  std::array<Sample, 15> s;
  s[7] = f(centr);
  for (int j = 0; j < 7; ++j) {
    const double absc = hl * kXgk[j];
    s[j] = f(centr - absc);
    s[14 - j] = f(centr + absc);
  }
  Cx resg = s[7].value * kWg[3];
  Cx resk = s[7].value * kWgk[7];
  double resabs = std::abs(s[7].value) * kWgk[7];
  Sample out;
  out.magnitude = kWgk[7] * s[7].magnitude;
  out.error = kWgk[7] * s[7].error;
  for (int j = 0; j < 7; ++j) {
    const Cx sum = s[j].value + s[14 - j].value;
    resk += kWgk[j] * sum;
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
    resabs += kWgk[j] * (std::abs(s[j].value) + std::abs(s[14 - j].value));
    out.magnitude += kWgk[j] * (s[j].magnitude + s[14 - j].magnitude);
    out.error += kWgk[j] * (s[j].error + s[14 - j].error);
  }
  const Cx reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(s[7].value - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(s[j].value - reskh) + std::abs(s[14 - j].value - reskh));
  }
  resabs *= dhl;
  resasc *= dhl;
  double abserr = std::abs((resk - resg) * hl);
  if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) abserr = std::max(50.0 * kEps * resabs, abserr);
  out.value = resk * hl;
  out.magnitude *= dhl;
  out.error = out.error * dhl + abserr;
  for (const Sample& x : s) {
    if (!x.ok) {
      out.ok = false;
      if (out.failed_axis < 0) out.failed_axis = x.failed_axis;
    }
    out.evals += x.evals;
  }
  return out;
}

template <class F>
Sample gk_rule(const F& f, double a, double b, Tol tol, int max_sub, int axis) {
  struct Piece {
    double a;
    double b;
    Sample s;
  };
  auto cmp = [](const Piece& x, const Piece& y) { return x.s.error < y.s.error; };
  std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> queue(cmp);
  Sample first = gk15(f, a, b);
  Cx total = first.value;
  double err = first.error;
  long long evals = first.evals;
  queue.push({a, b, first});
  bool converged = false;
  int pieces = 1;
  for (;;) {
    if (err <= std::max(tol.abs, tol.rel * std::abs(total))) {
      converged = true;
      break;
    }
    if (pieces >= max_sub) break;
    Piece worst = queue.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) break;
    queue.pop();
    Sample l = gk15(f, worst.a, m);
    Sample r = gk15(f, m, worst.b);
    total += l.value + r.value - worst.s.value;
    err += l.error + r.error - worst.s.error;
    evals += l.evals + r.evals;
    queue.push({worst.a, m, l});
    queue.push({m, worst.b, r});
    ++pieces;
  }
  // Re-sum in a fixed order so the result does not depend on float drift.
  std::vector<Piece> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  Sample out;
  out.evals = evals;
  bool inner_ok = true;
  for (const Piece& p : all) {
    out.value += p.s.value;
    out.magnitude += p.s.magnitude;
    out.error += p.s.error;
    if (!p.s.ok) {
      inner_ok = false;
      if (out.failed_axis < 0) out.failed_axis = p.s.failed_axis;
    }
  }
  if (!converged) {
    const double floor = 50.0 * kEps * out.magnitude;
    converged = out.error <= std::max({tol.abs, tol.rel * std::abs(out.value), floor});
  }
  out.ok = converged && inner_ok;
  if (!converged && out.failed_axis < 0) out.failed_axis = axis;
  return out;
}

IntegralResult finish(const Sample& s, const std::string& what) {
  if (!s.ok) {
    std::string msg = what + ": tolerance not met";
    if (s.failed_axis >= 0) msg += " on axis " + std::to_string(s.failed_axis);
    throw ConvergenceError(msg, s.value.real(), s.value.imag(), s.error);
  }
  IntegralResult r;
  r.value = s.value;
  r.error_estimate = s.error;
  r.evaluations = s.evals;
  r.converged = true;
  r.magnitude = s.magnitude;
  return r;
}

// Per-axis substitution onto a finite box for the tanh-sinh path.
struct AxisMap {
  double lo;
  double hi;
  enum class Kind { Identity, HalfLine, Logit } kind;
  double offset = 0.0;
  double scale = 1.0;

  // Returns the original coordinate and adds log(dx/dv) to log_jac. Kept in
  // log form because products over several axes overflow near the corners.
  double apply(double v, double gl, double gh, double& log_jac) const {
    switch (kind) {
      case Kind::Identity:
        return v;
      case Kind::HalfLine:
        log_jac -= 2.0 * std::log(gh);
        return offset + gl / gh;
      case Kind::Logit:
        log_jac += std::log(scale * (hi - lo)) - std::log(gl) - std::log(gh);
        return scale * std::log(gl / gh);
    }
    return v;
  }
};

Cx with_jacobian(Cx f, double log_jac) {
  if (f == Cx{}) return f;
  if (log_jac < 700.0) return f * std::exp(log_jac);
  const double m = std::abs(f);
  return f / m * std::exp(std::log(m) + log_jac);
}

AxisMap de_map(const Interval& iv) {
  switch (iv.kind) {
    case Interval::Kind::Finite:
      return {iv.lo, iv.hi, AxisMap::Kind::Identity};
    case Interval::Kind::HalfLine:
      return {0.0, 1.0, AxisMap::Kind::HalfLine, iv.lo};
    case Interval::Kind::FullLine:
      return {-1.0, 1.0, AxisMap::Kind::Logit, 0.0, 0.5};
  }
  return {iv.lo, iv.hi, AxisMap::Kind::Identity};
}

std::pair<double, double> truncated(const Interval& iv, double r) {
  switch (iv.kind) {
    case Interval::Kind::Finite:
      return {iv.lo, iv.hi};
    case Interval::Kind::HalfLine:
      return {iv.lo, iv.lo + r};
    case Interval::Kind::FullLine:
      return {-r, r};
  }
  return {iv.lo, iv.hi};
}

// Iterated tanh-sinh over box; leaf(v, gl, gh) -> Cx.
struct NestedDe {
  const std::vector<std::pair<double, double>>& box;
  const std::function<Cx(const BoxPoint&)>& f;
  int max_levels;
  std::vector<double> v;
  std::vector<double> gl;
  std::vector<double> gh;

  Sample run(std::size_t depth, Tol tol) {
    if (depth == box.size()) return leaf(f(BoxPoint{v, gl, gh}));
    auto inner = [&](double x, double lo, double hi) {
      v[depth] = x;
      gl[depth] = lo;
      gh[depth] = hi;
      return run(depth + 1, tol.tighter());
    };
    return de_rule(inner, box[depth].first, box[depth].second, tol, max_levels, static_cast<int>(depth));
  }
};

struct NestedGk {
  const std::vector<std::pair<double, double>>& box;
  const PointIntegrand& f;
  int max_sub;
  std::vector<double> x;

  Sample run(std::size_t depth, Tol tol) {
    if (depth == box.size()) return leaf(f(x));
    auto inner = [&](double t) {
      x[depth] = t;
      return run(depth + 1, tol.tighter());
    };
    return gk_rule(inner, box[depth].first, box[depth].second, tol, max_sub, static_cast<int>(depth));
  }
};

Sample run_box(const BoxIntegrand& f, const std::vector<std::pair<double, double>>& box,
               const QuadratureConfig& cfg) {
  NestedDe n{box, f, cfg.max_levels, std::vector<double>(box.size()), std::vector<double>(box.size()),
             std::vector<double>(box.size())};
  return n.run(0, {cfg.abs_tol, cfg.rel_tol});
}

Sample run_gk_box(const PointIntegrand& f, const std::vector<std::pair<double, double>>& box,
                  const QuadratureConfig& cfg) {
  NestedGk n{box, f, cfg.max_subdivisions, std::vector<double>(box.size())};
  return n.run(0, {cfg.abs_tol, cfg.rel_tol});
}

double laguerre_recurrence(int n, double x, double& prev) {
  double p0 = 1.0;
  double p1 = 1.0 - x;
  if (n == 0) {
    prev = 0.0;
    return p0;
  }
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  prev = p0;
  return p1;
}

GaussLaguerreRule build_gauss_laguerre(int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < n; ++i) sub(i) = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  GaussLaguerreRule rule;
  rule.nodes.resize(n);
  rule.log_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      double prev = 0.0;
      const double p = laguerre_recurrence(n, x, prev);
      const double dp = n * (p - prev) / x;
      x -= p / dp;
    }
    double prev = 0.0;
    const double pn1 = laguerre_recurrence(n + 1, x, prev);
    rule.nodes[i] = x;
    rule.log_weights[i] = std::log(x) - 2.0 * std::log(n + 1.0) - 2.0 * std::log(std::abs(pn1));
  }
  return rule;
}

Cx gauss_laguerre_sum(const Integrand1d& g, const GaussLaguerreRule& rule, bool undo_weight, long long& evals) {
  Cx sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double lw = rule.log_weights[i] + (undo_weight ? rule.nodes[i] : 0.0);
    if (lw < -745.0) continue;
    sum += std::exp(lw) * g(rule.nodes[i]);
    ++evals;
  }
  return sum;
}

IntegralResult gauss_laguerre_pair(const Integrand1d& g, int n, bool undo_weight, Tol tol) {
  if (n < 4) throw DomainError("gauss_laguerre: need at least 4 nodes");
  long long evals = 0;
  const Cx fine = gauss_laguerre_sum(g, gauss_laguerre_rule(n), undo_weight, evals);
  const Cx coarse = gauss_laguerre_sum(g, gauss_laguerre_rule(n / 2), undo_weight, evals);
  IntegralResult r;
  r.value = fine;
  r.error_estimate = std::abs(fine - coarse);
  r.evaluations = evals;
  r.converged = r.error_estimate <= std::max(tol.abs, tol.rel * std::abs(fine));
  r.magnitude = std::abs(fine);
  return r;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature: tolerances must be positive");
  if (max_levels < 3) throw DomainError("quadrature: max_levels must be at least 3");
  if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be positive");
  if (!(truncation_radius > 0.0)) throw DomainError("quadrature: truncation_radius must be positive");
}

IntegralResult integrate_de(const GapIntegrand& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) throw DomainError("integrate_de: requires a < b");
  auto g = [&](double x, double gl, double gh) { return leaf(f(x, gl, gh)); };
  return finish(de_rule(g, a, b, {cfg.abs_tol, cfg.rel_tol}, cfg.max_levels, 0), "integrate_de");
}

IntegralResult integrate_gk(const Integrand1d& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) throw DomainError("integrate_gk: requires a < b");
  auto g = [&](double x) { return leaf(f(x)); };
  return finish(gk_rule(g, a, b, {cfg.abs_tol, cfg.rel_tol}, cfg.max_subdivisions, 0), "integrate_gk");
}

const GaussLaguerreRule& gauss_laguerre_rule(int n) {
  if (n < 1) throw DomainError("gauss_laguerre_rule: need at least 1 node");
  static std::mutex mu;
  static std::map<int, GaussLaguerreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_laguerre(n)).first;
  return it->second;
}

IntegralResult integrate_gauss_laguerre(const Integrand1d& g, int n) {
  const QuadratureConfig defaults;
  return gauss_laguerre_pair(g, n, false, {defaults.abs_tol, defaults.rel_tol});
}

IntegralResult integrate_1d(const Integrand1d& f, const Interval& iv, const QuadratureConfig& cfg) {
  cfg.validate();
  switch (cfg.rule) {
    case Rule::DoubleExponential: {
      const AxisMap m = de_map(iv);
      if (iv.kind == Interval::Kind::Finite && !(iv.hi > iv.lo)) throw DomainError("integrate_1d: requires a < b");
      auto g = [&](double v, double gl, double gh) {
        double log_jac = 0.0;
        const double x = m.apply(v, gl, gh, log_jac);
        // The plain integrand never sees an endpoint, even after rounding.
        if (m.kind == AxisMap::Kind::Identity && (x <= iv.lo || x >= iv.hi)) return leaf(Cx{});
        return leaf(with_jacobian(f(x), log_jac));
      };
      return finish(de_rule(g, m.lo, m.hi, {cfg.abs_tol, cfg.rel_tol}, cfg.max_levels, 0), "integrate_1d");
    }
    case Rule::AdaptiveGK: {
      const auto [a, b] = truncated(iv, cfg.truncation_radius);
      return integrate_gk(f, a, b, cfg);
    }
    case Rule::GaussLaguerre: {
      if (iv.kind != Interval::Kind::HalfLine) {
        throw DomainError("integrate_1d: the Gauss-Laguerre rule applies to half-line intervals only");
      }
      const double lo = iv.lo;
      IntegralResult r = gauss_laguerre_pair([&](double x) { return f(lo + x); }, 128, true, {cfg.abs_tol, cfg.rel_tol});
      if (!r.converged) {
        throw ConvergenceError("integrate_1d: Gauss-Laguerre estimate above tolerance", r.value.real(), r.value.imag(),
                               r.error_estimate);
      }
      return r;
    }
  }
  throw DomainError("integrate_1d: unknown rule");
}

IntegralResult integrate_tensor(const PointIntegrand& f, const std::vector<Interval>& axes,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  if (axes.empty()) throw DomainError("integrate_tensor: no axes");
  if (cfg.rule == Rule::AdaptiveGK) {
    std::vector<std::pair<double, double>> box;
    for (const Interval& iv : axes) box.push_back(truncated(iv, cfg.truncation_radius));
    return finish(run_gk_box(f, box, cfg), "integrate_tensor");
  }
  if (cfg.rule == Rule::GaussLaguerre) {
    throw DomainError("integrate_tensor: the Gauss-Laguerre rule is one-dimensional only");
  }
  std::vector<AxisMap> maps;
  std::vector<std::pair<double, double>> box;
  for (const Interval& iv : axes) {
    if (iv.kind == Interval::Kind::Finite && !(iv.hi > iv.lo)) throw DomainError("integrate_tensor: requires a < b");
    maps.push_back(de_map(iv));
    box.emplace_back(maps.back().lo, maps.back().hi);
  }
  std::vector<double> x(axes.size());
  BoxIntegrand g = [&](const BoxPoint& p) {
    double log_jac = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) x[i] = maps[i].apply(p.x[i], p.gap_lo[i], p.gap_hi[i], log_jac);
    return with_jacobian(f(x), log_jac);
  };
  return finish(run_box(g, box, cfg), "integrate_tensor");
}

IntegralResult integrate_box(const BoxIntegrand& f, const std::vector<std::pair<double, double>>& box,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  if (box.empty()) throw DomainError("integrate_box: no axes");
  for (const auto& [a, b] : box) {
    if (!(b > a)) throw DomainError("integrate_box: requires a < b on every axis");
  }
  return finish(run_box(f, box, cfg), "integrate_box");
}

IntegralResult integrate_ball(const BallIntegrand& f, int d, const QuadratureConfig& cfg) {
  cfg.validate();
  if (d < 1) throw DomainError("integrate_ball: requires d >= 1");
  std::vector<std::pair<double, double>> box(d, {-1.0, 1.0});
  std::vector<double> x(d);
  std::vector<double> c(d + 1);
  BoxIntegrand g = [&](const BoxPoint& p) {
    c[0] = 1.0;
    double jac = 1.0;
    for (int j = 0; j < d; ++j) {
      const double u = p.gap_lo[j] < p.gap_hi[j] ? -1.0 + p.gap_lo[j] : 1.0 - p.gap_hi[j];
      const double r = std::sqrt(c[j]);
      x[j] = u * r;
      jac *= r;
      c[j + 1] = c[j] * p.gap_lo[j] * p.gap_hi[j];
    }
    return f(x, c) * jac;
  };
  return finish(run_box(g, box, cfg), "integrate_ball");
}

IntegralResult fourier_num(const std::function<double(std::span<const double>)>& f,
                           const std::vector<FourierAxis>& axes, const std::vector<double>& xi,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  if (axes.empty() || axes.size() != xi.size()) {
    throw DomainError("fourier_num: need one frequency per axis");
  }
  for (double w : xi) {
    if (!std::isfinite(w) || std::abs(w) > 8.0) {
      throw DomainError("fourier_num: |xi| > 8 is outside the supported frequency range");
    }
  }
  const std::size_t dims = axes.size();
  std::vector<AxisMap> maps;
  for (FourierAxis a : axes) {
    switch (a) {
      case FourierAxis::Tanh:
        maps.push_back({-1.0, 1.0, AxisMap::Kind::Logit, 0.0, 0.5});
        break;
      case FourierAxis::HalfTanh:
        maps.push_back({0.0, 1.0, AxisMap::Kind::Logit, 0.0, 0.5});
        break;
      case FourierAxis::Exp:
        maps.push_back({0.0, 1.0, AxisMap::Kind::Logit, 0.0, 1.0});
        break;
    }
  }
  std::vector<std::pair<double, double>> box;
  for (const AxisMap& m : maps) box.emplace_back(m.lo, m.hi);
  std::vector<double> x(dims);
  BoxIntegrand g = [&](const BoxPoint& p) {
    double log_jac = 0.0;
    double phase = 0.0;
    for (std::size_t i = 0; i < dims; ++i) {
      x[i] = maps[i].apply(p.x[i], p.gap_lo[i], p.gap_hi[i], log_jac);
      phase += xi[i] * x[i];
    }
    const double fx = f(x);
    if (fx == 0.0) return Cx{};
    return with_jacobian(fx * Cx{std::cos(phase), -std::sin(phase)}, log_jac);
  };
  QuadratureConfig de_cfg = cfg;
  IntegralResult r = finish(run_box(g, box, de_cfg), "fourier_num");
  if (cfg.rule == Rule::AdaptiveGK) {
    const double rad = cfg.truncation_radius;
    std::vector<std::pair<double, double>> cube(dims, {-rad, rad});
    PointIntegrand h = [&](std::span<const double> t) {
      double phase = 0.0;
      for (std::size_t i = 0; i < dims; ++i) phase += xi[i] * t[i];
      return f(t) * Cx{std::cos(phase), -std::sin(phase)};
    };
    const Sample s = run_gk_box(h, cube, cfg);
    r.cross_checked = true;
    r.cross_check_value = s.value;
    r.disagreement = !s.ok || std::abs(s.value - r.value) > 10.0 * (s.error + r.error_estimate);
    r.evaluations += s.evals;
  }
  return r;
}

double parseval_radius(double envelope, double abs_tol, double start) {
  double r = start;
  while (envelope * std::exp(-std::numbers::pi * r / 4.0) >= abs_tol / 10.0 && r < 1e4) r *= 1.5;
  return r;
}

IntegralResult parseval_lhs(const PointIntegrand& F, const PointIntegrand& G, int dims, const QuadratureConfig& cfg) {
  cfg.validate();
  if (dims < 1) throw DomainError("parseval_lhs: requires dims >= 1");
  std::vector<double> probe(dims, 0.0);
  double envelope = std::abs(F(probe) * std::conj(G(probe)));
  std::fill(probe.begin(), probe.end(), 0.5);
  envelope = std::max(envelope, std::abs(F(probe) * std::conj(G(probe))));
  const double radius = parseval_radius(envelope, cfg.abs_tol, cfg.truncation_radius);

  // Frequency axes are mapped through xi = s log(v / (1 - v)).
  constexpr double kScale = 2.0;
  std::vector<std::pair<double, double>> box(dims, {0.0, 1.0});
  std::vector<double> xi(dims);
  BoxIntegrand g = [&](const BoxPoint& p) {
    double log_jac = 0.0;
    for (int i = 0; i < dims; ++i) {
      xi[i] = kScale * std::log(p.gap_lo[i] / p.gap_hi[i]);
      if (std::abs(xi[i]) > radius) return Cx{};
      log_jac += std::log(kScale) - std::log(p.gap_lo[i]) - std::log(p.gap_hi[i]);
    }
    return with_jacobian(F(xi) * std::conj(G(xi)), log_jac);
  };
  return finish(run_box(g, box, cfg), "parseval_lhs");
}

}  // namespace conefourier
