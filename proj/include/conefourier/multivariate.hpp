#pragma once

// Multi-indices, the Gegenbauer-product orthogonal basis on the unit ball,
// and the Laguerre and Jacobi orthogonal bases on the cone.

#include <functional>
#include <span>
#include <vector>

#include "conefourier/quadrature.hpp"

namespace conefourier {

class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> k);

  int dim() const { return static_cast<int>(k_.size()); }
  int operator[](int i) const { return k_[i]; }
  const std::vector<int>& components() const { return k_; }
  int total() const { return tail_[0]; }
  /// k_i + ... + k_{d-1} (0-based), with tail(d) = 0.
  int tail(int i) const { return tail_[i]; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.k_ == b.k_; }

 private:
  std::vector<int> k_;
  std::vector<int> tail_;
};

/// All multi-indices of dimension d and total degree m, lexicographic order.
std::vector<MultiIndex> multi_indices(int d, int m);

/// Point of the ball with its partial complements
/// c[j] = 1 - (x_1^2 + ... + x_j^2), j = 0..d.
struct BallPoint {
  std::vector<double> x;
  std::vector<double> complement;

  /// Complements from the coordinates; requires ||x|| <= 1 + 1e-12.
  static BallPoint from_coordinates(std::vector<double> x);
  /// Caller-supplied complements (for example, exact ones from a quadrature map).
  static BallPoint with_complements(std::vector<double> x, std::vector<double> c);

  int dim() const { return static_cast<int>(x.size()); }
};

struct ConePoint {
  double t = 0.0;
  BallPoint y;  // x / t

  /// From cone coordinates (t, x) with ||x|| <= t and t > 0.
  static ConePoint from_tx(double t, const std::vector<double>& x);
  std::vector<double> x() const;
};

struct LaguerreConeParams {
  double beta;
  double mu;
  int d;
  /// Throws DomainError unless beta > -d and mu > -1/2.
  void validate() const;
};

struct JacobiConeParams {
  double beta;
  double mu;
  double gamma;
  int d;
  /// Throws DomainError unless beta > -d, mu > -1/2 and gamma > -1.
  void validate() const;
};

/// binomial(n + d - 1, n).
long long space_dimension(int n, int d);

/// (1 - ||x||^2)^(mu - 1/2).
double ball_weight(double mu, const BallPoint& p);

/// Parameter of the Gegenbauer factor on axis i (0-based):
/// mu + tail(i+1) + (d - 1 - i)/2.
double ball_lambda(const MultiIndex& k, double mu, int i);

/// Gegenbauer-product basis polynomial P_k^mu(x).
double ball_op(const MultiIndex& k, double mu, const BallPoint& p);

/// Integral of P_k^mu(x)^2 (1 - ||x||^2)^(mu - 1/2) over the ball.
double ball_norm(const MultiIndex& k, double mu);

/// One-variable family q(degree, alpha, t).
using RadialFamily = std::function<double(int, double, double)>;

/// q_{n-m}^{alpha_m}(t) t^m P_k(x/t), alpha_m = d + 2m + 2mu - 1, m = |k|.
double cone_basis(const RadialFamily& q, const MultiIndex& k, int n, const ConePoint& p, double mu);

/// L_{n-m}^{2m+2mu+beta+d-1}(t) t^m P_k(x/t).
double laguerre_cone(const MultiIndex& k, int n, const LaguerreConeParams& params, const ConePoint& p);

/// P_{n-m}^{(2m+2mu+beta+d-1, gamma)}(1 - 2t) t^m P_k(x/t).
double jacobi_cone(const MultiIndex& k, int n, const JacobiConeParams& params, const ConePoint& p);

/// Squared norms of the cone bases under their weights.
double laguerre_cone_norm(const MultiIndex& k, int n, const LaguerreConeParams& params);
double jacobi_cone_norm(const MultiIndex& k, int n, const JacobiConeParams& params);

/// Cone weight w(t) on the radial axis: t^beta e^{-t} or t^beta (1-t)^gamma.
struct ConeWeight {
  enum class Kind { Laguerre, Jacobi } kind;
  double beta;
  double mu;
  double gamma = 0.0;
  int d;
};

using ConeFunction = std::function<double(const ConePoint&)>;

/// Integral of f g W over the cone, computed as
/// int_0^T [int_B f(t, t y) g(t, t y) (1 - ||y||^2)^(mu - 1/2) dy] t^(d + 2mu - 1) w(t) dt.
IntegralResult cone_inner_product_separated(const ConeFunction& f, const ConeFunction& g, const ConeWeight& w,
                                            const QuadratureConfig& cfg = {});

}  // namespace conefourier
