#pragma once

#include <cmath>
#include <type_traits>
#include <vector>

namespace fracfund::quad {

/// Nodes on [0, 1] and weights for  int_0^1 f(u) u^p (1 - u)^q du  ~  sum_i w_i f(u_i).
struct UnitRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double p = 0.0;
  double q = 0.0;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Jacobi rule (Golub-Welsch) for the weight u^p (1-u)^q on [0, 1], p, q > -1.
/// p = q = 0 gives Gauss-Legendre.
UnitRule gauss_jacobi_unit(int n, double p, double q);

UnitRule gauss_legendre_unit(int n);

/// Integrates f(x) (x - lo)^p (hi - x)^q over [lo, hi] with a unit rule built for (p, q).
template <class F>
auto integrate(const UnitRule& rule, double lo, double hi, F&& f) {
  const double len = hi - lo;
  const double scale = std::pow(len, 1.0 + rule.p + rule.q);
  using Result = std::decay_t<decltype(f(lo))>;
  Result acc = rule.weights[0] * f(lo + len * rule.nodes[0]);
  for (std::size_t i = 1; i < rule.size(); ++i) {
    acc += rule.weights[i] * f(lo + len * rule.nodes[i]);
  }
  return Result(scale * acc);
}

/// Product-integration weights on the uniform unit grid 0, 1, ..., m:
///   W[m][k] = int_0^m hat_k(u) u^p (m - u)^q du,
/// hat_k the piecewise-linear nodal basis function at node k. Rows m = 1..max_m are stored,
/// row 0 is the single value 0. Endpoint subintervals use Gauss-Jacobi rules carrying the
/// singular factor; the rest use plain Gauss-Legendre.
class HatMomentTable {
 public:
  HatMomentTable(double p, double q, int max_m);

  double p() const { return p_; }
  double q() const { return q_; }
  int max_m() const { return max_m_; }

  /// Weights for row m, length m + 1.
  const double* row(int m) const { return data_.data() + offset(m); }
  double operator()(int m, int k) const { return data_[offset(m) + static_cast<std::size_t>(k)]; }

 private:
  static std::size_t offset(int m) {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2;
  }

  double p_;
  double q_;
  int max_m_;
  std::vector<double> data_;
};

}  // namespace fracfund::quad
