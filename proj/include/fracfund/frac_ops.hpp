#pragma once

#include <vector>

#include "fracfund/grid_fn.hpp"
#include "fracfund/quadrature.hpp"

namespace fracfund {

/// Constants controlling the fractional operators of order alpha in (0, 1).
struct OpConstants {
  double alpha = 0.0;
  double H_I = 0.0;  ///< Hoelder constant of I^alpha: 2 / Gamma(alpha + 1)
  double M_R = 0.0;  ///< bound of R^alpha: sin(alpha pi) / (alpha pi)
  double H_J = 0.0;  ///< Hoelder constant of J^alpha: (1 + M_R) H_I
  double M_J = 0.0;  ///< 1 + M_R
};

OpConstants op_constants(double alpha);

/// Weights of the product trapezoidal rule for the Riemann-Liouville integral on a uniform
/// grid: (I^alpha phi)(t_i) = sum_{k=0}^{i} w(i, k) phi_k for piecewise-linear phi.
class RiemannWeights {
 public:
  RiemannWeights(double alpha, double h, int max_n);

  double operator()(int i, int k) const;

  /// Contribution of subinterval [k, k+1] to node i >= k + 1: (falling, rising) weights.
  double falling(int i, int k) const { return scale_ * fall_[static_cast<std::size_t>(i - k)]; }
  double rising(int i, int k) const { return scale_ * rise_[static_cast<std::size_t>(i - k)]; }

 private:
  double scale_;
  std::vector<double> fall_;
  std::vector<double> rise_;
};

/// Weights of the J operator on a uniform grid: for left-sided J from node 0,
///   (J phi)(t_m) = sum_{k=0}^{m} row(m)[k] phi_k,
/// already multiplied by (t_m - a)^{1-alpha} h^{2 alpha - 1} h / Gamma(alpha).
/// Translation invariant, so the same table drives every column of the fundamental matrix.
class JWeights {
 public:
  JWeights(double alpha, double h, int max_m);

  int max_m() const { return max_m_; }
  const double* row(int m) const { return data_.data() + offset(m); }

 private:
  static std::size_t offset(int m) {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2;
  }
  int max_m_;
  std::vector<double> data_;
};

/// Fractional integral of piecewise-linear phi, sampled on phi's own grid.
GridFn fractional_integral(const GridFn& phi, double alpha, Side side);

/// Left Caputo derivative by the L1 scheme; node 0 repeats the node-1 value.
GridFn caputo_derivative(const GridFn& x, double alpha);

/// Evaluator of the kernel
///   K(xi, tau) = tau^{alpha-1} int_0^1 eta^alpha (1-eta)^{-alpha} (tau + eta (xi - tau))^{-alpha} d eta
/// on 0 < tau < xi. The eta-range is cut into geometric panels towards eta = 0 when tau / xi is
/// small, with fixed-size Gauss rules on each panel.
class KernelK {
 public:
  explicit KernelK(double alpha);
  double operator()(double xi, double tau) const;
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  quad::UnitRule head_;  // weight eta^alpha
  quad::UnitRule mid_;   // Legendre
  quad::UnitRule tail_;  // weight (1 - eta)^{-alpha}
  quad::UnitRule whole_; // weight eta^alpha (1 - eta)^{-alpha}
};

double kernel_K(double xi, double tau, double alpha);

/// R^alpha on piecewise-linear phi. The value at t = a (left side) is the empty integral 0,
/// although (R phi)(t) -> r_of_constant(alpha) phi(a) as t -> a+.
GridFn r_operator(const GridFn& phi, double alpha, Side side);

/// (R 1)(t) for any t > a: alpha Gamma(alpha)^2 / Gamma(2 alpha) - 1.
double r_of_constant(double alpha);

GridFn j_operator(const GridFn& phi, double alpha, Side side);

/// phi(a + b - t), the reflection that swaps left- and right-sided operators.
GridFn mirror(const GridFn& phi);

}  // namespace fracfund
