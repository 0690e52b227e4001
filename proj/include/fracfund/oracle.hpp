#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

// Reference implementations used to cross-check the production modules. Nothing here shares
// quadrature code with frac_ops, fundamental or cauchy.
namespace fracfund::oracle {

/// Integral of `integrand` over [lo, hi], where integrand(x) behaves like
/// (x - lo)^p_lo near lo and (hi - x)^p_hi near hi (p > -1).
struct QuadSpec {
  std::function<double(double)> integrand;
  double lo = 0.0;
  double hi = 1.0;
  double p_lo = 0.0;
  double p_hi = 0.0;
  double tol = 1e-12;
  int max_panels = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// Global adaptive bisection. Panels touching a declared singular endpoint use a Gauss-Jacobi
/// rule whose weight matches the exponent; interior panels use Gauss-Legendre. Panel error is
/// the difference between a 12- and a 24-point rule. Throws ConvergenceError when the panel
/// budget runs out before the summed error estimate drops below tol.
QuadResult adaptive_quad(const QuadSpec& spec);

/// Component-wise adaptive_quad of a vector-valued integrand of dimension dim.
Eigen::VectorXd adaptive_quad(const std::function<Eigen::VectorXd(double)>& integrand, Eigen::Index dim,
                              double lo, double hi, double p_lo, double p_hi, double tol);

/// Gauss-Jacobi nodes/weights on [-1, 1] for (1-x)^a (1+x)^b by Newton iteration on the
/// three-term recurrence, in long double.
std::pair<std::vector<long double>, std::vector<long double>> gauss_jacobi_newton(int n, long double a,
                                                                                  long double b);

/// F(t, s) for constant A0 with dt = t - s: E_{alpha,alpha}(dt^alpha A0).
Eigen::MatrixXd constant_coeff_F(const Eigen::MatrixXd& a0, double alpha, double dt, double ml_tol = 1e-14);

/// Least-squares slope of log(err) against log(1/N).
double convergence_order(const std::vector<std::pair<int, double>>& errors);

/// Scalar E_{alpha,beta}(z) summed in 50-digit binary floating point.
double mittag_leffler_highprec(double alpha, double beta, double z);

}  // namespace fracfund::oracle
