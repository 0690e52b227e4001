#pragma once

#include <Eigen/Dense>

namespace fracfund {

/// Gamma function for x > 0: rational Lanczos fit (13 terms) in extended precision, about 1 ulp.
/// Throws DomainError for x <= 0 and OverflowError once the result leaves double range.
double gamma(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_fn(double a, double b);

struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
  double tol = 1e-14;
  int max_terms = 4000;

  void validate() const;
};

/// Two-parameter Mittag-Leffler function of a square matrix,
///   E_{alpha,beta}(Z) = sum_k Z^k / Gamma(alpha k + beta),
/// with T_k = Z^k / Gamma(alpha k + beta) while both parts are finite, then by the recurrence
/// T_{k+1} = T_k Z Gamma(alpha k + beta) / Gamma(alpha (k+1) + beta).
/// Summation stops once two consecutive terms fall below 0.1 * tol in max-norm.
Eigen::MatrixXd mittag_leffler(const MLParams& params, const Eigen::MatrixXd& z);

double mittag_leffler(const MLParams& params, double z);

/// Shorthand for the scalar E_{alpha,beta}(z) at default tolerance.
double mittag_leffler(double alpha, double beta, double z);

}  // namespace fracfund
