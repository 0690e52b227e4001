#include "fracfund/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "fracfund/errors.hpp"
#include "fracfund/special_fn.hpp"

namespace fracfund::quad {
namespace {

constexpr int kEndpointNodes = 32;
constexpr int kNearNodes = 16;
constexpr int kFarNodes = 8;

}  // namespace

UnitRule gauss_jacobi_unit(int n, double p, double q) {
  if (n < 1) throw DomainError("gauss_jacobi_unit: need at least one node");
  if (!(p > -1.0) || !(q > -1.0)) {
    throw DomainError("gauss_jacobi_unit: exponents must exceed -1");
  }
  // On [-1, 1] the weight is (1 - x)^a (1 + x)^b with x = 2u - 1.
  const double a = q;
  const double b = p;
  const double ab = a + b;

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double beta;
    if (k == 1) {
      // (1 + a + b) cancels analytically; keeps a + b = -1 well defined.
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }

  UnitRule rule;
  rule.p = p;
  rule.q = q;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  // Total mass of u^p (1-u)^q on [0, 1].
  const double mass = beta_fn(p + 1.0, q + 1.0);
  if (n == 1) {
    rule.nodes[0] = 0.5 * (diag(0) + 1.0);
    rule.weights[0] = mass;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("gauss_jacobi_unit: eigenvalue solver failed for n = " + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (solver.eigenvalues()(i) + 1.0);
    rule.weights[static_cast<std::size_t>(i)] = mass * v0 * v0;
  }
  return rule;
}

UnitRule gauss_legendre_unit(int n) { return gauss_jacobi_unit(n, 0.0, 0.0); }

HatMomentTable::HatMomentTable(double p, double q, int max_m) : p_(p), q_(q), max_m_(max_m) {
  if (max_m < 0) throw DomainError("HatMomentTable: negative size");
  data_.assign(offset(max_m + 1), 0.0);

  const UnitRule both = gauss_jacobi_unit(kEndpointNodes, p, q);
  const UnitRule left = gauss_jacobi_unit(kEndpointNodes, p, 0.0);
  const UnitRule right = gauss_jacobi_unit(kEndpointNodes, 0.0, q);
  const UnitRule near = gauss_legendre_unit(kNearNodes);
  const UnitRule far = gauss_legendre_unit(kFarNodes);

  // far_left[k][i] = (k + s_i)^p and far_right[d][i] = (d + 1 - s_i)^q.
  std::vector<double> far_left(static_cast<std::size_t>(max_m + 1) * far.size());
  std::vector<double> far_right(far_left.size());
  for (int k = 0; k <= max_m; ++k) {
    for (std::size_t i = 0; i < far.size(); ++i) {
      const std::size_t idx = static_cast<std::size_t>(k) * far.size() + i;
      far_left[idx] = std::pow(k + far.nodes[i], p);
      far_right[idx] = std::pow(k + 1.0 - far.nodes[i], q);
    }
  }

  for (int m = 1; m <= max_m; ++m) {
    double* w = data_.data() + offset(m);
    const double md = m;
    for (int k = 0; k < m; ++k) {
      const double lo = k;
      // Contributions of hat_k (falling) and hat_{k+1} (rising) on [k, k+1].
      double fall = 0.0;
      double rise = 0.0;
      if (m == 1) {
        for (std::size_t i = 0; i < both.size(); ++i) {
          fall += both.weights[i] * (1.0 - both.nodes[i]);
          rise += both.weights[i] * both.nodes[i];
        }
      } else if (k == 0) {
        // u^p is the rule weight; (m - u)^q is smooth here.
        for (std::size_t i = 0; i < left.size(); ++i) {
          const double u = left.nodes[i];
          const double g = left.weights[i] * std::pow(md - u, q);
          fall += g * (1.0 - u);
          rise += g * u;
        }
      } else if (k == m - 1) {
        for (std::size_t i = 0; i < right.size(); ++i) {
          const double s = right.nodes[i];
          const double u = lo + s;
          const double g = right.weights[i] * std::pow(u, p);
          fall += g * (1.0 - s);
          rise += g * s;
        }
      } else if (k == 1 || k == m - 2) {
        for (std::size_t i = 0; i < near.size(); ++i) {
          const double s = near.nodes[i];
          const double u = lo + s;
          const double g = near.weights[i] * std::pow(u, p) * std::pow(md - u, q);
          fall += g * (1.0 - s);
          rise += g * s;
        }
      } else {
        // Both factors are smooth; reuse the tabulated powers.
        const double* pk = far_left.data() + static_cast<std::size_t>(k) * far.size();
        const double* qd =
            far_right.data() + static_cast<std::size_t>(m - k - 1) * far.size();
        for (std::size_t i = 0; i < far.size(); ++i) {
          const double s = far.nodes[i];
          const double g = far.weights[i] * pk[i] * qd[i];
          fall += g * (1.0 - s);
          rise += g * s;
        }
      }
      w[k] += fall;
      w[k + 1] += rise;
    }
  }
}

}  // namespace fracfund::quad
