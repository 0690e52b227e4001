#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fracfund/problem.hpp"

namespace fracfund {

/// Uniform nodes t_i = t0 + i (theta - t0) / N on the triangle {(t_i, t_j): j <= i}.
struct TriangleGrid {
  double t0 = 0.0;
  double theta = 1.0;
  int N = 1;

  double step() const { return (theta - t0) / N; }
  double node(int i) const { return i == N ? theta : t0 + i * step(); }
  std::size_t node_count() const {
    return static_cast<std::size_t>(N + 1) * static_cast<std::size_t>(N + 2) / 2;
  }
  void validate() const;
};

/// n x n matrices F(t_i, t_j) for j <= i, stored densely row by row.
class FundamentalField {
 public:
  FundamentalField() = default;
  FundamentalField(TriangleGrid grid, Eigen::Index n, double alpha);

  const TriangleGrid& grid() const { return grid_; }
  Eigen::Index dim() const { return n_; }
  double alpha() const { return alpha_; }

  Eigen::Map<const Eigen::MatrixXd> operator()(int i, int j) const {
    return Eigen::Map<const Eigen::MatrixXd>(data_.data() + offset(i, j), n_, n_);
  }
  Eigen::Map<Eigen::MatrixXd> operator()(int i, int j) {
    return Eigen::Map<Eigen::MatrixXd>(data_.data() + offset(i, j), n_, n_);
  }

  /// max over nodes of op_norm(F(t_i, t_j)).
  double max_norm() const;

 private:
  std::size_t offset(int i, int j) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(i + 1) / 2 + static_cast<std::size_t>(j)) *
           static_cast<std::size_t>(n_ * n_);
  }

  TriangleGrid grid_;
  Eigen::Index n_ = 0;
  double alpha_ = 0.0;
  std::vector<double> data_;
};

/// max over shared nodes of op_norm(F - G).
double max_distance(const FundamentalField& f, const FundamentalField& g);

/// Bielecki distance: max over nodes of op_norm(F - G) exp(-kappa (t_i - t_j)).
double bielecki_distance(const FundamentalField& f, const FundamentalField& g, double kappa);

struct AprioriBounds {
  double kappa = 1.0;
  double M_A = 0.0;
  double M_F = 0.0;
  double H_F = 0.0;
  /// kappa^{-alpha} M_A M_J, which is 1/2 whenever M_A > 0.
  double contraction = 0.0;
};

/// A-priori bounds of the fundamental matrix with M_A taken over the N + 1 grid nodes.
/// M_F and H_F are +inf when they exceed double range (the bound then says nothing).
AprioriBounds bounds(const CauchyProblem& problem, int intervals);

/// Column-by-column Volterra march of the F equation with the implicit self-weight
/// (Id - w A(t_i)) F(t_i, s) = rhs solved exactly at every step.
FundamentalField solve_F(const CauchyProblem& problem, const TriangleGrid& grid);

struct PicardStats {
  int max_iterations = 0;
  double max_initial_residual = 0.0;  ///< Bielecki norm of phi_1 - phi_0, worst column
};

/// Picard iteration of the same discrete operator, stopped in the Bielecki norm with the
/// kappa of bounds(). Throws ConvergenceError after max_iter sweeps.
FundamentalField solve_F_picard(const CauchyProblem& problem, const TriangleGrid& grid, int max_iter,
                                double tol, PicardStats* stats = nullptr);

/// Row-by-row backward march of the dual equation, where A multiplies from the right.
FundamentalField solve_G_dual(const CauchyProblem& problem, const TriangleGrid& grid);

/// Z(t_i, t_j) = F(t_i, t_j) / (t_i - t_j)^{1-alpha}; only defined for i > j.
Eigen::MatrixXd z_value(const FundamentalField& field, int i, int j);

}  // namespace fracfund
