#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "fracfund/grid_fn.hpp"

namespace fracfund {

using MatrixFn = std::function<Eigen::MatrixXd(double)>;
using VectorFn = std::function<Eigen::VectorXd(double)>;

/// Initial history w* on [t0, t*], optionally with its Caputo derivative on the same grid.
/// When t* = t0 the history is the single vector w0.
struct History {
  GridFn w;
  std::optional<GridFn> caputo;

  /// w* = w0 + I^alpha phi on phi's grid; the Caputo derivative is phi itself.
  static History from_generator(const Eigen::VectorXd& w0, const GridFn& phi, double alpha);
  /// Constant history w* = w0 on [t0, t_star] with `intervals` subintervals.
  static History constant(const Eigen::VectorXd& w0, double t0, double t_star, int intervals);
  /// Samples only; the Caputo derivative is reconstructed by the L1 scheme when needed.
  static History from_samples(GridFn w);

  double t0() const { return w.a(); }
  double t_star() const { return w.b(); }
  Eigen::VectorXd start() const { return w[0]; }
  Eigen::VectorXd end() const { return w[w.size() - 1]; }

  /// Stored Caputo derivative, or the L1 reconstruction from the samples.
  GridFn caputo_derivative(double alpha) const;
};

/// Linear Caputo equation  D^alpha x = A(t) x + b(t) on [t*, theta]  with x = w* on [t0, t*].
struct CauchyProblem {
  double alpha = 0.5;
  double t0 = 0.0;
  double theta = 1.0;
  Eigen::Index n = 1;
  MatrixFn A;
  VectorFn b;
  double t_star = 0.0;
  History history;

  void validate() const;

  /// Index of t_star on the uniform grid with N subintervals; throws GridError if t_star is
  /// not a node.
  int star_index(int intervals) const;
};

}  // namespace fracfund
