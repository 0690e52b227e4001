#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace fracfund {

enum class Side { Left, Right };

enum class Interp { PiecewiseLinear };

/// Max vector norm, and for matrices the operator norm it induces (max absolute row sum).
/// A column vector is treated as a vector, so both readings agree.
inline double op_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Vector- or matrix-valued function sampled on a uniform grid a = t_0 < ... < t_N = b.
/// Every entry has the same shape; vectors are stored as n x 1 matrices.
class GridFn {
 public:
  GridFn() = default;
  GridFn(double a, double b, int n_intervals, std::vector<Eigen::MatrixXd> values);

  static GridFn zeros(double a, double b, int n_intervals, Eigen::Index rows, Eigen::Index cols = 1);
  static GridFn sample(double a, double b, int n_intervals,
                       const std::function<Eigen::MatrixXd(double)>& f);

  double a() const { return a_; }
  double b() const { return b_; }
  int intervals() const { return n_; }
  std::size_t size() const { return values_.size(); }
  double step() const { return n_ > 0 ? (b_ - a_) / n_ : 0.0; }
  double node(int i) const;
  Interp interp() const { return Interp::PiecewiseLinear; }

  Eigen::Index rows() const { return values_.empty() ? 0 : values_.front().rows(); }
  Eigen::Index cols() const { return values_.empty() ? 0 : values_.front().cols(); }
  bool is_vector() const { return cols() == 1; }

  const Eigen::MatrixXd& operator[](std::size_t i) const { return values_[i]; }
  Eigen::MatrixXd& operator[](std::size_t i) { return values_[i]; }
  const std::vector<Eigen::MatrixXd>& values() const { return values_; }

  /// Piecewise-linear interpolation; t is clamped to [a, b].
  Eigen::MatrixXd at(double t) const;

  /// Sub-grid on nodes [first, last] (inclusive).
  GridFn slice(int first, int last) const;

  /// max_i op_norm(values[i]).
  double max_norm() const;

  GridFn& operator+=(const GridFn& other);
  GridFn& operator-=(const GridFn& other);
  GridFn& operator*=(double s);

  /// True when both functions live on the same nodes (up to rounding in the endpoints).
  bool same_grid(const GridFn& other) const;

 private:
  double a_ = 0.0;
  double b_ = 0.0;
  int n_ = 0;
  std::vector<Eigen::MatrixXd> values_;
};

GridFn operator+(GridFn lhs, const GridFn& rhs);
GridFn operator-(GridFn lhs, const GridFn& rhs);
GridFn operator*(double s, GridFn f);

/// max_i op_norm(f[i] - g[i]) over shared nodes.
double max_distance(const GridFn& f, const GridFn& g);

}  // namespace fracfund
