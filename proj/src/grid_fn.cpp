#include "fracfund/grid_fn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracfund/errors.hpp"

namespace fracfund {

GridFn::GridFn(double a, double b, int n_intervals, std::vector<Eigen::MatrixXd> values)
    : a_(a), b_(b), n_(n_intervals), values_(std::move(values)) {
  if (!(b >= a)) throw GridError("GridFn: need b >= a");
  if (n_intervals < 0) throw GridError("GridFn: negative interval count");
  if (n_intervals == 0 && b > a) throw GridError("GridFn: N = 0 requires a = b");
  if (values_.size() != static_cast<std::size_t>(n_intervals) + 1) {
    throw GridError("GridFn: expected " + std::to_string(n_intervals + 1) + " values, got " +
                    std::to_string(values_.size()));
  }
  for (const auto& v : values_) {
    if (v.rows() != values_.front().rows() || v.cols() != values_.front().cols()) {
      throw GridError("GridFn: entries must share one shape");
    }
  }
}

GridFn GridFn::zeros(double a, double b, int n_intervals, Eigen::Index rows, Eigen::Index cols) {
  std::vector<Eigen::MatrixXd> v(static_cast<std::size_t>(std::max(n_intervals, 0)) + 1,
                                 Eigen::MatrixXd::Zero(rows, cols));
  return GridFn(a, b, n_intervals, std::move(v));
}

GridFn GridFn::sample(double a, double b, int n_intervals,
                      const std::function<Eigen::MatrixXd(double)>& f) {
  std::vector<Eigen::MatrixXd> v;
  v.reserve(static_cast<std::size_t>(n_intervals) + 1);
  const double h = n_intervals > 0 ? (b - a) / n_intervals : 0.0;
  for (int i = 0; i <= n_intervals; ++i) {
    v.push_back(f(i == n_intervals ? b : a + i * h));
  }
  return GridFn(a, b, n_intervals, std::move(v));
}

double GridFn::node(int i) const {
  if (i == n_) return b_;
  return a_ + i * step();
}

Eigen::MatrixXd GridFn::at(double t) const {
  if (n_ == 0 || t <= a_) return values_.front();
  if (t >= b_) return values_.back();
  const double x = (t - a_) / step();
  const int k = std::min(static_cast<int>(std::floor(x)), n_ - 1);
  const double theta = x - k;
  return (1.0 - theta) * values_[static_cast<std::size_t>(k)] +
         theta * values_[static_cast<std::size_t>(k) + 1];
}

GridFn GridFn::slice(int first, int last) const {
  if (first < 0 || last > n_ || first > last) throw GridError("GridFn::slice: bad node range");
  std::vector<Eigen::MatrixXd> v(values_.begin() + first, values_.begin() + last + 1);
  return GridFn(node(first), node(last), last - first, std::move(v));
}

double GridFn::max_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, op_norm(v));
  return m;
}

bool GridFn::same_grid(const GridFn& other) const {
  const double scale = std::max({1.0, std::abs(a_), std::abs(b_)});
  return n_ == other.n_ && std::abs(a_ - other.a_) <= 1e-12 * scale &&
         std::abs(b_ - other.b_) <= 1e-12 * scale;
}

GridFn& GridFn::operator+=(const GridFn& other) {
  if (!same_grid(other)) throw GridError("GridFn: grid mismatch in +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& other) {
  if (!same_grid(other)) throw GridError("GridFn: grid mismatch in -=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFn& GridFn::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

GridFn operator+(GridFn lhs, const GridFn& rhs) { return lhs += rhs; }
GridFn operator-(GridFn lhs, const GridFn& rhs) { return lhs -= rhs; }
GridFn operator*(double s, GridFn f) { return f *= s; }

double max_distance(const GridFn& f, const GridFn& g) {
  if (f.size() != g.size()) throw GridError("max_distance: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, op_norm(f[i] - g[i]));
  return m;
}

}  // namespace fracfund
