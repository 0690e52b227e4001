#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "fracfund/problem.hpp"

namespace fracfund::testing {

inline Eigen::MatrixXd rotation_a0() {
  Eigen::MatrixXd m(2, 2);
  m << 0.0, 1.0, -1.0, 0.0;
  return m;
}

inline Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

inline MatrixFn constant_matrix(const Eigen::MatrixXd& m) {
  return [m](double) { return m; };
}

inline MatrixFn cosine_matrix(const Eigen::MatrixXd& m, double omega) {
  return [m, omega](double t) -> Eigen::MatrixXd { return m * std::cos(omega * t); };
}

inline VectorFn constant_vector(const Eigen::VectorXd& v) {
  return [v](double) { return v; };
}

/// b(t) = (sin t, 1).
inline VectorFn sin_one() {
  return [](double t) { return vec2(std::sin(t), 1.0); };
}

/// Problem on [t0, theta] starting from the single vector w0 at t0.
inline CauchyProblem point_start(double alpha, double t0, double theta, MatrixFn a, VectorFn b,
                                 const Eigen::VectorXd& w0) {
  CauchyProblem p;
  p.alpha = alpha;
  p.t0 = t0;
  p.theta = theta;
  p.n = w0.size();
  p.A = std::move(a);
  p.b = std::move(b);
  p.t_star = t0;
  p.history = History::constant(w0, t0, t0, 0);
  return p;
}

/// The cosine problem used throughout: A = A0 cos(4t), b = (sin t, 1), x(0) = (1, 0).
inline CauchyProblem cosine_problem(double alpha = 0.5) {
  return point_start(alpha, 0.0, 1.0, cosine_matrix(rotation_a0(), 4.0), sin_one(), vec2(1.0, 0.0));
}

inline GridFn scalar_samples(double a, double b, int n, double (*f)(double)) {
  return GridFn::sample(a, b, n, [f](double t) -> Eigen::MatrixXd { return Eigen::MatrixXd::Constant(1, 1, f(t)); });
}

}  // namespace fracfund::testing
