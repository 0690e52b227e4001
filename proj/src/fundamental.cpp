#include "fracfund/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracfund/errors.hpp"
#include "fracfund/frac_ops.hpp"
#include "fracfund/parallel.hpp"
#include "fracfund/special_fn.hpp"

namespace fracfund {
namespace {

constexpr double kMinRcond = 1e-13;

// A(t_i) for every node, column-major n*n blocks.
std::vector<double> sample_coefficients(const CauchyProblem& problem, const TriangleGrid& grid) {
  const auto nn = static_cast<std::size_t>(problem.n * problem.n);
  std::vector<double> out(static_cast<std::size_t>(grid.N + 1) * nn);
  for (int i = 0; i <= grid.N; ++i) {
    const Eigen::MatrixXd a = problem.A(grid.node(i));
    if (a.rows() != problem.n || a.cols() != problem.n) {
      throw DomainError("coefficient A(t) has the wrong shape at t = " + std::to_string(grid.node(i)));
    }
    std::copy(a.data(), a.data() + nn, out.begin() + static_cast<std::ptrdiff_t>(i * nn));
  }
  return out;
}

Eigen::Map<const Eigen::MatrixXd> block(const std::vector<double>& buf, std::size_t idx, Eigen::Index n) {
  return Eigen::Map<const Eigen::MatrixXd>(buf.data() + idx * static_cast<std::size_t>(n * n), n, n);
}

// acc += w * src over nn doubles.
inline void axpy(double* acc, double w, const double* src, std::size_t nn) {
  for (std::size_t e = 0; e < nn; ++e) acc[e] += w * src[e];
}

Eigen::PartialPivLU<Eigen::MatrixXd> factor_step(const Eigen::MatrixXd& m, double t, double s) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (!(lu.rcond() > kMinRcond)) {
    throw SingularSystemError("implicit step matrix is singular at (t, s) = (" + std::to_string(t) + ", " +
                              std::to_string(s) + "); refine the grid");
  }
  return lu;
}

}  // namespace

void TriangleGrid::validate() const {
  if (!(theta > t0)) throw GridError("TriangleGrid: need theta > t0");
  if (N < 1) throw GridError("TriangleGrid: need N >= 1");
}

FundamentalField::FundamentalField(TriangleGrid grid, Eigen::Index n, double alpha)
    : grid_(grid), n_(n), alpha_(alpha), data_(grid.node_count() * static_cast<std::size_t>(n * n), 0.0) {
  grid_.validate();
}

double FundamentalField::max_norm() const {
  double m = 0.0;
  for (int i = 0; i <= grid_.N; ++i) {
    for (int j = 0; j <= i; ++j) m = std::max(m, op_norm((*this)(i, j)));
  }
  return m;
}

double max_distance(const FundamentalField& f, const FundamentalField& g) {
  if (f.grid().N != g.grid().N || f.dim() != g.dim()) throw GridError("max_distance: field shapes differ");
  double m = 0.0;
  for (int i = 0; i <= f.grid().N; ++i) {
    for (int j = 0; j <= i; ++j) m = std::max(m, op_norm(f(i, j) - g(i, j)));
  }
  return m;
}

double bielecki_distance(const FundamentalField& f, const FundamentalField& g, double kappa) {
  if (f.grid().N != g.grid().N || f.dim() != g.dim()) throw GridError("bielecki_distance: field shapes differ");
  const double h = f.grid().step();
  double m = 0.0;
  for (int i = 0; i <= f.grid().N; ++i) {
    for (int j = 0; j <= i; ++j) m = std::max(m, op_norm(f(i, j) - g(i, j)) * std::exp(-kappa * (i - j) * h));
  }
  return m;
}

AprioriBounds bounds(const CauchyProblem& problem, int intervals) {
  problem.validate();
  const OpConstants c = op_constants(problem.alpha);
  AprioriBounds out;
  const double h = (problem.theta - problem.t0) / intervals;
  for (int i = 0; i <= intervals; ++i) {
    const double t = i == intervals ? problem.theta : problem.t0 + i * h;
    out.M_A = std::max(out.M_A, op_norm(problem.A(t)));
  }
  out.kappa = out.M_A > 0.0 ? std::pow(2.0 * out.M_A * c.M_J, 1.0 / problem.alpha) : 1.0;
  out.contraction = std::pow(out.kappa, -problem.alpha) * out.M_A * c.M_J;
  const double span = problem.theta - problem.t0;
  out.M_F = std::exp(span * out.kappa) / (gamma(problem.alpha) * (1.0 - out.contraction));
  MLParams ml;
  ml.alpha = problem.alpha;
  ml.beta = 1.0;
  // Past the series range E_alpha is astronomically large; the bound is then vacuous.
  try {
    out.H_F = std::isfinite(out.M_F)
                  ? c.H_J * out.M_A * out.M_F * mittag_leffler(ml, std::pow(span, problem.alpha) * out.M_A * c.M_J)
                  : INFINITY;
  } catch (const ConvergenceError&) {
    out.H_F = INFINITY;
  }
  return out;
}

FundamentalField solve_F(const CauchyProblem& problem, const TriangleGrid& grid) {
  problem.validate();
  grid.validate();
  const Eigen::Index n = problem.n;
  const auto nn = static_cast<std::size_t>(n * n);
  const std::vector<double> a = sample_coefficients(problem, grid);
  const JWeights weights(problem.alpha, grid.step(), grid.N);
  const Eigen::MatrixXd start = Eigen::MatrixXd::Identity(n, n) / gamma(problem.alpha);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

  FundamentalField field(grid, n, problem.alpha);
  parallel_for(static_cast<std::size_t>(grid.N) + 1, [&](std::size_t col) {
    const int j = static_cast<int>(col);
    const int steps = grid.N - j;
    // g[k] = A(t_{j+k}) F(t_{j+k}, t_j)
    std::vector<double> g(static_cast<std::size_t>(steps + 1) * nn);
    std::vector<double> acc(nn);
    field(j, j) = start;
    Eigen::Map<Eigen::MatrixXd>(g.data(), n, n) = block(a, static_cast<std::size_t>(j), n) * start;
    for (int m = 1; m <= steps; ++m) {
      const double* row = weights.row(m);
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int k = 0; k < m; ++k) axpy(acc.data(), row[k], g.data() + static_cast<std::size_t>(k) * nn, nn);
      const auto a_now = block(a, static_cast<std::size_t>(j + m), n);
      const Eigen::MatrixXd rhs = start + Eigen::Map<const Eigen::MatrixXd>(acc.data(), n, n);
      const auto lu = factor_step(eye - row[m] * a_now, grid.node(j + m), grid.node(j));
      const Eigen::MatrixXd f = lu.solve(rhs);
      field(j + m, j) = f;
      Eigen::Map<Eigen::MatrixXd>(g.data() + static_cast<std::size_t>(m) * nn, n, n) = a_now * f;
    }
  });
  return field;
}

FundamentalField solve_F_picard(const CauchyProblem& problem, const TriangleGrid& grid, int max_iter,
                                double tol, PicardStats* stats) {
  problem.validate();
  grid.validate();
  if (max_iter < 1) throw DomainError("solve_F_picard: max_iter must be positive");
  if (!(tol > 0.0)) throw DomainError("solve_F_picard: tol must be positive");
  const Eigen::Index n = problem.n;
  const std::vector<double> a = sample_coefficients(problem, grid);
  const JWeights weights(problem.alpha, grid.step(), grid.N);
  const double kappa = bounds(problem, grid.N).kappa;
  const double h = grid.step();
  const Eigen::MatrixXd start = Eigen::MatrixXd::Identity(n, n) / gamma(problem.alpha);

  FundamentalField field(grid, n, problem.alpha);
  std::vector<int> iterations(static_cast<std::size_t>(grid.N) + 1, 0);
  std::vector<double> initial(static_cast<std::size_t>(grid.N) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(grid.N) + 1, [&](std::size_t col) {
    const int j = static_cast<int>(col);
    const int steps = grid.N - j;
    const auto len = static_cast<std::size_t>(steps + 1);
    std::vector<Eigen::MatrixXd> phi(len, start);
    std::vector<Eigen::MatrixXd> next(len);
    std::vector<Eigen::MatrixXd> g(len);
    for (int it = 1; it <= max_iter; ++it) {
      for (std::size_t k = 0; k < len; ++k) g[k] = block(a, static_cast<std::size_t>(j) + k, n) * phi[k];
      double diff = 0.0;
      for (int m = 0; m <= steps; ++m) {
        Eigen::MatrixXd v = start;
        if (m > 0) {
          const double* row = weights.row(m);
          for (int k = 0; k <= m; ++k) v += row[k] * g[static_cast<std::size_t>(k)];
        }
        diff = std::max(diff, op_norm(v - phi[static_cast<std::size_t>(m)]) * std::exp(-kappa * m * h));
        next[static_cast<std::size_t>(m)] = std::move(v);
      }
      std::swap(phi, next);
      if (it == 1) initial[col] = diff;
      if (diff <= tol) {
        iterations[col] = it;
        for (int m = 0; m <= steps; ++m) field(j + m, j) = phi[static_cast<std::size_t>(m)];
        return;
      }
    }
    throw ConvergenceError("solve_F_picard: no convergence in " + std::to_string(max_iter) +
                           " iterations for column s = " + std::to_string(grid.node(j)));
  });
  if (stats) {
    stats->max_iterations = *std::max_element(iterations.begin(), iterations.end());
    stats->max_initial_residual = *std::max_element(initial.begin(), initial.end());
  }
  return field;
}

FundamentalField solve_G_dual(const CauchyProblem& problem, const TriangleGrid& grid) {
  problem.validate();
  grid.validate();
  const Eigen::Index n = problem.n;
  const auto nn = static_cast<std::size_t>(n * n);
  const std::vector<double> a = sample_coefficients(problem, grid);
  const JWeights weights(problem.alpha, grid.step(), grid.N);
  const Eigen::MatrixXd start = Eigen::MatrixXd::Identity(n, n) / gamma(problem.alpha);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

  FundamentalField field(grid, n, problem.alpha);
  parallel_for(static_cast<std::size_t>(grid.N) + 1, [&](std::size_t rowidx) {
    const int i = static_cast<int>(rowidx);
    // g[j] = G(t_i, t_j) A(t_j), filled from j = i downwards.
    std::vector<double> g(static_cast<std::size_t>(i + 1) * nn);
    std::vector<double> acc(nn);
    field(i, i) = start;
    Eigen::Map<Eigen::MatrixXd>(g.data() + static_cast<std::size_t>(i) * nn, n, n) =
        start * block(a, static_cast<std::size_t>(i), n);
    for (int j = i - 1; j >= 0; --j) {
      const int m = i - j;
      const double* row = weights.row(m);
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int k = 1; k <= m; ++k) {
        axpy(acc.data(), row[k], g.data() + static_cast<std::size_t>(j + k) * nn, nn);
      }
      const auto a_now = block(a, static_cast<std::size_t>(j), n);
      const Eigen::MatrixXd rhs = start + Eigen::Map<const Eigen::MatrixXd>(acc.data(), n, n);
      // G (Id - w A) = rhs, solved through the transpose.
      const Eigen::MatrixXd step = eye - row[0] * a_now;
      const auto lu = factor_step(step.transpose(), grid.node(i), grid.node(j));
      const Eigen::MatrixXd gval = lu.solve(rhs.transpose()).transpose();
      field(i, j) = gval;
      Eigen::Map<Eigen::MatrixXd>(g.data() + static_cast<std::size_t>(j) * nn, n, n) = gval * a_now;
    }
  });
  return field;
}

Eigen::MatrixXd z_value(const FundamentalField& field, int i, int j) {
  if (i <= j) throw DomainError("z_value: Z is singular on the diagonal; need i > j");
  if (j < 0 || i > field.grid().N) throw GridError("z_value: index out of range");
  const double dt = field.grid().node(i) - field.grid().node(j);
  return field(i, j) / std::pow(dt, 1.0 - field.alpha());
}

}  // namespace fracfund
