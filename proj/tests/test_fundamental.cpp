#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "fracfund/errors.hpp"
#include "fracfund/fundamental.hpp"
#include "fracfund/oracle.hpp"
#include "fracfund/special_fn.hpp"
#include "fracfund/verify.hpp"
#include "support.hpp"

using namespace fracfund;
namespace ft = fracfund::testing;

namespace {

CauchyProblem scalar_problem(double alpha, double lambda) {
  return ft::point_start(alpha, 0.0, 1.0, ft::constant_matrix(Eigen::MatrixXd::Constant(1, 1, lambda)),
                         ft::constant_vector(Eigen::VectorXd::Zero(1)), Eigen::VectorXd::Zero(1));
}

double oracle_error(const FundamentalField& f, const Eigen::MatrixXd& a0) {
  const TriangleGrid& g = f.grid();
  double err = 0.0;
  for (int i = 0; i <= g.N; ++i) {
    const Eigen::MatrixXd ref = oracle::constant_coeff_F(a0, f.alpha(), g.node(i) - g.t0);
    for (int j = 0; j <= i; j += std::max(1, i / 16)) {
      // Stationary kernel: F(t_i, t_j) depends on i - j only.
      const Eigen::MatrixXd shifted = oracle::constant_coeff_F(a0, f.alpha(), g.node(i - j) - g.t0);
      err = std::max(err, op_norm(f(i, j) - shifted));
    }
    err = std::max(err, op_norm(f(i, 0) - ref));
  }
  return err;
}

}  // namespace

TEST_SUITE("fundamental") {
  TEST_CASE("A = 0 gives Id / Gamma(alpha) everywhere") {
    const CauchyProblem p = ft::point_start(0.4, 0.0, 2.0, ft::constant_matrix(Eigen::MatrixXd::Zero(2, 2)),
                                            ft::constant_vector(Eigen::VectorXd::Zero(2)), ft::vec2(0, 0));
    const TriangleGrid g{0.0, 2.0, 40};
    const FundamentalField f = solve_F(p, g);
    const FundamentalField d = solve_G_dual(p, g);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2) / fracfund::gamma(0.4);
    double err = 0.0;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= i; ++j) err = std::max(err, op_norm(f(i, j) - id));
    }
    CHECK(err <= 1e-12);
    CHECK(max_distance(f, d) <= 1e-12);
    const double z = z_value(f, 10, 2)(0, 0);
    CHECK(z == doctest::Approx(1.0 / (fracfund::gamma(0.4) * std::pow(g.node(10) - g.node(2), 0.6))).epsilon(1e-12));
    CHECK_THROWS_AS(z_value(f, 3, 3), DomainError);
  }

  TEST_CASE("diagonal is Id / Gamma(alpha) for time-dependent A") {
    const CauchyProblem p = ft::cosine_problem();
    const FundamentalField f = solve_F(p, TriangleGrid{0.0, 1.0, 64});
    for (int i = 0; i <= 64; ++i) CHECK(op_norm(f(i, i) - Eigen::MatrixXd::Identity(2, 2) / fracfund::gamma(0.5)) <= 1e-12);
  }

  TEST_CASE("a-priori bounds for scalar A = 1") {
    const AprioriBounds b = bounds(scalar_problem(0.5, 1.0), 32);
    CHECK(b.kappa == doctest::Approx(10.714097117218055088).epsilon(1e-13));
    CHECK(b.M_F == doctest::Approx(50760.783386392794667).epsilon(1e-12));
    CHECK(b.H_F == doctest::Approx(5404488.0281475845573).epsilon(1e-12));
    CHECK(b.contraction == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("constant coefficients: oracle agreement, Z and convergence") {
    const double alpha = 0.5;
    const Eigen::MatrixXd a0 = ft::rotation_a0();
    const CauchyProblem p =
        ft::point_start(alpha, 0.0, 1.0, ft::constant_matrix(a0), ft::constant_vector(Eigen::VectorXd::Zero(2)), ft::vec2(0, 0));
    std::vector<std::pair<int, double>> errs;
    for (int N : {64, 128, 256}) {
      const FundamentalField f = solve_F(p, TriangleGrid{0.0, 1.0, N});
      errs.emplace_back(N, oracle_error(f, a0));
      if (N == 256) {
        const double dt = f.grid().node(200) - f.grid().node(50);
        const Eigen::MatrixXd zref = oracle::constant_coeff_F(a0, alpha, dt) / std::pow(dt, 1.0 - alpha);
        CHECK(op_norm(z_value(f, 200, 50) - zref) <= 2e-2);
      }
    }
    CHECK(errs.back().second <= 1e-2);
    for (double a : {0.3, 0.5, 0.7}) {
      CAPTURE(a);
      CauchyProblem q = p;
      q.alpha = a;
      const double e1 = oracle_error(solve_F(q, TriangleGrid{0.0, 1.0, 64}), a0);
      const double e2 = oracle_error(solve_F(q, TriangleGrid{0.0, 1.0, 128}), a0);
      CHECK(e1 / e2 >= 1.3);
    }
    CHECK(oracle::convergence_order(errs) >= 0.4);
  }

  TEST_CASE("dual field and Picard iteration agree with the march") {
    const CauchyProblem p = ft::cosine_problem();
    const TriangleGrid g{0.0, 1.0, 64};
    const FundamentalField f = solve_F(p, g);
    CHECK(max_distance(f, solve_G_dual(p, g)) <= 5e-3);
    PicardStats stats;
    const FundamentalField pic = solve_F_picard(p, g, 500, 1e-10, &stats);
    CHECK(bielecki_distance(f, pic, bounds(p, 64).kappa) <= 1e-9);
    CHECK(stats.max_iterations <= std::ceil(std::log2(stats.max_initial_residual / 1e-10)) + 1);
    CHECK_THROWS_AS(solve_F_picard(p, g, 2, 1e-14), ConvergenceError);
  }

  TEST_CASE("scalar constant A: dual field equals the oracle too") {
    const CauchyProblem p = scalar_problem(0.6, -2.0);
    const TriangleGrid g{0.0, 1.0, 128};
    const FundamentalField d = solve_G_dual(p, g);
    CHECK(oracle_error(d, Eigen::MatrixXd::Constant(1, 1, -2.0)) <= 1e-2);
  }

  TEST_CASE("F respects M_F and the two-variable Hoelder bound") {
    const CauchyProblem p = ft::cosine_problem();
    const FundamentalField f = solve_F(p, TriangleGrid{0.0, 1.0, 96});
    const AprioriBounds b = bounds(p, 96);
    CHECK(f.max_norm() <= kBoundSlack * b.M_F);
    CHECK(field_holder_excess(f, b.H_F) <= kExcessTol);
  }

  TEST_CASE("result does not depend on the thread count") {
    const CauchyProblem p = ft::cosine_problem();
    const TriangleGrid g{0.0, 1.0, 48};
    setenv("FRACFUND_THREADS", "1", 1);
    const FundamentalField one = solve_F(p, g);
    setenv("FRACFUND_THREADS", "3", 1);
    const FundamentalField three = solve_F(p, g);
    unsetenv("FRACFUND_THREADS");
    CHECK(max_distance(one, three) == 0.0);
  }

  TEST_CASE("grid validation") {
    const CauchyProblem p = ft::cosine_problem();
    CHECK_THROWS_AS(solve_F(p, TriangleGrid{1.0, 1.0, 8}), GridError);
    CHECK_THROWS_AS(solve_F(p, TriangleGrid{0.0, 1.0, 0}), GridError);
  }
}
