#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "fracfund/errors.hpp"
#include "fracfund/frac_ops.hpp"
#include "fracfund/oracle.hpp"
#include "fracfund/special_fn.hpp"

using namespace fracfund;

TEST_SUITE("oracle") {
  TEST_CASE("adaptive quadrature: endpoint singularities") {
    oracle::QuadSpec s;
    s.integrand = [](double x) { return 1.0 / std::sqrt(x); };
    s.p_lo = -0.5;
    CHECK(oracle::adaptive_quad(s).value == doctest::Approx(2.0).epsilon(1e-12));

    oracle::QuadSpec b;
    b.integrand = [](double x) { return std::sqrt(x) / std::sqrt(1.0 - x); };
    b.p_lo = 0.5;
    b.p_hi = -0.5;
    CHECK(oracle::adaptive_quad(b).value == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  }

  TEST_CASE("adaptive quadrature is exact on polynomials") {
    oracle::QuadSpec s;
    s.lo = -1.0;
    s.hi = 2.0;
    s.integrand = [](double x) { return 3.0 * std::pow(x, 7) - x * x + 5.0; };
    const double exact = 3.0 * (std::pow(2.0, 8) - 1.0) / 8.0 - (8.0 + 1.0) / 3.0 + 15.0;
    CHECK(std::abs(oracle::adaptive_quad(s).value - exact) <= 1e-13 * std::abs(exact));
  }

  TEST_CASE("adaptive quadrature reports a blown budget") {
    oracle::QuadSpec s;
    s.integrand = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
    s.max_panels = 4;
    s.tol = 1e-14;
    CHECK_THROWS_AS(oracle::adaptive_quad(s), ConvergenceError);
    s.p_lo = -1.0;
    CHECK_THROWS_AS(oracle::adaptive_quad(s), DomainError);
  }

  TEST_CASE("kernel K cross-check") {
    const double alpha = 0.5;
    oracle::QuadSpec s;
    s.integrand = [alpha](double eta) { return std::pow(eta / (1.0 - eta), alpha) * std::pow(0.5 + 0.5 * eta, -alpha); };
    s.p_lo = alpha;
    s.p_hi = -alpha;
    s.tol = 1e-13;
    const double k = std::pow(0.5, alpha - 1.0) * oracle::adaptive_quad(s).value;
    CHECK(std::abs(k - 2.3962804694711844149) <= 1e-12);
    CHECK(std::abs(k - kernel_K(1.0, 0.5, alpha)) <= 1e-10);
  }

  TEST_CASE("Newton Gauss-Jacobi matches the eigenvalue construction") {
    const auto [x, w] = oracle::gauss_jacobi_newton(20, -0.3L, 0.6L);
    long double sum = 0.0L;
    for (long double v : w) sum += v;
    // int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    CHECK(static_cast<double>(sum) == doctest::Approx(std::pow(2.0, 1.3) * beta_fn(0.7, 1.6)).epsilon(1e-14));
    CHECK(x.size() == 20);
  }

  TEST_CASE("constant-coefficient F") {
    Eigen::MatrixXd a0(2, 2);
    a0 << 0.0, 1.0, -1.0, 0.0;
    CHECK((oracle::constant_coeff_F(a0, 0.5, 0.0) - Eigen::MatrixXd::Identity(2, 2) / fracfund::gamma(0.5)).norm() == 0.0);
    CHECK((oracle::constant_coeff_F(Eigen::MatrixXd::Zero(2, 2), 0.3, 1.7) -
           Eigen::MatrixXd::Identity(2, 2) / fracfund::gamma(0.3))
              .norm() <= 1e-15);
    Eigen::MatrixXd m(2, 2);
    m << -0.4, 1.3, 0.2, 0.5;
    const Eigen::MatrixXd expm = (0.8 * m).exp();
    CHECK((oracle::constant_coeff_F(m, 1.0, 0.8) - expm).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_THROWS_AS(oracle::constant_coeff_F(m, 0.5, -0.1), DomainError);
  }

  TEST_CASE("convergence order") {
    CHECK(oracle::convergence_order({{64, 1e-2}, {128, 5e-3}, {256, 2.5e-3}}) == doctest::Approx(1.0).epsilon(1e-12));
    const double e = 0.3;
    CHECK(oracle::convergence_order({{64, e}, {128, e / std::sqrt(2.0)}, {256, e / 2.0}}) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(oracle::convergence_order({{64, 1e-2}, {128, 0.0}, {256, 1e-3}}), DomainError);
    CHECK_THROWS_AS(oracle::convergence_order({{64, 1e-2}, {128, 5e-3}}), DomainError);
  }

  TEST_CASE("50-digit series") {
    CHECK(oracle::mittag_leffler_highprec(0.5, 1.0, -1.0) == doctest::Approx(0.42758357615580700441).epsilon(1e-15));
    CHECK(oracle::mittag_leffler_highprec(1.0, 1.0, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  }
}
