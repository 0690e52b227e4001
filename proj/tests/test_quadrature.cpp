#include <doctest.h>

#include <cmath>

#include "fracfund/errors.hpp"
#include "fracfund/quadrature.hpp"
#include "fracfund/special_fn.hpp"

using namespace fracfund;

TEST_SUITE("quadrature") {
  TEST_CASE("Legendre rule integrates polynomials exactly") {
    const quad::UnitRule r = quad::gauss_legendre_unit(8);
    // Degree 15 is the limit for 8 nodes.
    const double v = quad::integrate(r, 0.0, 2.0, [](double x) { return std::pow(x, 15); });
    CHECK(v == doctest::Approx(std::pow(2.0, 16) / 16.0).epsilon(1e-14));
  }

  TEST_CASE("Jacobi rule reproduces Beta moments") {
    const double p = -0.5, q = 0.3;
    const quad::UnitRule r = quad::gauss_jacobi_unit(16, p, q);
    double w = 0.0;
    for (double x : r.weights) w += x;
    CHECK(w == doctest::Approx(beta_fn(p + 1.0, q + 1.0)).epsilon(1e-14));
    const double m3 = quad::integrate(r, 0.0, 1.0, [](double u) { return u * u * u; });
    CHECK(m3 == doctest::Approx(beta_fn(p + 4.0, q + 1.0)).epsilon(1e-14));
    for (double u : r.nodes) CHECK((u > 0.0 && u < 1.0));
  }

  TEST_CASE("integrate scales the weight to the interval") {
    const quad::UnitRule r = quad::gauss_jacobi_unit(4, 0.0, -0.5);
    // int_1^3 (3 - x)^{-1/2} dx = 2 sqrt(2)
    CHECK(quad::integrate(r, 1.0, 3.0, [](double) { return 1.0; }) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  }

  TEST_CASE("bad rule parameters") {
    CHECK_THROWS_AS(quad::gauss_jacobi_unit(0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(quad::gauss_jacobi_unit(4, -1.0, 0.0), DomainError);
  }

  TEST_CASE("hat moments sum to the full moment and match linear data") {
    const double p = -0.4, q = -0.6;
    const quad::HatMomentTable t(p, q, 40);
    for (int m : {1, 2, 7, 40}) {
      CAPTURE(m);
      double s0 = 0.0, s1 = 0.0;
      for (int k = 0; k <= m; ++k) {
        s0 += t(m, k);
        s1 += t(m, k) * k;
      }
      // int_0^m u^p (m-u)^q du = m^{1+p+q} B(p+1, q+1); with an extra u the first argument shifts.
      CHECK(s0 == doctest::Approx(std::pow(m, 1.0 + p + q) * beta_fn(p + 1.0, q + 1.0)).epsilon(1e-12));
      CHECK(s1 == doctest::Approx(std::pow(m, 2.0 + p + q) * beta_fn(p + 2.0, q + 1.0)).epsilon(1e-12));
    }
  }
}
