#include <doctest.h>

#include <cmath>

#include "fracfund/errors.hpp"
#include "fracfund/oracle.hpp"
#include "fracfund/special_fn.hpp"

using namespace fracfund;

TEST_SUITE("special_fn") {
  TEST_CASE("gamma matches a table of 20-digit values") {
    struct Row {
      double x, value;
    };
    const Row table[] = {{0.1, 9.5135076986687318363},  {0.3, 2.9915689876875906283},
                         {0.5, 1.7724538509055160273},  {0.75, 1.2254167024651776451},
                         {1.0, 1.0},                    {1.5, 0.88622692545275801365},
                         {2.5, 1.3293403881791370205},  {3.7, 4.1706517837966031654},
                         {5.0, 24.0},                   {7.25, 1155.3810139199896872},
                         {12.5, 136843365.46556585726}, {30.0, 8.8417619937397019545e+30}};
    for (const Row& r : table) {
      CAPTURE(r.x);
      CHECK(std::abs(fracfund::gamma(r.x) - r.value) <= 1e-13 * r.value);
    }
  }

  TEST_CASE("gamma agrees with the C library on [0.1, 30] to about one ulp") {
    double worst = 0.0;
    for (int k = 0; k <= 299; ++k) {
      const double x = 0.1 + 0.1 * k;
      worst = std::max(worst, std::abs(fracfund::gamma(x) / std::tgamma(x) - 1.0));
    }
    CHECK(worst <= 1e-15);
  }

  TEST_CASE("gamma domain and overflow") {
    CHECK_THROWS_AS(fracfund::gamma(0.0), DomainError);
    CHECK_THROWS_AS(fracfund::gamma(-1.5), DomainError);
    CHECK_THROWS_AS(fracfund::gamma(200.0), OverflowError);
    CHECK(std::abs(log_gamma(30.0) - 71.257038967168009010) <= 1e-12);
  }

  TEST_CASE("beta function") {
    CHECK(std::abs(beta_fn(0.5, 0.5) - M_PI) <= 1e-14);
    CHECK(std::abs(beta_fn(2.0, 3.0) - 1.0 / 12.0) <= 1e-15);
  }

  TEST_CASE("Mittag-Leffler special cases") {
    CHECK(std::abs(mittag_leffler(1.0, 1.0, 1.0) - std::exp(1.0)) <= 1e-14);
    CHECK(std::abs(mittag_leffler(0.5, 0.5, 0.0) - 0.564189583547756287) <= 1e-15);
    // E_{1/2,1}(-1) = e erfc(1).
    CHECK(std::abs(mittag_leffler(0.5, 1.0, -1.0) - 0.42758357615580700441) <= 1e-14);
    CHECK(std::abs(mittag_leffler(0.5, 0.5, 1.0) - 5.573169664310039753) <= 1e-13);
    CHECK(std::abs(mittag_leffler(1.0, 2.0, 0.7) - (std::exp(0.7) - 1.0) / 0.7) <= 1e-14);
  }

  TEST_CASE("E_{1,1} reproduces exp on [-5, 5]") {
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double z = -5.0 + 0.1 * k;
      worst = std::max(worst, std::abs(mittag_leffler(1.0, 1.0, z) - std::exp(z)));
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("E at zero is 1/Gamma(beta)") {
    const double pairs[][2] = {{0.1, 0.5}, {0.3, 0.3}, {0.5, 1.5}, {0.9, 0.25}, {1.0, 3.5}, {1.5, 2.5}};
    for (const auto& p : pairs) CHECK(mittag_leffler(p[0], p[1], 0.0) == doctest::Approx(1.0 / fracfund::gamma(p[1])).epsilon(1e-15));
  }

  TEST_CASE("scalar series against the 50-digit oracle") {
    const double cases[][3] = {{0.3, 0.7, 2.0}, {0.7, 1.2, -3.0}, {0.5, 0.5, 2.5}, {0.8, 0.8, -4.0}};
    for (const auto& c : cases) {
      CAPTURE(c[0]);
      CAPTURE(c[2]);
      const double ref = oracle::mittag_leffler_highprec(c[0], c[1], c[2]);
      CHECK(std::abs(mittag_leffler(c[0], c[1], c[2]) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
    }
    CHECK(std::abs(oracle::mittag_leffler_highprec(0.3, 0.7, 2.0) - 158972.58563355086092) <= 1e-9);
    CHECK(std::abs(oracle::mittag_leffler_highprec(0.7, 1.2, -3.0) - 0.19766424442345363666) <= 1e-15);
  }

  TEST_CASE("matrix argument: diagonal and nilpotent") {
    MLParams p;
    p.alpha = 0.5;
    p.beta = 0.5;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    const Eigen::MatrixXd e = mittag_leffler(p, d);
    CHECK(std::abs(e(0, 0) - mittag_leffler(p, 1.0)) <= 1e-14);
    CHECK(std::abs(e(1, 1) - mittag_leffler(p, -2.0)) <= 1e-14);
    CHECK(e(0, 1) == 0.0);

    Eigen::MatrixXd nil = Eigen::MatrixXd::Zero(2, 2);
    nil(0, 1) = 3.0;
    const Eigen::MatrixXd en = mittag_leffler(p, nil);
    CHECK(std::abs(en(0, 0) - 1.0 / fracfund::gamma(0.5)) <= 1e-15);
    CHECK(std::abs(en(0, 1) - 3.0 / fracfund::gamma(1.0)) <= 1e-14);
  }

  TEST_CASE("parameter validation") {
    MLParams p;
    p.alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.alpha = 0.5;
    p.beta = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.beta = 1.0;
    p.tol = 0.0;
    CHECK_THROWS(p.validate());
  }
}
