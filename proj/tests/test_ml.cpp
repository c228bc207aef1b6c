#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "fracgrid/ml.hpp"

using namespace fracgrid;

namespace {

// Independent oracle: erfcx(x) = e^{x^2} erfc(x). Maclaurin erf below 2.5,
// Laplace continued fraction above.
double erfcx_oracle(double x) {
  REQUIRE(x >= 0.0);
  if (x < 2.5) {
    double term = x, sum = x;
    for (int k = 1; k < 300; ++k) {
      term *= -x * x / k;
      const double add = term / (2 * k + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    const double erf = 2.0 / std::sqrt(M_PI) * sum;
    return std::exp(x * x) * (1.0 - erf);
  }
  double f = x;
  for (int n = 60; n >= 1; --n) f = x + (n / 2.0) / f;
  return 1.0 / (std::sqrt(M_PI) * f);
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("erfcx oracle agrees with the C library where both are trustworthy") {
  for (double x : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    CHECK(rel_err(erfcx_oracle(x), std::exp(x * x) * std::erfc(x)) < 1e-13);
  }
}

TEST_CASE("ml parameter domain") {
  CHECK_THROWS_AS(ml({0.0, 1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ml({1.5, 1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ml({0.5, 0.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ml({0.5, -1.0}, 0.5), std::invalid_argument);
}

TEST_CASE("ml classical values") {
  CHECK(ml({1.0, 1.0}, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(ml({0.7, 1.0}, 0.0) == 1.0);
  CHECK(ml({0.5, 0.5}, 0.0) ==
        doctest::Approx(1.0 / std::tgamma(0.5)).epsilon(1e-15));
  // E_{1/2}(-1) = e erfc(1), first digits 0.42758357615580...
  CHECK(rel_err(ml(0.5, -1.0), erfcx_oracle(1.0)) < 1e-13);
  CHECK(ml(0.5, -1.0) == doctest::Approx(0.4275835761558070).epsilon(1e-12));
}

TEST_CASE("E_{1/2} erfc identity across the negative axis") {
  for (int i = 0; i < 100; ++i) {
    const double z = -100.0 * (i + 0.5) / 100.0;
    CHECK(rel_err(ml(0.5, z), erfcx_oracle(-z)) < 1e-10);
  }
  // Far tail of the accuracy contract, through the asymptotic branch.
  for (double z : {-1e3, -1e4, -1e5, -1e6}) {
    CHECK(rel_err(ml(0.5, z), erfcx_oracle(-z)) < 1e-10);
  }
}

TEST_CASE("E_1 equals exp across [-30, 30]") {
  for (int i = 0; i <= 120; ++i) {
    const double z = -30.0 + 60.0 * i / 120.0;
    CHECK(rel_err(ml(1.0, z), std::exp(z)) < 1e-12);
  }
}

TEST_CASE("series branch alone reproduces exp where it is stable") {
  for (double z = -5.0; z <= 30.0; z += 2.5) {
    CHECK(rel_err(ml_detail::series(1.0, 1.0, z), std::exp(z)) < 1e-11);
  }
}

TEST_CASE("three-branch overlap cross-validation") {
  SUBCASE("series vs integral around the series switch") {
    for (double a : {0.75, 0.85, 0.95}) {
      for (double z : {-4.0, -4.5, -5.0, -5.5, -6.0}) {
        const double s = ml_detail::series(a, 1.0, z);
        const double i = ml_detail::integral_negative(a, 1.0, z);
        CHECK(rel_err(s, i) < 1e-9);
        const double s2 = ml_detail::series(a, a, z);
        const double i2 = ml_detail::integral_negative(a, a, z);
        CHECK(rel_err(s2, i2) < 1e-9);
      }
    }
  }
  SUBCASE("integral vs asymptotic around the asymptotic switch") {
    for (double a : {0.3, 0.5, 0.7, 0.9}) {
      for (double z : {-80.0, -100.0, -120.0}) {
        const double i = ml_detail::integral_negative(a, 1.0, z);
        const double as = ml_detail::asymptotic_negative(a, 1.0, z);
        CHECK(rel_err(i, as) < 1e-9);
      }
    }
  }
}

TEST_CASE("far tail agrees with the leading asymptote") {
  for (double a : {0.3, 0.5, 0.8}) {
    const double z = -1e6;
    const double lead = -1.0 / (z * std::tgamma(1.0 - a));
    CHECK(rel_err(ml(a, z), lead) < 1e-5);  // first-order asymptote only
  }
}

TEST_CASE("complete monotonicity proxy on sampled grids") {
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    for (double lambda : {0.5, 2.0}) {
      std::vector<double> v;
      const int n = 201;
      for (int i = 0; i < n; ++i) {
        const double t = 0.01 + (10.0 - 0.01) * i / (n - 1);
        v.push_back(ml(a, -lambda * std::pow(t, a)));
      }
      for (int i = 1; i < n; ++i) CHECK(v[i] <= v[i - 1] + 1e-13);
      for (int i = 1; i + 1 < n; ++i) {
        CHECK(v[i - 1] - 2 * v[i] + v[i + 1] >= -1e-12);
      }
    }
  }
}

TEST_CASE("derivative identity E_alpha' = alpha^{-1} E_{alpha,alpha}") {
  for (double a : {0.5, 0.7, 0.9}) {
    for (double z : {-5.0, -2.0, -0.5, 0.5, 2.0}) {
      const double h = 1e-5 * (1.0 + std::abs(z));
      const double fd = (ml(a, z + h) - ml(a, z - h)) / (2.0 * h);
      const double exact = ml({a, a}, z) / a;
      CHECK(rel_err(fd, exact) < 1e-6);
    }
  }
}

TEST_CASE("w(t) = d/dt E_alpha(lambda t^alpha) has one sign change for lambda > 0") {
  for (double a : {0.4, 0.6, 0.8}) {
    std::vector<double> w;
    const int n = 400;
    for (int i = 0; i < n; ++i) {
      const double t = 1e-3 * std::pow(2e4, static_cast<double>(i) / (n - 1));
      w.push_back(std::pow(t, a - 1.0) * ml({a, a}, std::pow(t, a)));
    }
    int changes = 0;
    bool decreasing = w[1] < w[0];
    for (int i = 2; i < n; ++i) {
      const bool dec = w[static_cast<std::size_t>(i)] < w[static_cast<std::size_t>(i - 1)];
      if (dec != decreasing) {
        ++changes;
        decreasing = dec;
      }
    }
    CHECK(changes == 1);
  }
}

TEST_CASE("linear FODE exact solution") {
  CHECK(linear_fode_exact(0.6, -1.0, 0.0, 1.0, 0.0) == 1.0);
  CHECK(linear_fode_exact(1.0, -2.0, 0.0, 3.0, 1.0) ==
        doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-14));
  // Composed from the erfcx oracle: (2 - 0.5) E_{1/2}(-1) + 0.5.
  const double expect = 1.5 * erfcx_oracle(1.0) + 0.5;
  CHECK(linear_fode_exact(0.5, -1.0, 0.5, 2.0, 1.0) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(1.141375).epsilon(1e-6));
  // lambda = 0 limit: v0 + c t^alpha / Gamma(1 + alpha).
  CHECK(linear_fode_exact(0.5, 0.0, 1.0, 0.25, 1.0) ==
        doctest::Approx(0.25 + 1.0 / std::tgamma(1.5)).epsilon(1e-14));
}

TEST_CASE("sigma constants") {
  const SigmaConstants coarse = estimate_sigma_constants(4e-3, 4e-3);
  CHECK(coarse.sigma > 1.0);
  CHECK(coarse.c1 > 0.0);
  // c2 is attained at (alpha, z) = (1/2, 0): 2 / Gamma(1/2) = 2/sqrt(pi).
  CHECK(coarse.c2 == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-9));
  const SigmaConstants fine = estimate_sigma_constants(2e-3, 2e-3);
  CHECK(rel_err(coarse.c1, fine.c1) < 5e-4);
  CHECK(rel_err(coarse.c2, fine.c2) < 5e-4);
  CHECK(rel_err(coarse.sigma, fine.sigma) < 1e-3);
}

TEST_CASE("mu1 estimator") {
  const double mu1 = estimate_mu1();
  CHECK(mu1 > 0.0);
  CHECK(mu1 < 1.0);
  SUBCASE("alpha = 1 limit: exponential ratio bounded by exp(-lambda tau)") {
    // w(t) = lambda e^{lambda t}: the ratio w(s)/w(s+tau) is exactly
    // e^{-lambda tau} >= e^{-1} in the admissible regime.
    for (double lt : {0.25, 0.5, 1.0}) {
      CHECK(std::exp(-lt) >= std::exp(-1.0) - 1e-15);
    }
  }
  SUBCASE("stable to two significant digits under grid refinement") {
    Mu1Grid fine;
    fine.alpha_count = 48;
    fine.s_count = 1200;
    fine.tau_count = 8;
    const double refined = estimate_mu1(fine);
    CHECK(rel_err(mu1, refined) < 5e-3);
  }
  SUBCASE("degenerate grid is diagnosed") {
    Mu1Grid bad;
    bad.alpha_count = 0;
    CHECK_THROWS_AS(estimate_mu1(bad), std::invalid_argument);
    Mu1Grid coarse;
    coarse.scan_t_max = 2e-4;  // window ends before t_*
    CHECK_THROWS_AS(estimate_mu1(coarse), std::runtime_error);
  }
}
