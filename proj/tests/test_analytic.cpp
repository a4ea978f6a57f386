#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/numerics.hpp"

using namespace sicnet;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("analytic") {

TEST_CASE("decoding without cancellation") {
  // alpha = 4, eta = 1: 1 / (1 + pi / 2)
  CHECK(ps_plain(1.0, 1e-4, 1e-4, 4.0) == Approx(1.0 / (1.0 + kPi / 2)).epsilon(1e-14));
  CHECK(ps_ic(1.0, 0, 1e-4, 1e-4, 4.0) == Approx(ps_plain(1.0, 1e-4, 1e-4, 4.0)).epsilon(1e-10));
  CHECK(ps_ic(3.0, 0, 2e-4, 5e-5, 3.0) == Approx(ps_plain(3.0, 2e-4, 5e-5, 3.0)).epsilon(1e-10));
}

TEST_CASE("decoding after cancellations against high-precision integration") {
  CHECK(ps_ic(1.0, 1, 1e-4, 1e-4, 4.0) == Approx(0.0699038620541444).epsilon(1e-10));
  CHECK(ps_ic(std::sqrt(10.0), 2, 2e-4, 1e-4, 3.0) == Approx(9.20224764359329e-7).epsilon(1e-8));
}

TEST_CASE("renormalized decoding divides by the mass beyond R_n") {
  IcOptions o;
  o.renormalize_serving_distance = true;
  const double plain = ps_ic(1.0, 2, 1e-4, 1e-4, 4.0);
  CHECK(ps_ic(1.0, 2, 1e-4, 1e-4, 4.0, o) == Approx(plain * std::exp(2.0)).epsilon(1e-12));
}

TEST_CASE("decoding given the serving distance") {
  // n = 0 at alpha = 4: exp(-pi mu sqrt(eta) (pi/2) u^2)
  const double u = 30.0, mu = 1e-4, eta = 2.0;
  CHECK(ps_ic_given_distance(eta, 0, mu, 4.0, u) ==
        Approx(std::exp(-kPi * mu * std::sqrt(eta) * kPi / 2 * u * u)).epsilon(1e-13));
  CHECK(ps_ic_given_distance(eta, 0, mu, 4.0, 0.0) == 1.0);
  // more cancellations never hurt
  double prev = 0.0;
  for (int n = 0; n < 6; ++n) {
    const double v = ps_ic_given_distance(eta, n, mu, 4.0, u);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("cancellation probability at alpha = 4 has an arctan form") {
  for (double eta : {0.1, 1.0, 3.0, 10.0}) {
    const double s = std::sqrt(eta);
    for (int n = 1; n <= 5; ++n)
      CHECK(ps_can(eta, n, 4.0) == Approx(std::pow(1.0 + s * std::atan(s), -n)).epsilon(1e-13));
  }
  CHECK(ps_can(1.0, 1, 4.0) == Approx(0.5600991535).epsilon(1e-10));
  CHECK(ps_can(10.0, 3, 3.0) == Approx(0.00069992461725948822).epsilon(1e-12));
  CHECK(ps_can(2.0, 0, 4.0) == 1.0);
  CHECK_THROWS_AS(ps_can(1.0, -1, 4.0), DomainError);
  CHECK_THROWS_AS(ps_can(0.0, 1, 4.0), DomainError);
}

TEST_CASE("cancellation probability falls with n and eta") {
  for (double a : {3.0, 4.0, 5.0}) {
    for (int n = 1; n < 8; ++n) {
      CHECK(ps_can(1.0, n + 1, a) < ps_can(1.0, n, a));
      CHECK(ps_can(2.0, n, a) < ps_can(1.0, n, a));
    }
  }
}

TEST_CASE("truncated stable Laplace transform reduces to the alpha = 4 closed form") {
  const double mu = 1e-4;
  for (double r : {5.0, 20.0, 60.0}) {
    for (double eta : {0.2, 1.0, 10.0}) {
      const double expect = std::exp(-1.5 * mu * kPi * r * r * (std::sqrt(1.0 + 4.0 * eta / 3.0) - 1.0));
      CHECK(tsd_cancel_probability_given_distance(eta, mu, r, 4.0) == Approx(expect).epsilon(1e-11));
    }
  }
  // averaging over the n-th distance gives the closed form (sqrt(9/4 + 3 eta) - 1/2)^(-n)
  CHECK(ps_can_tsd(1.0, 1) == Approx(1.0 / (std::sqrt(5.25) - 0.5)).epsilon(1e-15));
  CHECK(ps_can_tsd(0.0, 4) == Approx(1.0));
}

TEST_CASE("truncated stable parameters match the first two cumulants") {
  const auto p = tsd_params(1.0, 1e-4, 10.0, 4.0);
  CHECK(p.alpha_i == 0.5);
  // mean of the TSD law: -d/ds log L at s = 0 = -gamma' Gamma(-a_I) a_I g^(a_I - 1)
  const double mean = -p.gamma_prime * std::tgamma(-p.alpha_i) * p.alpha_i * std::pow(p.g, p.alpha_i - 1.0);
  CHECK(mean == Approx(p.kappa1).epsilon(1e-13));
  const double var =
      p.gamma_prime * std::tgamma(-p.alpha_i) * p.alpha_i * (p.alpha_i - 1.0) * std::pow(p.g, p.alpha_i - 2.0);
  CHECK(var == Approx(p.kappa2).epsilon(1e-13));
  CHECK(tsd_laplace(p, 0.0) == 1.0);
}

TEST_CASE("kurtosis") {
  CHECK(kurtosis_after_cancellation(4.0, 2) == Approx(54.0 / 7.0).epsilon(1e-15));
  for (double a : {2.5, 4.0, 6.0}) {
    const double base = kurtosis_after_cancellation(a, 2);
    for (int n = 3; n <= 50; ++n) CHECK(kurtosis_after_cancellation(a, n) * (n - 1) == Approx(base).epsilon(1e-14));
    const double r = cancellation_radius(1e-4, 4);
    CHECK(kurtosis_given_radius(a, 1e-4, r) == Approx(kurtosis_after_cancellation(a, 5)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(kurtosis_after_cancellation(4.0, 1), DomainError);
}

TEST_CASE("SIC chain against an independently evaluated chain") {
  const auto b = ps_sic(1.0, 3, 1e-4, 1e-4, 4.0);
  const auto cum = b.cumulative();
  REQUIRE(cum.size() == 4);
  CHECK(cum[0] == Approx(0.388984529648343).epsilon(1e-10));
  CHECK(cum[1] == Approx(0.412907675772305).epsilon(1e-10));
  CHECK(cum[2] == Approx(0.414098431391161).epsilon(1e-10));
  CHECK(cum[3] == Approx(0.4141333875012).epsilon(1e-10));
  CHECK(b.ps_sic_total == Approx(cum.back()).epsilon(1e-15));
}

TEST_CASE("SIC chain is nondecreasing in the cap and bounded by one") {
  for (double db : {-10.0, -4.0, 0.0, 4.0, 10.0}) {
    const auto cum = ps_sic(db_to_linear(db), 6, 1e-4, 1e-4, 4.0).cumulative();
    for (std::size_t i = 1; i < cum.size(); ++i) CHECK(cum[i] >= cum[i - 1]);
    CHECK(cum.back() <= 1.0);
  }
}

TEST_CASE("SIC chain success is scale invariant when both densities scale") {
  const double a = ps_sic(2.0, 3, 1e-4, 1e-4, 4.0).ps_sic_total;
  const double b = ps_sic(2.0, 3, 1e-2, 1e-2, 4.0).ps_sic_total;
  CHECK(a == Approx(b).epsilon(1e-9));
}

}  // TEST_SUITE
