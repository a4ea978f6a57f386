#include <cmath>

#include "doctest.h"
#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/numerics.hpp"

using namespace sicnet;
using doctest::Approx;

TEST_SUITE("load") {

TEST_CASE("load law against high-precision values") {
  CHECK(load_pmf(0, 5e-5, 1e-5) == Approx(0.018446799774371891).epsilon(1e-12));
  CHECK(load_pmf(5, 5e-5, 1e-5) == Approx(0.11103603112174176).epsilon(1e-12));
  CHECK(load_pmf(20, 5e-5, 1e-5) == Approx(0.0020207472622416368).epsilon(1e-12));
  CHECK(load_pmf(-1, 5e-5, 1e-5) == 0.0);
}

TEST_CASE("tabulated load law") {
  const LoadDistribution d(5e-5, 1e-5);
  CHECK(std::abs(d.total_mass() - 1.0) < 1e-11);
  CHECK(d.cdf(-1) == 0.0);
  CHECK(d.cdf(0) == Approx(d.pmf(0)));
  // the law is the size-biased cell count: its mean is (4.5 / 3.5) mu_j / lambda
  CHECK(d.mean() == Approx(4.5 / 3.5 * 5.0).epsilon(1e-9));
  double s = 0.0;
  for (double p : d.pmf_table()) s += p;
  CHECK(s == Approx(d.total_mass()).epsilon(1e-15));
}

TEST_CASE("order statistics of the load") {
  const LoadDistribution d(5e-5, 1e-5);
  CHECK(load_order_statistic_pmf(1, 2, 3, d) == Approx(0.18918991801176806).epsilon(1e-10));
  CHECK(load_order_statistic_pmf(2, 6, 4, d) == Approx(0.14795639620727154).epsilon(1e-10));
  for (int n : {1, 3, 6}) {
    for (int i = 1; i <= n; ++i) {
      double s = 0.0;
      for (long m = 0; m < static_cast<long>(d.size()); ++m) s += load_order_statistic_pmf(i, m, n, d);
      CHECK(s == Approx(1.0).epsilon(1e-9));
    }
  }
  for (long m = 0; m < 30; ++m) CHECK(load_order_statistic_pmf(1, m, 1, d) == Approx(d.pmf(m)).epsilon(1e-10));
  CHECK_THROWS_AS(load_order_statistic_pmf(0, 1, 3, d), DomainError);
  CHECK_THROWS_AS(load_order_statistic_pmf(4, 1, 3, d), DomainError);
}

TEST_CASE("rate threshold") {
  CHECK(rate_threshold(0.3, 4) == Approx(std::pow(2.0, 1.5) - 1.0).epsilon(1e-14));
  CHECK(rate_threshold(1e-6, 0) == Approx(std::expm1(1e-6 * std::log(2.0))).epsilon(1e-14));
  CHECK(std::isinf(rate_threshold(1.0, 5000)));
}

TEST_CASE("min-load conditional coverage") {
  // No cancellation: -expm1(-x) / x with x = pi lambda s^(2/a) C0 r^2
  CHECK(min_load_conditional_coverage(1.0, 1e-5, 4.0, 260.0, 0) == Approx(0.28910062894885519).epsilon(1e-13));
  CHECK(min_load_conditional_coverage(1.0, 1e-5, 4.0, 260.0, 1) == Approx(0.440563070321418).epsilon(1e-9));
  CHECK(min_load_conditional_coverage(3.0, 1e-5, 4.0, 260.0, 1) == Approx(0.233102806081685).epsilon(1e-9));
  CHECK(min_load_conditional_coverage(1e-12, 1e-5, 4.0, 260.0, 0) == Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(min_load_conditional_coverage(0.0, 1e-5, 4.0, 260.0, 0), DomainError);
  CHECK_THROWS_AS(min_load_conditional_coverage(1.0, 1e-5, 4.0, 260.0, 2), DomainError);
}

TEST_CASE("rate coverage orderings") {
  const double lambda = 1e-5, mu_j = 5e-5;
  CHECK(min_load_candidate_count(lambda, 260.0) == 2);
  CHECK_THROWS_AS(rate_coverage_min_load(0.1, lambda, mu_j, 4.0, 100.0), DomainError);
  double prev = 1.0;
  for (double rho = 0.05; rho < 0.55; rho += 0.05) {
    const double maxsir = rate_coverage_max_sir(rho, lambda, mu_j, 4.0);
    const double minl = rate_coverage_min_load(rho, lambda, mu_j, 4.0, 260.0);
    const double sic = rate_coverage_min_load(rho, lambda, mu_j, 4.0, 260.0, 1);
    CHECK(maxsir <= prev);
    CHECK(minl < maxsir);
    CHECK(sic > minl);
    prev = maxsir;
  }
}

}  // TEST_SUITE
