#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sicnet/errors.hpp"
#include "sicnet/numerics.hpp"
#include "sicnet/quadrature.hpp"

using namespace sicnet;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("numerics") {

TEST_CASE("quadrature reproduces integrals with known antiderivatives") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi).value == Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0).value ==
        Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0).value ==
        Approx(kPi / 2).epsilon(1e-11));
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 2.0).value ==
        Approx(std::exp(-2.0)).epsilon(1e-11));
  // integrable endpoint singularity
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("quadrature settings are validated") {
  QuadratureSettings s;
  s.rel_tol = -1.0;
  CHECK_THROWS(s.validate());
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, s), std::exception);
}

TEST_CASE("2F1 against high-precision reference values") {
  // mpmath.hyp2f1(1, 2/3, 5/3, -z), 30 digits
  CHECK(gauss_2f1(1.0, 2.0 / 3.0, 5.0 / 3.0, -0.3) == Approx(0.8985200313991049).epsilon(1e-14));
  CHECK(gauss_2f1(1.0, 2.0 / 3.0, 5.0 / 3.0, -3.0) == Approx(0.54292200668979258).epsilon(1e-14));
  CHECK(gauss_2f1(1.0, 2.0 / 3.0, 5.0 / 3.0, -1e4) == Approx(0.0050102880277996056).epsilon(1e-13));
  CHECK(gauss_2f1(1.0, 0.5, 1.5, -1.0) == Approx(kPi / 4).epsilon(1e-15));
  CHECK(gauss_2f1(1.0, 0.5, 1.5, -1e6) == Approx(std::atan(1e3) / 1e3).epsilon(1e-14));
  CHECK(gauss_2f1(0.3, 1.7, 2.2, 0.0) == 1.0);
}

TEST_CASE("C(b, alpha) against direct high-precision quadrature") {
  struct Case { double b, alpha, value; };
  const Case cases[] = {{0.5, 3.0, 1.9766366006738111},   {2.0, 3.0, 1.3095403613752147},
                        {10.0, 2.5, 2.2289061214163788},  {0.01, 6.0, 1.1991995786561438},
                        {100.0, 5.0, 0.00066666416668205117}, {0.0, 3.5, 1.8413626070401267}};
  for (const auto& c : cases) {
    CAPTURE(c.b);
    CAPTURE(c.alpha);
    CHECK(c_integral(c.b, c.alpha) == Approx(c.value).epsilon(1e-12));
    CHECK(c_integral_by_quadrature(c.b, c.alpha) == Approx(c.value).epsilon(1e-10));
  }
}

TEST_CASE("C(b, 4) is arctan(1/b) and C(0, alpha) is the csc form") {
  for (double b : {1e-6, 0.01, 0.3, 1.0, 7.3, 1e3, 1e8}) CHECK(c_integral(b, 4.0) == Approx(std::atan(1.0 / b)).epsilon(1e-14));
  for (double a : {2.2, 3.0, 4.0, 7.0}) {
    const double x = 2.0 * kPi / a;
    CHECK(c_integral_at_zero(a) == Approx(x / std::sin(x)).epsilon(1e-14));
    CHECK(c_integral(0.0, a) == Approx(c_integral_at_zero(a)).epsilon(1e-14));
  }
}

TEST_CASE("C(b, alpha) is positive and decreasing in b") {
  for (double a : {2.5, 3.0, 4.0, 6.0}) {
    double prev = c_integral_at_zero(a);
    for (double b = 1e-3; b < 1e4; b *= 1.7) {
      const double v = c_integral(b, a);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("C(b, alpha) tail follows the leading power law") {
  // For large b the integrand is w^(-alpha/2): C ~ b^(1 - alpha/2) / (alpha/2 - 1)
  const double a = 5.0, b = 1e6;
  CHECK(c_integral(b, a) == Approx(std::pow(b, 1.0 - a / 2) / (a / 2 - 1.0)).epsilon(1e-6));
}

TEST_CASE("C rejects invalid arguments") {
  CHECK_THROWS_AS(c_integral(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(c_integral(-1.0, 4.0), DomainError);
  CHECK_THROWS_AS(c_integral(std::nan(""), 4.0), DomainError);
}

TEST_CASE("dB conversions are inverse") {
  CHECK(db_to_linear(10.0) == Approx(10.0));
  CHECK(db_to_linear(0.0) == 1.0);
  for (double d : {-10.0, -3.0, 0.5, 7.0}) CHECK(linear_to_db(db_to_linear(d)) == Approx(d).epsilon(1e-14));
}

TEST_CASE("received power cdf is clamped to [0, 1]") {
  for (double y : {1e-12, 1e-6, 1.0, 1e6}) {
    const double F = pareto_received_power_cdf(y, 4.0, 100.0);
    CHECK(F >= 0.0);
    CHECK(F <= 1.0);
  }
}

}  // TEST_SUITE
