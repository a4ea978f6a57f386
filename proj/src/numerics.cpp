#include "sicnet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sicnet/errors.hpp"

namespace sicnet {

namespace {

bool is_non_positive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

bool is_near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// 1 / Gamma(x), zero at the poles.
double reciprocal_gamma(double x) {
  if (is_non_positive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double series_2f1(double a, double b, double c, double z, std::size_t max_terms) {
  double sum = 1.0;
  double term = 1.0;
  int small_in_a_row = 0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;  // terminating series
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_in_a_row >= 2) return sum;
    } else {
      small_in_a_row = 0;
    }
  }
  std::ostringstream os;
  os << "gauss_2f1: series for (" << a << ", " << b << "; " << c << "; " << z
     << ") not converged after " << max_terms << " terms (partial sum " << sum << ", last term "
     << term << ")";
  throw NumericError(os.str());
}

double pfaff_2f1(double a, double b, double c, double z, std::size_t max_terms) {
  // 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
  return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, z / (z - 1.0), max_terms);
}

void require_alpha(double alpha, const char* who) {
  if (!std::isfinite(alpha) || !(alpha > 2.0)) {
    std::ostringstream os;
    os << who << ": path-loss exponent must be finite and > 2 (got " << alpha << ")";
    throw DomainError(os.str());
  }
}

// int_x^inf dw / (1 + w^p) = sum_k (-1)^k x^(1 - p(k+1)) / (p(k+1) - 1), x^p > 1.
double tail_series(double x, double p) {
  const double ratio = std::pow(x, -p);
  double power = x * ratio;  // x^(1-p)
  double sum = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double term = power / (p * (k + 1) - 1.0);
    sum += (k % 2 == 0) ? term : -term;
    if (term <= 1e-18 * std::abs(sum)) return sum;
    power *= ratio;
  }
  throw NumericError("c_integral_by_quadrature: tail series did not converge");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z, std::size_t max_terms) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
    throw DomainError("gauss_2f1: arguments must be finite");
  }
  if (is_non_positive_integer(c)) throw DomainError("gauss_2f1: c must not be a non-positive integer");
  if (z > 0.0) throw DomainError("gauss_2f1: only z <= 0 is supported");
  if (z == 0.0) return 1.0;
  if (z >= -0.5) return series_2f1(a, b, c, z, max_terms);
  if (z >= -2.0) return pfaff_2f1(a, b, c, z, max_terms);

  if (is_near_integer(a - b)) return pfaff_2f1(a, b, c, z, max_terms);

  // DLMF 15.8.2, both series in 1/z in (-1/2, 0).
  const double w = 1.0 / z;
  const double gc = std::tgamma(c);
  const double first = gc * std::tgamma(b - a) * reciprocal_gamma(b) * reciprocal_gamma(c - a);
  const double second = gc * std::tgamma(a - b) * reciprocal_gamma(a) * reciprocal_gamma(c - b);
  double value = 0.0;
  if (first != 0.0) {
    value += first * std::pow(-z, -a) * series_2f1(a, a - c + 1.0, a - b + 1.0, w, max_terms);
  }
  if (second != 0.0) {
    value += second * std::pow(-z, -b) * series_2f1(b, b - c + 1.0, b - a + 1.0, w, max_terms);
  }
  return value;
}

double c_integral_at_zero(double alpha) {
  require_alpha(alpha, "c_integral_at_zero");
  const double x = 2.0 * std::numbers::pi / alpha;
  return x / std::sin(x);
}

double c_integral(double b, double alpha) {
  require_alpha(alpha, "c_integral");
  if (!std::isfinite(b) || b < 0.0) throw DomainError("c_integral: b must be finite and >= 0");
  const double c0 = c_integral_at_zero(alpha);
  if (b == 0.0) return c0;
  const double beta = 2.0 / alpha;
  const double t = std::pow(b, alpha / 2.0);
  if (t <= 1.0) {
    return c0 - b * gauss_2f1(1.0, beta, 1.0 + beta, -t);
  }
  // Continuation of the same closed form: the C(0, alpha) term cancels
  // exactly, which keeps full relative accuracy for large b.
  return b * beta / (1.0 - beta) / t * gauss_2f1(1.0, 1.0 - beta, 2.0 - beta, -1.0 / t);
}

double c_integral_by_quadrature(double b, double alpha, const QuadratureSettings& settings) {
  require_alpha(alpha, "c_integral_by_quadrature");
  if (!std::isfinite(b) || b < 0.0) {
    throw DomainError("c_integral_by_quadrature: b must be finite and >= 0");
  }
  const double p = alpha / 2.0;
  const double split = std::max(b, std::pow(20.0, 1.0 / p));
  double body = 0.0;
  if (b < split) {
    body = integrate([p](double w) { return 1.0 / (1.0 + std::pow(w, p)); }, b, split, settings).value;
  }
  return body + tail_series(split, p);
}

double pareto_received_power_cdf(double y, double alpha, double max_range) {
  require_alpha(alpha, "pareto_received_power_cdf");
  if (!(max_range > 0.0) || !std::isfinite(max_range)) {
    throw DomainError("pareto_received_power_cdf: range must be finite and > 0");
  }
  if (std::isnan(y)) throw DomainError("pareto_received_power_cdf: y is NaN");
  if (y <= 0.0) return 0.0;
  if (std::isinf(y)) return 1.0;
  const double beta = 2.0 / alpha;
  const double value = 1.0 - std::tgamma(beta + 1.0) * std::pow(y, -beta) / (max_range * max_range);
  return std::clamp(value, 0.0, 1.0);
}

double linear_to_db(double linear) {
  if (!(linear > 0.0)) throw DomainError("linear_to_db: value must be > 0");
  return 10.0 * std::log10(linear);
}

}  // namespace sicnet
