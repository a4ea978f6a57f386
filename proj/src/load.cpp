#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/numerics.hpp"

namespace sicnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShape = 3.5;
constexpr long kMaxLoadEntries = 100000;

void check_densities(double mu_j, double lambda) {
  if (!std::isfinite(mu_j) || !(mu_j > 0.0)) throw DomainError("mu_j must be finite and > 0");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw DomainError("lambda must be finite and > 0");
}

// P[Binomial(n, x) < i]
double binomial_lower(int n, int i, double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  double sum = 0.0;
  const double lx = std::log(x);
  const double l1x = std::log1p(-x);
  for (int j = 0; j < i; ++j) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
    sum += std::exp(log_binom + j * lx + (n - j) * l1x);
  }
  return sum;
}

}  // namespace

double load_pmf(long m, double mu_j, double lambda) {
  check_densities(mu_j, lambda);
  if (m < 0) return 0.0;
  const double c = mu_j / lambda;
  const double md = static_cast<double>(m);
  const double log_p = kShape * std::log(kShape) - std::lgamma(md + 1.0) + std::lgamma(md + kShape + 1.0) -
                       std::lgamma(kShape) + md * std::log(c) - (md + kShape + 1.0) * std::log(kShape + c);
  return std::exp(log_p);
}

LoadDistribution::LoadDistribution(double mu_j, double lambda) {
  check_densities(mu_j, lambda);
  double acc = 0.0;
  for (long m = 0; m < kMaxLoadEntries; ++m) {
    const double p = load_pmf(m, mu_j, lambda);
    pmf_.push_back(p);
    acc += p;
    cdf_.push_back(acc);
    if (acc > 1.0 - 1e-12) break;
  }
}

double LoadDistribution::pmf(long m) const {
  if (m < 0 || m >= static_cast<long>(pmf_.size())) return 0.0;
  return pmf_[static_cast<std::size_t>(m)];
}

double LoadDistribution::cdf(long m) const {
  if (m < 0) return 0.0;
  if (m >= static_cast<long>(cdf_.size())) return cdf_.empty() ? 0.0 : cdf_.back();
  return cdf_[static_cast<std::size_t>(m)];
}

double LoadDistribution::mean() const {
  double s = 0.0;
  for (std::size_t m = 0; m < pmf_.size(); ++m) s += static_cast<double>(m) * pmf_[m];
  return s;
}

double load_order_statistic_pmf(int i, long m, int n_aps, const LoadDistribution& dist) {
  if (n_aps < 1) throw DomainError("order statistic needs n_aps >= 1");
  if (i < 1 || i > n_aps) throw DomainError("order statistic rank must lie in [1, n_aps]");
  if (m < 0) return 0.0;
  // The normalized Beta integral over [F(m-1), F(m)] equals the difference of
  // binomial tails; the lower tails are used so F near 1 keeps its precision.
  const double lo = dist.cdf(m - 1);
  const double hi = dist.cdf(m);
  return std::max(0.0, binomial_lower(n_aps, i, lo) - binomial_lower(n_aps, i, hi));
}

double rate_threshold(double rho, long m) {
  if (!std::isfinite(rho) || !(rho > 0.0)) throw DomainError("rate rho must be finite and > 0");
  if (m < 0) throw DomainError("load m must be >= 0");
  const double exponent = rho * static_cast<double>(m + 1) * std::numbers::ln2;
  if (exponent > 700.0) return std::numeric_limits<double>::infinity();
  return std::expm1(exponent);
}

double ps_rate_threshold(double varsigma, double alpha) {
  if (!(varsigma > 0.0)) throw DomainError("SIR threshold must be > 0");
  if (std::isinf(varsigma)) return 0.0;
  const double e = std::pow(varsigma, 2.0 / alpha);
  return 1.0 / (1.0 + e * c_integral(1.0 / e, alpha));
}

double rate_coverage_max_sir(double rho, double lambda, double mu_j, double alpha) {
  const LoadDistribution dist(mu_j, lambda);
  double total = 0.0;
  for (std::size_t m = 0; m < dist.size(); ++m) {
    const double cov = ps_rate_threshold(rate_threshold(rho, static_cast<long>(m)), alpha);
    const double term = dist.pmf_table()[m] * cov;
    if (term > 1e-300) total += term;
  }
  return total;
}

int min_load_candidate_count(double lambda, double r_con) {
  if (!std::isfinite(r_con) || !(r_con > 0.0)) throw DomainError("r_con must be finite and > 0");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw DomainError("lambda must be finite and > 0");
  return static_cast<int>(std::floor(lambda * kPi * r_con * r_con));
}

double min_load_conditional_coverage(double varsigma, double lambda, double alpha, double r_con,
                                     int n_cancel) {
  if (n_cancel < 0 || n_cancel > 1) throw DomainError("min-load coverage supports n_cancel in {0, 1}");
  if (!(varsigma > 0.0)) throw DomainError("SIR threshold must be > 0");
  if (std::isinf(varsigma)) return 0.0;
  const double e = std::pow(varsigma, 2.0 / alpha);
  const double c0 = c_integral_at_zero(alpha);
  const double r2max = r_con * r_con;
  if (n_cancel == 0) {
    const double x = kPi * lambda * e * c0 * r2max;
    if (x < 1e-12) return 1.0 - 0.5 * x;
    return -std::expm1(-x) / x;
  }
  // Cancelling the strongest other AP clears, on average, the disk that holds
  // one AP.
  const double r1sq = 1.0 / (kPi * lambda);
  const double cancel = ps_rate_threshold(varsigma, alpha);
  auto integrand = [&](double t) {
    if (t <= 0.0) return 1.0;
    const double p0 = std::exp(-kPi * lambda * e * c0 * t);
    const double p1 = std::exp(-kPi * lambda * e * c_integral(r1sq / (e * t), alpha) * t);
    return p0 + (1.0 - p0) * cancel * p1;
  };
  return integrate(integrand, 0.0, r2max).value / r2max;
}

double rate_coverage_min_load(double rho, double lambda, double mu_j, double alpha, double r_con,
                              int n_cancel) {
  const int n_aps = min_load_candidate_count(lambda, r_con);
  if (n_aps < 1) {
    std::ostringstream os;
    os << "min-load coverage: no AP expected within r_con = " << r_con << " m";
    throw DomainError(os.str());
  }
  const LoadDistribution dist(mu_j, lambda);
  double total = 0.0;
  for (std::size_t m = 0; m < dist.size(); ++m) {
    const double w = load_order_statistic_pmf(1, static_cast<long>(m), n_aps, dist);
    if (w == 0.0) continue;
    const double cov =
        min_load_conditional_coverage(rate_threshold(rho, static_cast<long>(m)), lambda, alpha, r_con, n_cancel);
    const double term = w * cov;
    if (term > 1e-300) total += term;
  }
  return total;
}

}  // namespace sicnet
