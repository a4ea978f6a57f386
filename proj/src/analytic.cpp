#include "sicnet/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sicnet/errors.hpp"
#include "sicnet/numerics.hpp"

namespace sicnet {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    std::ostringstream os;
    os << what << " must be finite and > 0 (got " << x << ")";
    throw DomainError(os.str());
  }
}

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 2.0)) throw DomainError("alpha must be finite and > 2");
}

}  // namespace

double ps_plain(double eta, double lambda_eq, double mu_j, double alpha) {
  require_positive(eta, "eta");
  require_positive(lambda_eq, "lambda_eq");
  require_positive(mu_j, "mu_j");
  require_alpha(alpha);
  const double e = std::pow(eta, 2.0 / alpha);
  return lambda_eq / (lambda_eq + mu_j * e * c_integral_at_zero(alpha));
}

double ps_ic_given_distance(double eta, int n, double mu_j, double alpha, double u) {
  require_positive(eta, "eta");
  require_positive(mu_j, "mu_j");
  require_alpha(alpha);
  if (n < 0) throw DomainError("n must be >= 0");
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("u must be finite and >= 0");
  if (u == 0.0) return 1.0;
  const double e = std::pow(eta, 2.0 / alpha);
  const double r2 = n / (mu_j * kPi);
  return std::exp(-kPi * mu_j * e * c_integral(r2 / (e * u * u), alpha) * u * u);
}

double ps_ic(double eta, int n, double lambda_eq, double mu_j, double alpha, const IcOptions& opts) {
  require_positive(eta, "eta");
  require_positive(lambda_eq, "lambda_eq");
  require_positive(mu_j, "mu_j");
  require_alpha(alpha);
  if (n < 0) throw DomainError("n must be >= 0");
  const double e = std::pow(eta, 2.0 / alpha);
  const double ratio = mu_j / lambda_eq;
  // s = lambda_eq pi u^2; the cancellation radius sits at s0 = n lambda_eq / mu_j.
  const double s0 = n / ratio;
  auto integrand = [&](double s) {
    if (s <= 0.0) return 1.0;
    return std::exp(-ratio * e * s * c_integral(s0 / (e * s), alpha) - s);
  };
  double value = integrate_to_infinity(integrand, s0, opts.quadrature).value;
  if (opts.renormalize_serving_distance) value *= std::exp(s0);
  return value;
}

double ps_can(double eta, int n, double alpha) {
  require_positive(eta, "eta");
  require_alpha(alpha);
  if (n < 0) throw DomainError("n must be >= 0");
  const double e = std::pow(eta, 2.0 / alpha);
  const double one = 1.0 / (1.0 + e * c_integral(1.0 / e, alpha));
  return std::pow(one, n);
}

double ps_can_tsd(double eta, int n) {
  if (!std::isfinite(eta) || eta < 0.0) throw DomainError("eta must be finite and >= 0");
  if (n < 0) throw DomainError("n must be >= 0");
  return std::pow(std::sqrt(2.25 + 3.0 * eta) - 0.5, -n);
}

double tsd_cumulant(int k, double q, double mu_j, double d_min, double alpha, double fading_moment) {
  require_positive(q, "q");
  require_positive(mu_j, "mu_j");
  require_positive(d_min, "d_min");
  require_positive(fading_moment, "fading moment");
  require_alpha(alpha);
  if (k < 1 || !(k * alpha > 2.0)) throw DomainError("cumulant order must satisfy k alpha > 2");
  return std::pow(q, k) * 2.0 * kPi * mu_j / (k * alpha - 2.0) * std::pow(d_min, 2.0 - k * alpha) *
         fading_moment;
}

TsdParams tsd_params(double q, double mu_j, double d_min, double alpha) {
  TsdParams p;
  p.alpha_i = 2.0 / alpha;
  p.kappa1 = tsd_cumulant(1, q, mu_j, d_min, alpha, 1.0);
  p.kappa2 = tsd_cumulant(2, q, mu_j, d_min, alpha, 2.0);
  p.g = p.kappa1 * (1.0 - p.alpha_i) / p.kappa2;
  p.gamma_prime = -p.kappa1 / (std::tgamma(-p.alpha_i) * p.alpha_i * std::pow(p.g, p.alpha_i - 1.0));
  return p;
}

double tsd_laplace(const TsdParams& p, double s) {
  if (!(s >= 0.0)) throw DomainError("Laplace argument must be >= 0");
  return std::exp(p.gamma_prime * std::tgamma(-p.alpha_i) *
                  (std::pow(p.g + s, p.alpha_i) - std::pow(p.g, p.alpha_i)));
}

double tsd_cancel_probability_given_distance(double eta, double mu_j, double r, double alpha) {
  if (!std::isfinite(eta) || eta < 0.0) throw DomainError("eta must be finite and >= 0");
  const TsdParams p = tsd_params(1.0, mu_j, r, alpha);
  return tsd_laplace(p, eta * std::pow(r, alpha));
}

double kurtosis_after_cancellation(double alpha, int n) {
  require_alpha(alpha);
  if (n < 2) throw DomainError("kurtosis needs n >= 2");
  return 6.0 * (alpha - 1.0) * (alpha - 1.0) / (2.0 * alpha - 1.0) / (n - 1.0);
}

double kurtosis_given_radius(double alpha, double mu_j, double r) {
  const double k2 = tsd_cumulant(2, 1.0, mu_j, r, alpha, 2.0);
  const double k4 = tsd_cumulant(4, 1.0, mu_j, r, alpha, 24.0);
  return k4 / (k2 * k2);
}

std::vector<double> SicGainBreakdown::cumulative() const {
  std::vector<double> out{ps_no_ic};
  for (const auto& level : per_level) out.push_back(out.back() + level.level_contribution);
  return out;
}

SicGainBreakdown ps_sic(double eta, int n_max, double lambda_eq, double mu_j, double alpha,
                        const IcOptions& opts) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  std::vector<double> ic(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) ic[n] = ps_ic(eta, n, lambda_eq, mu_j, alpha, opts);
  const double can1 = ps_can(eta, 1, alpha);

  SicGainBreakdown out;
  out.ps_no_ic = ic[0];
  out.ps_sic_total = ic[0];
  double outage = 1.0;
  for (int i = 1; i <= n_max; ++i) {
    outage *= 1.0 - ic[i - 1];
    SicLevel level;
    level.chain_outage_product = outage;
    // prod_{n=1}^{i} can1^n
    level.cancel_product = std::pow(can1, 0.5 * i * (i + 1));
    level.decode_after_i = ic[i];
    level.level_contribution = outage * level.cancel_product * ic[i];
    out.ps_sic_total += level.level_contribution;
    out.per_level.push_back(level);
  }
  return out;
}

}  // namespace sicnet
