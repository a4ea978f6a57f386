#include <cmath>
#include <numbers>

#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/numerics.hpp"

namespace sicnet {

namespace {

constexpr double kPi = std::numbers::pi;

// Gain integrand in s = mu_tilde pi u^2, where R_n^2 / u^2 = n / s.
double gain_in_area(double e, int n_max, double can1, double alpha, double s) {
  if (s <= 0.0) return 0.0;
  auto decode_after = [&](int n) { return std::exp(-e * s * c_integral(n / (e * s), alpha)); };
  double sum = 0.0;
  double outage = 1.0;
  double prev = decode_after(0);
  for (int i = 1; i <= n_max; ++i) {
    outage *= 1.0 - prev;
    if (outage == 0.0) break;
    const double cur = decode_after(i);
    sum += outage * std::pow(can1, 0.5 * i * (i + 1)) * cur;
    prev = cur;
  }
  return sum;
}

}  // namespace

double outage_max_inst_sir(double eta, const NetworkConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(eta) || !(eta > 0.0)) throw DomainError("eta must be finite and > 0");
  const double beta = 2.0 / cfg.alpha;
  const auto mu_i = tier_user_densities(cfg);
  double aps = 0.0;
  double users = 0.0;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const double qb = std::pow(cfg.tiers[k].q_ul, beta);
    aps += cfg.tiers[k].lambda * qb;
    users += mu_i[k] * qb;
  }
  return std::exp(-aps / (std::pow(eta, beta) * c_integral_at_zero(cfg.alpha) * users));
}

double sic_gain_given_distance(double eta, int n_max, double mu_tilde, double alpha, double u) {
  if (!std::isfinite(eta) || !(eta > 0.0)) throw DomainError("eta must be finite and > 0");
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (!(mu_tilde > 0.0)) throw DomainError("mu_tilde must be > 0");
  const double e = std::pow(eta, 2.0 / alpha);
  return gain_in_area(e, n_max, ps_can(eta, 1, alpha), alpha, mu_tilde * kPi * u * u);
}

double ps_sic_max_inst_sir(double eta, int n_max, const NetworkConfig& cfg, const QuadratureSettings& quad) {
  const double p_out = outage_max_inst_sir(eta, cfg);
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (n_max == 0) return 1.0 - p_out;
  const auto eq = equivalent_density(cfg);
  const double e = std::pow(eta, 2.0 / cfg.alpha);
  const double can1 = ps_can(eta, 1, cfg.alpha);
  double log_keep = std::log(p_out);
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const double m = eq.mu_tilde[k];
    // 2 pi lambda_k int P_gain(u) u du = (lambda_k / m) int G(s) ds
    const double area = integrate_to_infinity(
        [&](double s) { return gain_in_area(e, n_max, can1, cfg.alpha, s); }, 0.0, quad).value;
    log_keep -= cfg.tiers[k].lambda / m * area;
  }
  return 1.0 - std::exp(log_keep);
}

double ps_ic_rea(double eta, const NetworkConfig& cfg, std::size_t k, bool cancelled) {
  cfg.validate();
  if (!std::isfinite(eta) || !(eta > 0.0)) throw DomainError("eta must be finite and > 0");
  if (k >= cfg.size()) throw DomainError("tier index out of range");
  const double p_re = rea_association_prob(cfg, k);
  if (!(p_re > 0.0)) throw DomainError("range-expanded area of this tier is empty");
  const double beta = 2.0 / cfg.alpha;
  const double e = std::pow(eta, beta);
  const auto& tk = cfg.tiers[k];
  double biased = 0.0;
  double plain = 0.0;
  for (const auto& ti : cfg.tiers) {
    const double w = (ti.lambda / tk.lambda) * std::pow(ti.p_dl / tk.p_dl, beta);
    const double bias_ratio = ti.bias / tk.bias;
    const double exclusion = cancelled ? 1.0 / eta : bias_ratio / eta;
    const double field = e * c_integral(std::pow(exclusion, beta), cfg.alpha);
    biased += w * (field + std::pow(bias_ratio, beta));
    plain += w * (field + 1.0);
  }
  return (1.0 / biased - 1.0 / plain) / p_re;
}

}  // namespace sicnet
