#include "sicnet/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sicnet/errors.hpp"

namespace sicnet {

namespace {

constexpr double kPi = std::numbers::pi;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void check_tier(const NetworkConfig& cfg, std::size_t k) {
  if (k >= cfg.tiers.size()) {
    std::ostringstream os;
    os << "tier index " << k << " out of range (K = " << cfg.tiers.size() << ")";
    throw DomainError(os.str());
  }
}

// sum_i lambda_i (P_i b_i / (P_k b_k))^(2/alpha), with per-tier bias override.
double weighted_sum(const NetworkConfig& cfg, std::size_t k, bool use_bias, double bias_k) {
  const double beta = 2.0 / cfg.alpha;
  const auto& tk = cfg.tiers[k];
  double sum = 0.0;
  for (std::size_t i = 0; i < cfg.tiers.size(); ++i) {
    const auto& ti = cfg.tiers[i];
    double ratio = ti.p_dl / tk.p_dl;
    if (use_bias) {
      const double bi = (i == k) ? bias_k : ti.bias;
      ratio *= bi / bias_k;
    }
    sum += ti.lambda * std::pow(ratio, beta);
  }
  return sum;
}

}  // namespace

void TierParams::validate() const {
  if (!positive_finite(lambda)) throw ConfigError("tier: lambda must be finite and > 0");
  if (!positive_finite(p_dl)) throw ConfigError("tier: p_dl must be finite and > 0");
  if (!positive_finite(q_ul)) throw ConfigError("tier: q_ul must be finite and > 0");
  if (!std::isfinite(bias) || bias < 1.0) throw ConfigError("tier: bias must be finite and >= 1");
}

void NetworkConfig::validate() const {
  if (tiers.empty()) throw ConfigError("network: at least one tier is required");
  for (const auto& t : tiers) t.validate();
  if (!std::isfinite(alpha) || !(alpha > 2.0)) throw ConfigError("network: alpha must be > 2");
  if (!positive_finite(mu)) throw ConfigError("network: mu must be finite and > 0");
  if (!positive_finite(mu_j)) throw ConfigError("network: mu_j must be finite and > 0");
  if (mu_j > mu * (1.0 + 1e-12)) throw ConfigError("network: mu_j must not exceed mu");
}

NetworkConfig NetworkConfig::single_tier(double lambda, double mu_j, double alpha) {
  NetworkConfig cfg;
  cfg.tiers.push_back(TierParams{lambda, 1.0, 1.0, 1.0});
  cfg.alpha = alpha;
  cfg.mu = mu_j;
  cfg.mu_j = mu_j;
  return cfg;
}

void SicConfig::validate() const {
  if (!positive_finite(eta_t)) throw ConfigError("sic: eta_t must be finite and > 0");
  if (n_max < 0) throw ConfigError("sic: n_max must be >= 0");
}

double power_weighted_density(const std::vector<double>& q_ul, const std::vector<double>& mu_per_tier,
                              std::size_t k, double alpha) {
  if (q_ul.size() != mu_per_tier.size() || k >= q_ul.size()) {
    throw DomainError("power_weighted_density: size mismatch or tier index out of range");
  }
  const double beta = 2.0 / alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < q_ul.size(); ++i) sum += mu_per_tier[i] * std::pow(q_ul[i] / q_ul[k], beta);
  return sum;
}

std::vector<double> tier_user_densities(const NetworkConfig& cfg) {
  cfg.validate();
  std::vector<double> out(cfg.size());
  for (std::size_t k = 0; k < cfg.size(); ++k) out[k] = association_prob_max_power(cfg, k) * cfg.mu;
  return out;
}

EquivalentNetwork equivalent_density(const NetworkConfig& cfg) {
  cfg.validate();
  const double beta = 2.0 / cfg.alpha;
  EquivalentNetwork eq;
  for (const auto& t : cfg.tiers) eq.lambda_eq += t.lambda * std::pow(t.p_dl, beta);
  const auto mu_i = tier_user_densities(cfg);
  std::vector<double> q;
  for (const auto& t : cfg.tiers) q.push_back(t.q_ul);
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    eq.mu_tilde.push_back(power_weighted_density(q, mu_i, k, cfg.alpha));
  }
  return eq;
}

double association_prob_max_power(const NetworkConfig& cfg, std::size_t k) {
  check_tier(cfg, k);
  return cfg.tiers[k].lambda / weighted_sum(cfg, k, false, 1.0);
}

double biased_association_prob(const NetworkConfig& cfg, std::size_t k) {
  check_tier(cfg, k);
  return cfg.tiers[k].lambda / weighted_sum(cfg, k, true, cfg.tiers[k].bias);
}

double rea_association_prob(const NetworkConfig& cfg, std::size_t k) {
  check_tier(cfg, k);
  double others = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (i != k) others += biased_association_prob(cfg, i);
  }
  const double unbiased_k = cfg.tiers[k].lambda / weighted_sum(cfg, k, true, 1.0);
  const double p = 1.0 - others - unbiased_k;
  // Rounding can leave a tiny negative residue for an empty area.
  return p < 1e-15 ? 0.0 : p;
}

double nearest_ap_distance_pdf(double lambda, double u) {
  if (!positive_finite(lambda)) throw DomainError("nearest_ap_distance_pdf: lambda must be > 0");
  if (!(u >= 0.0)) throw DomainError("nearest_ap_distance_pdf: u must be >= 0");
  return 2.0 * kPi * lambda * u * std::exp(-lambda * kPi * u * u);
}

double nth_interferer_distance_pdf(double mu_j, int n, double r) {
  if (!positive_finite(mu_j)) throw DomainError("nth_interferer_distance_pdf: mu_j must be > 0");
  if (n < 1) throw DomainError("nth_interferer_distance_pdf: n must be >= 1");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("nth_interferer_distance_pdf: r must be >= 0");
  if (r == 0.0) return 0.0;
  const double x = mu_j * kPi * r * r;
  // log form keeps large n finite
  const double log_val = -x + std::log(2.0) + n * std::log(x) - std::log(r) - std::lgamma(n);
  return std::exp(log_val);
}

double cancellation_radius(double mu_j, int n) {
  if (!positive_finite(mu_j)) throw DomainError("cancellation_radius: mu_j must be > 0");
  if (n < 0) throw DomainError("cancellation_radius: n must be >= 0");
  return std::sqrt(n / (mu_j * kPi));
}

double rea_distance_pdf(const NetworkConfig& cfg, std::size_t k, double x) {
  check_tier(cfg, k);
  const double p_re = rea_association_prob(cfg, k);
  if (!(p_re > 0.0)) throw DomainError("rea_distance_pdf: range-expanded area of this tier is empty");
  if (!(x >= 0.0)) throw DomainError("rea_distance_pdf: x must be >= 0");
  const double biased = weighted_sum(cfg, k, true, cfg.tiers[k].bias);
  const double plain = weighted_sum(cfg, k, false, 1.0);
  const double x2 = x * x;
  return 2.0 * kPi * cfg.tiers[k].lambda / p_re * x *
         (std::exp(-kPi * biased * x2) - std::exp(-kPi * plain * x2));
}

}  // namespace sicnet
