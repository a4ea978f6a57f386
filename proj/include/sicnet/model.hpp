#pragma once

#include <cstddef>
#include <vector>

namespace sicnet {

struct TierParams {
  double lambda = 1e-4;  // AP density, m^-2
  double p_dl = 1.0;     // downlink power, linear
  double q_ul = 1.0;     // uplink power, linear
  double bias = 1.0;     // association bias, >= 1

  void validate() const;
};

struct NetworkConfig {
  std::vector<TierParams> tiers;
  double alpha = 4.0;
  double mu = 1e-4;    // total user density, m^-2
  double mu_j = 1e-4;  // active users on the tagged channel, m^-2

  void validate() const;
  std::size_t size() const { return tiers.size(); }

  static NetworkConfig single_tier(double lambda, double mu_j, double alpha = 4.0);
};

struct SicConfig {
  double eta_t = 1.0;  // linear
  int n_max = 0;

  void validate() const;
};

struct EquivalentNetwork {
  double lambda_eq = 0.0;
  std::vector<double> mu_tilde;  // one entry per reference tier
};

/// lambda_eq = sum_k lambda_k P_k^(2/alpha); mu_tilde_k with mu_i = p_a,i * mu.
EquivalentNetwork equivalent_density(const NetworkConfig& cfg);

/// sum_i mu_i (Q_i / Q_k)^(2/alpha) for explicit per-tier user densities.
double power_weighted_density(const std::vector<double>& q_ul, const std::vector<double>& mu_per_tier,
                              std::size_t k, double alpha);

/// Users per tier under max average DL power association: mu * p_a,k.
std::vector<double> tier_user_densities(const NetworkConfig& cfg);

double association_prob_max_power(const NetworkConfig& cfg, std::size_t k);
double biased_association_prob(const NetworkConfig& cfg, std::size_t k);

/// Probability that a user sits in the range-expanded area of tier k.
double rea_association_prob(const NetworkConfig& cfg, std::size_t k);

double nearest_ap_distance_pdf(double lambda, double u);

/// Density of the distance to the n-th nearest point of a PPP(mu_j).
double nth_interferer_distance_pdf(double mu_j, int n, double r);

/// Radius of the disk holding n points on average: sqrt(n / (mu_j pi)).
double cancellation_radius(double mu_j, int n);

/// Serving distance density for users in the range-expanded area of tier k.
/// Throws DomainError when that area is empty.
double rea_distance_pdf(const NetworkConfig& cfg, std::size_t k, double x);

}  // namespace sicnet
