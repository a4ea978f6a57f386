#pragma once

#include <cstddef>
#include <vector>

#include "sicnet/model.hpp"
#include "sicnet/quadrature.hpp"

namespace sicnet {

// ---------------------------------------------------------------------------
// Single-tier (equivalent network) SIC chain

struct IcOptions {
  /// Divide by the serving-distance mass beyond the cancellation radius,
  /// exp(-lambda_eq pi R^2). Off by default.
  bool renormalize_serving_distance = false;
  QuadratureSettings quadrature{};
};

/// Decoding without cancellation: lambda_eq / (lambda_eq + mu_j eta^(2/a) C(0, a)).
double ps_plain(double eta, double lambda_eq, double mu_j, double alpha);

/// Decoding after n cancellations given serving distance u:
/// exp(-pi mu_j eta^(2/a) C(R_n^2 / (eta^(2/a) u^2), a) u^2).
double ps_ic_given_distance(double eta, int n, double mu_j, double alpha, double u);

/// Decoding after n cancellations, averaged over serving distances u >= R_n.
double ps_ic(double eta, int n, double lambda_eq, double mu_j, double alpha, const IcOptions& opts = {});

/// Probability of decoding (and cancelling) the n-th strongest interferer,
/// distance ordering: (1 + e C(1/e, a))^(-n), e = eta^(2/a).
double ps_can(double eta, int n, double alpha);

/// Truncated-stable counterpart for alpha = 4: (sqrt(9/4 + 3 eta) - 1/2)^(-n).
double ps_can_tsd(double eta, int n);

struct TsdParams {
  double alpha_i = 0.0;
  double gamma_prime = 0.0;
  double g = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

/// k-th cumulant of the interference from a PPP(mu_j) outside d_min:
/// q^k 2 pi mu_j / (k a - 2) d_min^(2 - k a) E[h^k].
double tsd_cumulant(int k, double q, double mu_j, double d_min, double alpha, double fading_moment);

/// Cumulant-matched truncated stable law under Rayleigh fading.
TsdParams tsd_params(double q, double mu_j, double d_min, double alpha);

/// Laplace transform exp(gamma' Gamma(-a_I) ((g + s)^a_I - g^a_I)).
double tsd_laplace(const TsdParams& p, double s);

/// Probability that a unit-power interferer at distance r is decoded against
/// the residual field beyond r, under the truncated stable model.
double tsd_cancel_probability_given_distance(double eta, double mu_j, double r, double alpha);

/// Excess kurtosis of the residual interference after n cancellations:
/// 6 (a - 1)^2 / (2a - 1) / (n - 1).
double kurtosis_after_cancellation(double alpha, int n);

/// Same quantity for a fixed exclusion radius r: kappa4 / kappa2^2.
double kurtosis_given_radius(double alpha, double mu_j, double r);

struct SicLevel {
  double chain_outage_product = 0.0;  // prod_{n<i} (1 - P_ic(n))
  double cancel_product = 0.0;        // prod_{n<=i} P_can(n)
  double decode_after_i = 0.0;        // P_ic(i)
  double level_contribution = 0.0;
};

struct SicGainBreakdown {
  double ps_no_ic = 0.0;
  std::vector<SicLevel> per_level;  // i = 1..N
  double ps_sic_total = 0.0;

  /// Success probability for every cap 0..N.
  std::vector<double> cumulative() const;
};

SicGainBreakdown ps_sic(double eta, int n_max, double lambda_eq, double mu_j, double alpha,
                        const IcOptions& opts = {});

// ---------------------------------------------------------------------------
// Load-aware rate coverage (single tier)

/// Cell load law f_M(m) for user/AP density ratio mu_j / lambda.
double load_pmf(long m, double mu_j, double lambda);

/// Tabulated load law, truncated once the cumulative mass exceeds 1 - 1e-12
/// (hard cap 1e5 entries).
class LoadDistribution {
 public:
  LoadDistribution(double mu_j, double lambda);

  std::size_t size() const { return pmf_.size(); }
  double pmf(long m) const;
  double cdf(long m) const;  // 0 for m < 0
  double mean() const;
  double total_mass() const { return cdf_.empty() ? 0.0 : cdf_.back(); }
  const std::vector<double>& pmf_table() const { return pmf_; }

 private:
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

/// i-th smallest of n_aps iid loads:
/// (1 / B(i, n - i + 1)) int_{F(m-1)}^{F(m)} w^(i-1) (1-w)^(n-i) dw.
double load_order_statistic_pmf(int i, long m, int n_aps, const LoadDistribution& dist);

/// varsigma = 2^(rho (m + 1)) - 1, evaluated without overflow.
double rate_threshold(double rho, long m);

/// 1 / (1 + s^(2/a) C(s^(-2/a), a)): coverage for SIR threshold s with the
/// nearest AP serving.
double ps_rate_threshold(double varsigma, double alpha);

double rate_coverage_max_sir(double rho, double lambda, double mu_j, double alpha);

/// Number of APs assumed inside the connectivity range, floor(lambda pi r^2).
int min_load_candidate_count(double lambda, double r_con);

/// Min-load association inside r_con. With n_cancel = 1 the receiver may
/// cancel the strongest other AP before decoding.
double rate_coverage_min_load(double rho, double lambda, double mu_j, double alpha, double r_con,
                              int n_cancel = 0);

/// Conditional coverage for a serving AP uniform in the disk of radius r_con.
double min_load_conditional_coverage(double varsigma, double lambda, double alpha, double r_con,
                                     int n_cancel = 0);

// ---------------------------------------------------------------------------
// Multi-tier association policies

/// Uplink outage when the user picks the AP with the highest instantaneous SIR.
double outage_max_inst_sir(double eta, const NetworkConfig& cfg);

/// SIC gain integrand for reference density mu_tilde at serving distance u.
double sic_gain_given_distance(double eta, int n_max, double mu_tilde, double alpha, double u);

double ps_sic_max_inst_sir(double eta, int n_max, const NetworkConfig& cfg,
                           const QuadratureSettings& quad = {});

/// Downlink success of users in the range-expanded area of tier k, without
/// (cancelled = false) or with the strongest unbiased AP removed.
double ps_ic_rea(double eta, const NetworkConfig& cfg, std::size_t k, bool cancelled);

}  // namespace sicnet
