#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sicnet/model.hpp"
#include "sicnet/rng.hpp"

namespace sicnet {

struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;  // sqrt(mean (1 - mean) / trials)
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

Estimate make_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);

/// (mean - reference) / stderr, with the stderr floored at 1 / trials so a
/// degenerate all-pass or all-fail run still yields a finite score.
double z_score(const Estimate& e, double reference);
/// Difference of two independent estimates over their joint stderr.
double joint_z(const Estimate& a, const Estimate& b);

struct McOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;         // 0: hardware concurrency
  double window_radius = 0.0;   // 0: 20 / sqrt(pi * density of the interfering field)
  bool freeze_positions = false;
};

unsigned resolve_threads(unsigned requested);
double default_window_radius(double density);

enum class Ordering { distance_only, power_with_fading };
const char* ordering_name(Ordering o);

struct PointSet {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t size() const { return x.size(); }
};

/// Homogeneous PPP in the disk of the given radius around the origin.
PointSet sample_ppp(double density, double radius, SplitMix64& rng);

/// One uplink realization for a receiver at the origin.
struct SampledScene {
  std::vector<double> x, y;  // interferer positions, m
  std::vector<double> r2;    // squared distances, m^2
  std::vector<double> h;     // unit-mean exponential fading marks
  double serving_distance = 0.0;
  double serving_fading = 1.0;
  double window_radius = 0.0;
  std::uint64_t rng_seed = 0;

  std::size_t size() const { return r2.size(); }
};

/// Serving distance from the nearest-AP law with lambda_eq, interferers
/// PPP(mu_j) within window_radius, all at unit power.
SampledScene sample_scene(double lambda_eq, double mu_j, double window_radius, SplitMix64& rng);

/// Interferer powers h r^-alpha, strongest first under the given ordering
/// (distance_only: nearest first; power_with_fading: largest received power).
std::vector<double> ordered_powers(const SampledScene& scene, double alpha, Ordering ordering);

/// Aggregate interference after removing the first n_trim interferers of the
/// ordering. Throws DomainError when n_trim exceeds the interferer count.
double trimmed_sum_oracle(const SampledScene& scene, double alpha, int n_trim, Ordering ordering);

enum class FailureStage { none, decode_initial, cancel_stage, exhausted };
const char* failure_stage_name(FailureStage s);

struct TrialOutcome {
  bool succeeded = false;
  int cancellations_used = 0;
  FailureStage failure_stage = FailureStage::none;
  int failure_index = 0;        // stage n for cancel_stage
  std::vector<double> soi_sir;  // SoI SIR after 0, 1, ... trims, as evaluated
};

/// Runs the decode / cancel / retry chain on one scene.
TrialOutcome run_sic_trial(const NetworkConfig& cfg, const SicConfig& sic, const SampledScene& scene,
                           Ordering ordering);

// ---------------------------------------------------------------------------
// Equivalent single-tier estimators

struct SicMcResult {
  std::vector<double> etas;
  std::vector<std::vector<Estimate>> by_eta_cap;  // [eta][N = 0..n_max]
};

/// One pass over the trials evaluates every threshold and every cap N.
SicMcResult estimate_ps_sic_mc(const NetworkConfig& cfg, const std::vector<double>& etas, int n_max,
                               Ordering ordering, const McOptions& opts);
Estimate estimate_ps_sic_mc(const NetworkConfig& cfg, const SicConfig& sic, std::uint64_t trials,
                            std::uint64_t seed, Ordering ordering = Ordering::distance_only);

/// unconditional: P[X_(n) >= eta I_n] over all scenes.
/// chain_conditional: same event among scenes where stages 1..n-1 succeeded.
enum class CanMode { unconditional, chain_conditional };

struct CanMcResult {
  std::vector<double> etas;
  std::vector<std::vector<Estimate>> by_eta_n;  // [eta][n - 1], n = 1..n_max
};

CanMcResult estimate_ps_can_mc(double mu_j, double alpha, const std::vector<double>& etas, int n_max,
                               Ordering ordering, CanMode mode, const McOptions& opts);
Estimate estimate_ps_can_mc(const NetworkConfig& cfg, double eta, int n, std::uint64_t trials,
                            std::uint64_t seed, Ordering ordering, CanMode mode = CanMode::unconditional);

/// Decoding after removing every interferer inside R_n, counted as a failure
/// when the serving user itself lies inside R_n.
Estimate estimate_ps_ic_mc(double eta, int n, double lambda_eq, double mu_j, double alpha,
                           const McOptions& opts);

// ---------------------------------------------------------------------------
// Association policies

struct MinLoadMcResult {
  std::vector<double> rhos;
  std::vector<Estimate> min_load;      // lowest-load AP within r_con
  std::vector<Estimate> min_load_sic;  // same AP, one cancellation allowed
  std::vector<Estimate> max_sir;       // nearest AP with its own load
  std::vector<std::uint64_t> serving_load_histogram;  // min-load AP, excluding the typical user
  Estimate no_candidate;  // fraction of trials with no AP inside r_con (nearest AP used)
};

/// Downlink rate coverage with explicit Voronoi loads. Per trial: AP PPP(lambda),
/// user PPP(mu_j), users assigned to their nearest AP, typical user at the origin.
MinLoadMcResult simulate_min_load(double lambda, double mu_j, double alpha, double r_con,
                                  const std::vector<double>& rhos, const McOptions& opts);
Estimate simulate_min_load(double lambda, double mu_j, double r_con, double rho, std::uint64_t trials,
                           std::uint64_t seed, double alpha = 4.0);

struct CellLoadSample {
  std::vector<std::uint64_t> tagged;   // cell covering the origin, typical user excluded
  std::vector<std::uint64_t> typical;  // cell of an AP added at the origin
  std::uint64_t cells = 0;
};

CellLoadSample sample_cell_loads(double lambda, double mu_j, const McOptions& opts);

/// shared: every candidate AP sees the same user field (physical model).
/// independent: each candidate AP sees its own fresh field, the independence
/// assumption behind the closed form.
enum class FieldModel { shared, independent };

struct MaxSirMcResult {
  std::vector<double> etas;
  std::vector<std::vector<Estimate>> by_eta_cap;  // [eta][N = 0..n_max]
};

MaxSirMcResult simulate_max_inst_sir(const NetworkConfig& cfg, const std::vector<double>& etas, int n_max,
                                     FieldModel field, const McOptions& opts);
Estimate simulate_max_inst_sir(const NetworkConfig& cfg, const SicConfig& sic, std::uint64_t trials,
                               std::uint64_t seed);

struct ReaMcResult {
  std::vector<double> etas;
  std::vector<Estimate> uncancelled;
  std::vector<Estimate> cancelled;
  /// Diagnostic: serving distance from the range-expanded law, each tier a
  /// PPP outside its exclusion radius (the closed form's assumptions).
  std::vector<Estimate> model_uncancelled;
  std::vector<Estimate> model_cancelled;
  Estimate rea_fraction;                  // REA users / sampled users
  std::vector<double> serving_distances;  // first trials serving distances
};

/// trials counts REA users; sampling stops once that many were found.
ReaMcResult simulate_rea(const NetworkConfig& cfg, std::size_t k, const std::vector<double>& etas,
                         const McOptions& opts);
Estimate simulate_rea(const NetworkConfig& cfg, double eta, bool cancelled, std::uint64_t trials,
                      std::uint64_t seed);

/// Fraction of users whose biased winner is tier k but whose unbiased winner is not.
Estimate rea_fraction_mc(const NetworkConfig& cfg, std::size_t k, std::uint64_t users, std::uint64_t seed);

}  // namespace sicnet
