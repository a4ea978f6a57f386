#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/montecarlo.hpp"
#include "sicnet/numerics.hpp"

using namespace sicnet;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

McOptions opts(std::uint64_t trials, std::uint64_t seed, unsigned threads = 1) {
  McOptions o;
  o.trials = trials;
  o.seed = seed;
  o.threads = threads;
  return o;
}

SampledScene handmade_scene() {
  // serving user at 10 m; interferers at 5, 20 and 100 m, unit fading
  SampledScene s;
  const double r[] = {20.0, 5.0, 100.0};
  for (double d : r) {
    s.x.push_back(d);
    s.y.push_back(0.0);
    s.r2.push_back(d * d);
    s.h.push_back(1.0);
  }
  s.serving_distance = 10.0;
  s.serving_fading = 1.0;
  s.window_radius = 200.0;
  return s;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("estimates and scores") {
  const auto e = make_estimate(250, 1000, 3);
  CHECK(e.mean == 0.25);
  CHECK(e.std_err == Approx(std::sqrt(0.25 * 0.75 / 1000)));
  CHECK(z_score(e, 0.25) == 0.0);
  const auto zero = make_estimate(0, 1000, 3);
  CHECK(std::isfinite(z_score(zero, 0.01)));
  CHECK(z_score(zero, 0.001) == Approx(-1.0));
  CHECK(joint_z(e, e) == 0.0);
  CHECK_THROWS_AS(make_estimate(5, 0, 1), DomainError);
}

TEST_CASE("PPP sampler: counts and support") {
  SplitMix64 rng(17);
  const double lambda = 1e-3, radius = 100.0;
  double total = 0.0;
  const int reps = 400;
  for (int i = 0; i < reps; ++i) {
    const auto pts = sample_ppp(lambda, radius, rng);
    total += static_cast<double>(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) CHECK_UNARY(std::hypot(pts.x[k], pts.y[k]) <= radius);
  }
  const double mean = lambda * kPi * radius * radius;
  CHECK(total / reps == Approx(mean).epsilon(4.0 / std::sqrt(mean * reps)));
}

TEST_CASE("scene geometry is consistent") {
  SplitMix64 rng(3);
  const auto s = sample_scene(1e-4, 1e-4, default_window_radius(1e-4), rng);
  CHECK(s.window_radius == Approx(20.0 / std::sqrt(kPi * 1e-4)));
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.r2[i] == Approx(s.x[i] * s.x[i] + s.y[i] * s.y[i]).epsilon(1e-12));
    CHECK_UNARY(s.h[i] > 0.0);
  }
  CHECK_UNARY(s.serving_distance > 0.0);
}

TEST_CASE("orderings and trimmed sums") {
  SplitMix64 rng(5);
  const auto s = sample_scene(1e-4, 1e-4, 500.0, rng);
  REQUIRE(s.size() > 10);
  for (Ordering ord : {Ordering::distance_only, Ordering::power_with_fading}) {
    const auto p = ordered_powers(s, 4.0, ord);
    REQUIRE(p.size() == s.size());
    if (ord == Ordering::power_with_fading) CHECK(std::is_sorted(p.begin(), p.end(), std::greater<>()));
    double total = 0.0;
    for (double v : p) total += v;
    double removed = 0.0;
    for (int n = 0; n <= 5; ++n) {
      CHECK(trimmed_sum_oracle(s, 4.0, n, ord) == Approx(total - removed).epsilon(1e-12));
      removed += p[n];
    }
  }
  // distance ordering: first power belongs to the nearest interferer
  const auto p = ordered_powers(s, 4.0, Ordering::distance_only);
  const auto nearest = std::min_element(s.r2.begin(), s.r2.end()) - s.r2.begin();
  CHECK(p[0] == Approx(s.h[nearest] / (s.r2[nearest] * s.r2[nearest])));
  CHECK_THROWS_AS(trimmed_sum_oracle(s, 4.0, static_cast<int>(s.size()) + 1, Ordering::distance_only), DomainError);
}

TEST_CASE("decode / cancel / retry on a hand-made scene") {
  const auto s = handmade_scene();
  const auto cfg = NetworkConfig::single_tier(1e-4, 1e-4);
  SicConfig sic;
  sic.eta_t = 1.0;
  sic.n_max = 0;
  auto out = run_sic_trial(cfg, sic, s, Ordering::distance_only);
  CHECK_FALSE(out.succeeded);
  CHECK(out.failure_stage == FailureStage::decode_initial);

  sic.n_max = 2;
  out = run_sic_trial(cfg, sic, s, Ordering::distance_only);
  CHECK(out.succeeded);
  CHECK(out.cancellations_used == 1);
  REQUIRE(out.soi_sir.size() == 2);
  const double i0 = std::pow(5.0, -4) + std::pow(20.0, -4) + std::pow(100.0, -4);
  const double i1 = std::pow(20.0, -4) + std::pow(100.0, -4);
  CHECK(out.soi_sir[0] == Approx(1e-4 / i0).epsilon(1e-13));
  CHECK(out.soi_sir[1] == Approx(1e-4 / i1).epsilon(1e-13));

  // Threshold too high to decode the strongest interferer: fails at stage 1.
  sic.eta_t = 300.0;
  out = run_sic_trial(cfg, sic, s, Ordering::distance_only);
  CHECK_FALSE(out.succeeded);
  CHECK(out.failure_stage == FailureStage::cancel_stage);
  CHECK(out.failure_index == 1);
  CHECK(out.cancellations_used == 0);
}

TEST_CASE("chain runs out of cancellations") {
  // serving user far away: every interferer is cancellable but the SoI never clears
  auto s = handmade_scene();
  s.serving_distance = 1000.0;
  SicConfig sic;
  sic.eta_t = 1.0;
  sic.n_max = 2;
  const auto out = run_sic_trial(NetworkConfig::single_tier(1e-4, 1e-4), sic, s, Ordering::distance_only);
  CHECK_FALSE(out.succeeded);
  CHECK(out.failure_stage == FailureStage::exhausted);
  CHECK(out.cancellations_used == 2);
  CHECK(std::string(failure_stage_name(out.failure_stage)) == "exhausted");
}

TEST_CASE("results do not depend on the thread count") {
  const auto cfg = NetworkConfig::single_tier(1e-4, 1e-4);
  const std::vector<double> etas = {0.5, 2.0};
  const auto a = estimate_ps_sic_mc(cfg, etas, 3, Ordering::power_with_fading, opts(3001, 9, 1));
  const auto b = estimate_ps_sic_mc(cfg, etas, 3, Ordering::power_with_fading, opts(3001, 9, 3));
  for (std::size_t i = 0; i < etas.size(); ++i)
    for (int n = 0; n <= 3; ++n) CHECK(a.by_eta_cap[i][n].successes == b.by_eta_cap[i][n].successes);

  const auto c = simulate_min_load(1e-5, 5e-5, 4.0, 260.0, {0.1, 0.3}, opts(1500, 4, 1));
  const auto d = simulate_min_load(1e-5, 5e-5, 4.0, 260.0, {0.1, 0.3}, opts(1500, 4, 4));
  CHECK(c.min_load[1].successes == d.min_load[1].successes);
  CHECK(c.serving_load_histogram == d.serving_load_histogram);
}

TEST_CASE("no-cancellation decoding agrees with the closed form") {
  const auto cfg = NetworkConfig::single_tier(1e-4, 1e-4);
  const auto r = estimate_ps_sic_mc(cfg, {1.0}, 0, Ordering::distance_only, opts(20000, 21));
  CHECK(std::abs(z_score(r.by_eta_cap[0][0], ps_plain(1.0, 1e-4, 1e-4, 4.0))) < 4.0);
}

TEST_CASE("distance-ordered cancellation agrees with the closed form") {
  const auto r = estimate_ps_can_mc(1e-4, 4.0, {db_to_linear(5.0)}, 3, Ordering::distance_only,
                                    CanMode::unconditional, opts(20000, 22));
  for (int n = 1; n <= 3; ++n) CHECK(std::abs(z_score(r.by_eta_n[0][n - 1], ps_can(db_to_linear(5.0), n, 4.0))) < 4.0);
}

TEST_CASE("decoding inside the cancellation radius agrees with the closed form") {
  const auto e = estimate_ps_ic_mc(0.5, 2, 1e-4, 1e-4, 4.0, opts(20000, 23));
  CHECK(std::abs(z_score(e, ps_ic(0.5, 2, 1e-4, 1e-4, 4.0))) < 4.0);
}

TEST_CASE("cell covering a user is size biased") {
  const auto s = sample_cell_loads(1e-5, 5e-5, opts(4000, 31));
  double tagged = 0.0, typical = 0.0, nt = 0.0, ny = 0.0;
  for (std::size_t m = 0; m < s.tagged.size(); ++m) {
    tagged += m * static_cast<double>(s.tagged[m]);
    nt += static_cast<double>(s.tagged[m]);
    typical += m * static_cast<double>(s.typical[m]);
    ny += static_cast<double>(s.typical[m]);
  }
  CHECK(tagged / nt == Approx(4.5 / 3.5 * 5.0).epsilon(0.05));
  CHECK(typical / ny == Approx(5.0).epsilon(0.05));
}

TEST_CASE("range-expanded area fraction agrees with the closed form") {
  NetworkConfig cfg;
  cfg.tiers = {{1e-5, 10.0, 1.0, 1.0}, {1e-4, 1.0, 1.0, 5.0}};
  cfg.mu = cfg.mu_j = 1e-4;
  const auto e = rea_fraction_mc(cfg, 1, 40000, 41);
  CHECK(std::abs(z_score(e, rea_association_prob(cfg, 1))) < 4.0);
}

TEST_CASE("independent-field max-SIR simulation matches the outage formula") {
  NetworkConfig cfg;
  cfg.tiers = {{1e-5, 10.0, 10.0, 1.0}, {1e-4, 1.0, 1.0, 1.0}};
  cfg.mu = cfg.mu_j = 1e-4;
  const double eta = 10.0;
  const auto r = simulate_max_inst_sir(cfg, {eta}, 0, FieldModel::independent, opts(3000, 51));
  CHECK(std::abs(z_score(r.by_eta_cap[0][0], 1.0 - outage_max_inst_sir(eta, cfg))) < 4.0);
}

TEST_CASE("invalid Monte Carlo inputs are rejected") {
  const auto cfg = NetworkConfig::single_tier(1e-4, 1e-4);
  CHECK_THROWS_AS(estimate_ps_sic_mc(cfg, {1.0}, -1, Ordering::distance_only, opts(100, 1)), DomainError);
  CHECK_THROWS_AS(estimate_ps_sic_mc(cfg, {-1.0}, 1, Ordering::distance_only, opts(100, 1)), DomainError);
  CHECK_THROWS_AS(estimate_ps_sic_mc(cfg, {1.0}, 1, Ordering::distance_only, opts(0, 1)), DomainError);
  SplitMix64 g(1);
  CHECK_THROWS_AS(sample_ppp(-1.0, 10.0, g), DomainError);
}

}  // TEST_SUITE
