#include "sicnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include "chain.hpp"
#include "parallel.hpp"
#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/kernels.hpp"

namespace sicnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kFrozenStream = ~0ULL;

void check_etas(const std::vector<double>& etas) {
  if (etas.empty()) throw DomainError("at least one threshold is required");
  for (double e : etas) {
    if (!std::isfinite(e) || !(e > 0.0)) throw DomainError("thresholds must be finite and > 0");
  }
}

void check_trials(std::uint64_t trials) {
  if (trials == 0) throw DomainError("trials must be > 0");
}

void fill_interferers(SampledScene& s, double density, double inner2, double outer2, SplitMix64& rng) {
  const std::uint64_t count = poisson(rng, density * kPi * (outer2 - inner2));
  s.x.resize(count);
  s.y.resize(count);
  s.r2.resize(count);
  s.h.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double r2 = inner2 + (outer2 - inner2) * rng.uniform();
    const double theta = 2.0 * kPi * rng.uniform();
    const double r = std::sqrt(r2);
    s.r2[i] = r2;
    s.x[i] = r * std::cos(theta);
    s.y[i] = r * std::sin(theta);
  }
  for (std::uint64_t i = 0; i < count; ++i) s.h[i] = rng.exponential();
}

void redraw_fading(SampledScene& s, SplitMix64& rng) {
  s.serving_fading = rng.exponential();
  for (double& h : s.h) h = rng.exponential();
}

// Scene for trial t; frozen positions are drawn once and only the marks change.
class SceneSource {
 public:
  SceneSource(double lambda_eq, double mu_j, double window, const McOptions& opts)
      : lambda_eq_(lambda_eq), mu_j_(mu_j), window_(window), opts_(opts) {
    if (opts.freeze_positions) {
      SplitMix64 rng = trial_stream(opts.seed, kFrozenStream);
      frozen_ = sample_scene(lambda_eq, mu_j, window, rng);
    }
  }

  void draw(std::uint64_t t, SampledScene& out) const {
    SplitMix64 rng = trial_stream(opts_.seed, t);
    if (opts_.freeze_positions) {
      out = frozen_;
      redraw_fading(out, rng);
    } else {
      out = sample_scene(lambda_eq_, mu_j_, window_, rng);
    }
    out.rng_seed = opts_.seed;
  }

 private:
  double lambda_eq_;
  double mu_j_;
  double window_;
  McOptions opts_;
  SampledScene frozen_;
};

double resolve_window(const McOptions& opts, double density) {
  if (opts.window_radius > 0.0) return opts.window_radius;
  return default_window_radius(density);
}

}  // namespace

namespace detail {

void order_field(const double* p, const double* r2, std::size_t k, int n_keep, Ordering ordering,
                 OrderedField& out) {
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(std::max(n_keep, 0)), k);
  auto& idx = out.index_scratch;
  idx.resize(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Ties (measure zero) fall back to the point index.
  if (ordering == Ordering::distance_only) {
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(),
                      [&](std::size_t a, std::size_t b) { return r2[a] < r2[b] || (r2[a] == r2[b] && a < b); });
  } else {
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(),
                      [&](std::size_t a, std::size_t b) { return p[a] > p[b] || (p[a] == p[b] && a < b); });
  }
  out.top.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.top[i] = p[idx[i]];
  auto& rest = out.rest_scratch;
  rest.resize(k - m);
  for (std::size_t i = m; i < k; ++i) rest[i - m] = p[idx[i]];
  out.residual.assign(m + 1, 0.0);
  out.residual[m] = kernels::sum(rest.data(), rest.size());
  for (std::size_t n = m; n-- > 0;) out.residual[n] = out.residual[n + 1] + out.top[n];
}

}  // namespace detail

Estimate make_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw DomainError("an estimate needs at least one trial");
  if (successes > trials) throw DomainError("successes exceed trials");
  Estimate e;
  e.successes = successes;
  e.trials = trials;
  e.seed = seed;
  e.mean = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_err = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  return e;
}

double z_score(const Estimate& e, double reference) {
  const double floor = e.trials > 0 ? 1.0 / static_cast<double>(e.trials) : 1.0;
  return (e.mean - reference) / std::max(e.std_err, floor);
}

double joint_z(const Estimate& a, const Estimate& b) {
  const double fa = a.trials > 0 ? 1.0 / static_cast<double>(a.trials) : 1.0;
  const double fb = b.trials > 0 ? 1.0 / static_cast<double>(b.trials) : 1.0;
  const double sa = std::max(a.std_err, fa);
  const double sb = std::max(b.std_err, fb);
  return (a.mean - b.mean) / std::sqrt(sa * sa + sb * sb);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

double default_window_radius(double density) {
  if (!std::isfinite(density) || !(density > 0.0)) throw DomainError("window density must be > 0");
  return 20.0 / std::sqrt(kPi * density);
}

const char* ordering_name(Ordering o) {
  return o == Ordering::distance_only ? "distance_only" : "power_with_fading";
}

const char* failure_stage_name(FailureStage s) {
  switch (s) {
    case FailureStage::none: return "none";
    case FailureStage::decode_initial: return "decode_initial";
    case FailureStage::cancel_stage: return "cancel_stage";
    case FailureStage::exhausted: return "exhausted";
  }
  return "unknown";
}

PointSet sample_ppp(double density, double radius, SplitMix64& rng) {
  if (!std::isfinite(density) || density < 0.0) throw DomainError("sample_ppp: density must be >= 0");
  if (!std::isfinite(radius) || !(radius > 0.0)) throw DomainError("sample_ppp: radius must be > 0");
  PointSet pts;
  const std::uint64_t count = poisson(rng, density * kPi * radius * radius);
  pts.x.resize(count);
  pts.y.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * kPi * rng.uniform();
    pts.x[i] = r * std::cos(theta);
    pts.y[i] = r * std::sin(theta);
  }
  return pts;
}

SampledScene sample_scene(double lambda_eq, double mu_j, double window_radius, SplitMix64& rng) {
  if (!(lambda_eq > 0.0) || !(mu_j > 0.0)) throw DomainError("sample_scene: densities must be > 0");
  if (!(window_radius > 0.0)) throw DomainError("sample_scene: window radius must be > 0");
  SampledScene s;
  s.window_radius = window_radius;
  s.serving_distance = std::sqrt(rng.exponential() / (kPi * lambda_eq));
  s.serving_fading = rng.exponential();
  fill_interferers(s, mu_j, 0.0, window_radius * window_radius, rng);
  return s;
}

std::vector<double> ordered_powers(const SampledScene& scene, double alpha, Ordering ordering) {
  std::vector<double> p(scene.size());
  kernels::path_gain(scene.r2.data(), scene.h.data(), p.data(), p.size(), alpha);
  detail::OrderedField f;
  detail::order_field(p.data(), scene.r2.data(), p.size(), static_cast<int>(p.size()), ordering, f);
  return f.top;
}

double trimmed_sum_oracle(const SampledScene& scene, double alpha, int n_trim, Ordering ordering) {
  if (n_trim < 0 || static_cast<std::size_t>(n_trim) > scene.size()) {
    throw DomainError("trimmed_sum_oracle: n_trim must lie in [0, interferer count]");
  }
  std::vector<double> p(scene.size());
  kernels::path_gain(scene.r2.data(), scene.h.data(), p.data(), p.size(), alpha);
  detail::OrderedField f;
  detail::order_field(p.data(), scene.r2.data(), p.size(), n_trim, ordering, f);
  return f.residual[static_cast<std::size_t>(n_trim)];
}

TrialOutcome run_sic_trial(const NetworkConfig& cfg, const SicConfig& sic, const SampledScene& scene,
                           Ordering ordering) {
  sic.validate();
  const double alpha = cfg.alpha;
  std::vector<double> p(scene.size());
  kernels::path_gain(scene.r2.data(), scene.h.data(), p.data(), p.size(), alpha);
  detail::OrderedField f;
  detail::order_field(p.data(), scene.r2.data(), p.size(), sic.n_max, ordering, f);
  const double signal = scene.serving_fading * std::pow(scene.serving_distance, -alpha);
  const auto r = detail::run_chain(signal, f, sic.eta_t, sic.n_max);

  TrialOutcome out;
  out.succeeded = r.succeeded;
  out.cancellations_used = r.used;
  out.failure_stage = r.stage;
  out.failure_index = r.index;
  // SoI SIR at every stage the chain reached.
  const int reached = r.stage == FailureStage::cancel_stage ? r.index - 1 : r.used;
  for (int n = 0; n <= reached; ++n) {
    const double i = f.residual[static_cast<std::size_t>(n)];
    out.soi_sir.push_back(i > 0.0 ? signal / i : INFINITY);
  }
  return out;
}

SicMcResult estimate_ps_sic_mc(const NetworkConfig& cfg, const std::vector<double>& etas, int n_max,
                               Ordering ordering, const McOptions& opts) {
  cfg.validate();
  check_etas(etas);
  check_trials(opts.trials);
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const auto eq = equivalent_density(cfg);
  const double alpha = cfg.alpha;
  const std::size_t caps = static_cast<std::size_t>(n_max) + 1;
  const SceneSource source(eq.lambda_eq, cfg.mu_j, resolve_window(opts, cfg.mu_j), opts);

  auto counts = detail::run_trials(
      opts.trials, opts.threads, etas.size() * caps,
      [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
        SampledScene scene;
        std::vector<double> p;
        detail::OrderedField f;
        for (std::uint64_t t = begin; t < end; ++t) {
          source.draw(t, scene);
          p.resize(scene.size());
          kernels::path_gain(scene.r2.data(), scene.h.data(), p.data(), p.size(), alpha);
          detail::order_field(p.data(), scene.r2.data(), p.size(), n_max, ordering, f);
          const double signal = scene.serving_fading * std::pow(scene.serving_distance, -alpha);
          for (std::size_t e = 0; e < etas.size(); ++e) {
            const auto r = detail::run_chain(signal, f, etas[e], n_max);
            if (!r.succeeded) continue;
            for (std::size_t c = static_cast<std::size_t>(r.used); c < caps; ++c) ++acc[e * caps + c];
          }
        }
      });

  SicMcResult out;
  out.etas = etas;
  for (std::size_t e = 0; e < etas.size(); ++e) {
    std::vector<Estimate> row;
    for (std::size_t c = 0; c < caps; ++c) row.push_back(make_estimate(counts[e * caps + c], opts.trials, opts.seed));
    out.by_eta_cap.push_back(std::move(row));
  }
  return out;
}

Estimate estimate_ps_sic_mc(const NetworkConfig& cfg, const SicConfig& sic, std::uint64_t trials,
                            std::uint64_t seed, Ordering ordering) {
  sic.validate();
  McOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  return estimate_ps_sic_mc(cfg, {sic.eta_t}, sic.n_max, ordering, opts).by_eta_cap[0].back();
}

CanMcResult estimate_ps_can_mc(double mu_j, double alpha, const std::vector<double>& etas, int n_max,
                               Ordering ordering, CanMode mode, const McOptions& opts) {
  check_etas(etas);
  check_trials(opts.trials);
  if (n_max < 1) throw DomainError("n must be >= 1");
  const std::size_t nn = static_cast<std::size_t>(n_max);
  // The serving link plays no part; any positive lambda_eq will do.
  const SceneSource source(mu_j, mu_j, resolve_window(opts, mu_j), opts);
  // Slots: successes [eta][n], then (chain mode) reached [eta][n].
  auto counts = detail::run_trials(
      opts.trials, opts.threads, 2 * etas.size() * nn,
      [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
        SampledScene scene;
        std::vector<double> p;
        detail::OrderedField f;
        const std::size_t reached_base = etas.size() * nn;
        for (std::uint64_t t = begin; t < end; ++t) {
          source.draw(t, scene);
          p.resize(scene.size());
          kernels::path_gain(scene.r2.data(), scene.h.data(), p.data(), p.size(), alpha);
          detail::order_field(p.data(), scene.r2.data(), p.size(), n_max, ordering, f);
          const std::size_t avail = f.top.size();
          for (std::size_t e = 0; e < etas.size(); ++e) {
            for (std::size_t n = 1; n <= nn; ++n) {
              if (mode == CanMode::chain_conditional) ++acc[reached_base + e * nn + n - 1];
              // A missing n-th interferer counts as a failed cancellation.
              const bool ok = n <= avail && f.top[n - 1] >= etas[e] * f.residual[n];
              if (ok) ++acc[e * nn + n - 1];
              if (!ok && mode == CanMode::chain_conditional) break;
            }
          }
        }
      });

  CanMcResult out;
  out.etas = etas;
  for (std::size_t e = 0; e < etas.size(); ++e) {
    std::vector<Estimate> row;
    for (std::size_t n = 0; n < nn; ++n) {
      const std::uint64_t denom =
          mode == CanMode::chain_conditional ? counts[etas.size() * nn + e * nn + n] : opts.trials;
      if (denom == 0) {
        // No scene reached this stage: the conditional probability is undefined.
        Estimate empty;
        empty.mean = empty.std_err = std::numeric_limits<double>::quiet_NaN();
        empty.seed = opts.seed;
        row.push_back(empty);
      } else {
        row.push_back(make_estimate(counts[e * nn + n], denom, opts.seed));
      }
    }
    out.by_eta_n.push_back(std::move(row));
  }
  return out;
}

Estimate estimate_ps_can_mc(const NetworkConfig& cfg, double eta, int n, std::uint64_t trials,
                            std::uint64_t seed, Ordering ordering, CanMode mode) {
  cfg.validate();
  McOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  return estimate_ps_can_mc(cfg.mu_j, cfg.alpha, {eta}, n, ordering, mode, opts).by_eta_n[0].back();
}

Estimate estimate_ps_ic_mc(double eta, int n, double lambda_eq, double mu_j, double alpha,
                           const McOptions& opts) {
  check_etas({eta});
  check_trials(opts.trials);
  if (n < 0) throw DomainError("n must be >= 0");
  if (!(lambda_eq > 0.0) || !(mu_j > 0.0)) throw DomainError("densities must be > 0");
  const double rn = cancellation_radius(mu_j, n);
  const double window = std::max(resolve_window(opts, mu_j), 2.0 * rn);
  auto counts = detail::run_trials(
      opts.trials, opts.threads, 1, [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
        SampledScene scene;
        std::vector<double> p;
        for (std::uint64_t t = begin; t < end; ++t) {
          SplitMix64 rng = trial_stream(opts.seed, t);
          const double u = std::sqrt(rng.exponential() / (kPi * lambda_eq));
          const double fading = rng.exponential();
          if (u < rn) continue;
          fill_interferers(scene, mu_j, rn * rn, window * window, rng);
          p.resize(scene.size());
          kernels::path_gain(scene.r2.data(), scene.h.data(), p.data(), p.size(), alpha);
          const double interference = kernels::sum(p.data(), p.size());
          if (fading * std::pow(u, -alpha) >= eta * interference) ++acc[0];
        }
      });
  return make_estimate(counts[0], opts.trials, opts.seed);
}

}  // namespace sicnet
