#include <algorithm>
#include <cmath>
#include <numbers>

#include "chain.hpp"
#include "parallel.hpp"
#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/kernels.hpp"
#include "sicnet/montecarlo.hpp"

namespace sicnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kLoadSlots = 257;  // last slot collects overflow
// A point farther than this many mean nearest-neighbour distances from every
// AP has probability exp(-36).
constexpr double kReach = 6.0;

void check_rates(const std::vector<double>& rhos) {
  if (rhos.empty()) throw DomainError("at least one rate is required");
  for (double r : rhos) {
    if (!std::isfinite(r) || !(r > 0.0)) throw DomainError("rates must be finite and > 0");
  }
}

void check_etas(const std::vector<double>& etas) {
  if (etas.empty()) throw DomainError("at least one threshold is required");
  for (double e : etas) {
    if (!std::isfinite(e) || !(e > 0.0)) throw DomainError("thresholds must be finite and > 0");
  }
}

std::size_t load_slot(std::uint64_t load) { return std::min<std::size_t>(load, kLoadSlots - 1); }

// Assigns every user to its nearest AP and returns per-AP loads.
void count_loads(const PointSet& aps, const PointSet& users, std::vector<std::uint64_t>& load) {
  load.assign(aps.size(), 0);
  if (aps.size() == 0) return;
  for (std::size_t u = 0; u < users.size(); ++u) {
    ++load[kernels::argmin_sqdist(aps.x.data(), aps.y.data(), aps.size(), users.x[u], users.y[u])];
  }
}

double sum_except(const std::vector<double>& p, std::size_t skip_a, std::size_t skip_b,
                  std::vector<double>& scratch) {
  scratch.clear();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != skip_a && i != skip_b) scratch.push_back(p[i]);
  }
  return kernels::sum(scratch.data(), scratch.size());
}

std::size_t rea_tier(const NetworkConfig& cfg) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < cfg.size(); ++i) {
    if (cfg.tiers[i].bias > cfg.tiers[k].bias) k = i;
  }
  if (!(cfg.tiers[k].bias > 1.0)) throw DomainError("range expansion needs a tier with bias > 1");
  return k;
}

// Nearest distance per tier for one user; returns true when the user sits in
// the range-expanded area of tier k. unbiased_winner receives the tier whose
// nearest AP is strongest without bias.
bool classify_user(const NetworkConfig& cfg, std::size_t k, SplitMix64& rng, std::vector<double>& x2,
                   std::size_t& unbiased_winner) {
  const double half = cfg.alpha / 2.0;
  x2.resize(cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i) x2[i] = rng.exponential() / (kPi * cfg.tiers[i].lambda);
  std::size_t bw = 0;
  std::size_t uw = 0;
  double bv = -1.0;
  double uv = -1.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const double plain = cfg.tiers[i].p_dl * std::pow(x2[i], -half);
    const double biased = cfg.tiers[i].bias * plain;
    if (biased > bv) {
      bv = biased;
      bw = i;
    }
    if (plain > uv) {
      uv = plain;
      uw = i;
    }
  }
  unbiased_winner = uw;
  return bw == k && uw != k;
}

constexpr std::uint64_t kModelStreamSalt = 0x6a09e667f3bcc909ULL;
constexpr int kMaxRejections = 1 << 24;

}  // namespace

MinLoadMcResult simulate_min_load(double lambda, double mu_j, double alpha, double r_con,
                                  const std::vector<double>& rhos, const McOptions& opts) {
  check_rates(rhos);
  if (!(lambda > 0.0) || !(mu_j > 0.0)) throw DomainError("densities must be > 0");
  if (!(r_con > 0.0)) throw DomainError("r_con must be > 0");
  if (opts.trials == 0) throw DomainError("trials must be > 0");
  const double a = 1.0 / std::sqrt(kPi * lambda);
  const double user_radius = r_con + kReach * a;
  const double ap_radius = std::max(opts.window_radius > 0.0 ? opts.window_radius : 20.0 * a,
                                    user_radius + kReach * a);
  const std::size_t nr = rhos.size();
  // Slots: min_load[nr], min_load_sic[nr], max_sir[nr], no_candidate, histogram.
  const std::size_t hist_base = 3 * nr + 1;

  auto counts = detail::run_trials(
      opts.trials, opts.threads, hist_base + kLoadSlots,
      [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
        std::vector<std::uint64_t> load;
        std::vector<double> r2, h, p, scratch;
        for (std::uint64_t t = begin; t < end; ++t) {
          SplitMix64 rng = trial_stream(opts.seed, t);
          const PointSet aps = sample_ppp(lambda, ap_radius, rng);
          const PointSet users = sample_ppp(mu_j, user_radius, rng);
          if (aps.size() < 2) continue;  // practically impossible; counted as failure
          count_loads(aps, users, load);

          r2.resize(aps.size());
          for (std::size_t i = 0; i < aps.size(); ++i) r2[i] = aps.x[i] * aps.x[i] + aps.y[i] * aps.y[i];
          const std::size_t nearest = static_cast<std::size_t>(std::min_element(r2.begin(), r2.end()) - r2.begin());

          std::size_t best = aps.size();
          for (std::size_t i = 0; i < aps.size(); ++i) {
            if (r2[i] > r_con * r_con) continue;
            if (best == aps.size() || load[i] < load[best] || (load[i] == load[best] && r2[i] < r2[best])) best = i;
          }
          if (best == aps.size()) {
            best = nearest;
            ++acc[3 * nr];
          }
          ++acc[hist_base + load_slot(load[best])];

          h.resize(aps.size());
          for (double& v : h) v = rng.exponential();
          p.resize(aps.size());
          kernels::path_gain(r2.data(), h.data(), p.data(), p.size(), alpha);

          const double s_min = p[best];
          const double i_min = sum_except(p, best, best, scratch);
          std::size_t strongest = best == 0 ? 1 : 0;
          for (std::size_t i = 0; i < p.size(); ++i) {
            if (i != best && p[i] > p[strongest]) strongest = i;
          }
          const double x1 = p[strongest];
          const double i_after = sum_except(p, best, strongest, scratch);
          const double s_near = p[nearest];
          const double i_near = sum_except(p, nearest, nearest, scratch);

          for (std::size_t r = 0; r < nr; ++r) {
            const double th_min = rate_threshold(rhos[r], static_cast<long>(load[best]));
            const bool direct = s_min >= th_min * i_min;
            if (direct) ++acc[r];
            if (direct || (x1 >= th_min * i_after && s_min >= th_min * i_after)) ++acc[nr + r];
            const double th_near = rate_threshold(rhos[r], static_cast<long>(load[nearest]));
            if (s_near >= th_near * i_near) ++acc[2 * nr + r];
          }
        }
      });

  MinLoadMcResult out;
  out.rhos = rhos;
  for (std::size_t r = 0; r < nr; ++r) {
    out.min_load.push_back(make_estimate(counts[r], opts.trials, opts.seed));
    out.min_load_sic.push_back(make_estimate(counts[nr + r], opts.trials, opts.seed));
    out.max_sir.push_back(make_estimate(counts[2 * nr + r], opts.trials, opts.seed));
  }
  out.no_candidate = make_estimate(counts[3 * nr], opts.trials, opts.seed);
  out.serving_load_histogram.assign(counts.begin() + static_cast<std::ptrdiff_t>(hist_base), counts.end());
  return out;
}

Estimate simulate_min_load(double lambda, double mu_j, double r_con, double rho, std::uint64_t trials,
                           std::uint64_t seed, double alpha) {
  McOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  return simulate_min_load(lambda, mu_j, alpha, r_con, {rho}, opts).min_load[0];
}

CellLoadSample sample_cell_loads(double lambda, double mu_j, const McOptions& opts) {
  if (!(lambda > 0.0) || !(mu_j > 0.0)) throw DomainError("densities must be > 0");
  if (opts.trials == 0) throw DomainError("trials must be > 0");
  const double a = 1.0 / std::sqrt(kPi * lambda);
  const double ap_radius = std::max(20.0 * a, 3.0 * kReach * a);

  auto counts = detail::run_trials(
      opts.trials, opts.threads, 2 * kLoadSlots, [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
        std::vector<std::uint64_t> load;
        for (std::uint64_t t = begin; t < end; ++t) {
          SplitMix64 rng = trial_stream(opts.seed, t);
          // Cell covering the origin.
          {
            const PointSet aps = sample_ppp(lambda, ap_radius, rng);
            if (aps.size() == 0) continue;
            const std::size_t tagged = kernels::argmin_sqdist(aps.x.data(), aps.y.data(), aps.size(), 0.0, 0.0);
            const double d0 = std::hypot(aps.x[tagged], aps.y[tagged]);
            const PointSet users = sample_ppp(mu_j, d0 + kReach * a, rng);
            count_loads(aps, users, load);
            ++acc[load_slot(load[tagged])];
          }
          // Cell of an AP placed at the origin.
          {
            PointSet aps = sample_ppp(lambda, ap_radius, rng);
            aps.x.push_back(0.0);
            aps.y.push_back(0.0);
            const PointSet users = sample_ppp(mu_j, kReach * a, rng);
            count_loads(aps, users, load);
            ++acc[kLoadSlots + load_slot(load.back())];
          }
        }
      });

  CellLoadSample out;
  out.tagged.assign(counts.begin(), counts.begin() + kLoadSlots);
  out.typical.assign(counts.begin() + kLoadSlots, counts.end());
  out.cells = opts.trials;
  return out;
}

MaxSirMcResult simulate_max_inst_sir(const NetworkConfig& cfg, const std::vector<double>& etas, int n_max,
                                     FieldModel field, const McOptions& opts) {
  cfg.validate();
  check_etas(etas);
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (opts.trials == 0) throw DomainError("trials must be > 0");
  const double alpha = cfg.alpha;
  const auto mu_i = tier_user_densities(cfg);
  double mu_total = 0.0;
  for (double m : mu_i) mu_total += m;
  std::vector<double> cand_radius;
  double max_cand = 0.0;
  for (const auto& t : cfg.tiers) {
    cand_radius.push_back(4.0 / std::sqrt(kPi * t.lambda));
    max_cand = std::max(max_cand, cand_radius.back());
  }
  const double field_radius = opts.window_radius > 0.0 ? opts.window_radius : default_window_radius(mu_total);
  const double user_radius = max_cand + field_radius;
  const std::size_t caps = static_cast<std::size_t>(n_max) + 1;
  const std::size_t ne = etas.size();

  auto counts = detail::run_trials(
      opts.trials, opts.threads, ne * caps, [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
        std::vector<double> ux, uy, uq, d2, h, p;
        std::vector<int> best_used(ne);
        detail::OrderedField f;
        for (std::uint64_t t = begin; t < end; ++t) {
          SplitMix64 rng = trial_stream(opts.seed, t);
          std::fill(best_used.begin(), best_used.end(), -1);
          if (field == FieldModel::shared) {
            ux.clear();
            uy.clear();
            uq.clear();
            for (std::size_t i = 0; i < cfg.size(); ++i) {
              const PointSet users = sample_ppp(mu_i[i], user_radius, rng);
              ux.insert(ux.end(), users.x.begin(), users.x.end());
              uy.insert(uy.end(), users.y.begin(), users.y.end());
              uq.insert(uq.end(), users.size(), cfg.tiers[i].q_ul);
            }
          }
          for (std::size_t k = 0; k < cfg.size(); ++k) {
            const PointSet aps = sample_ppp(cfg.tiers[k].lambda, cand_radius[k], rng);
            for (std::size_t j = 0; j < aps.size(); ++j) {
              const double r2 = aps.x[j] * aps.x[j] + aps.y[j] * aps.y[j];
              const double signal = cfg.tiers[k].q_ul * rng.exponential() * std::pow(r2, -alpha / 2.0);
              if (field == FieldModel::shared) {
                d2.resize(ux.size());
                kernels::sqdist(ux.data(), uy.data(), ux.size(), aps.x[j], aps.y[j], d2.data());
                h.resize(ux.size());
                for (std::size_t u = 0; u < ux.size(); ++u) h[u] = uq[u] * rng.exponential();
              } else {
                d2.clear();
                h.clear();
                const double w2 = field_radius * field_radius;
                for (std::size_t i = 0; i < cfg.size(); ++i) {
                  const std::uint64_t count = poisson(rng, mu_i[i] * kPi * w2);
                  for (std::uint64_t u = 0; u < count; ++u) {
                    d2.push_back(w2 * rng.uniform());
                    h.push_back(cfg.tiers[i].q_ul * rng.exponential());
                  }
                }
              }
              p.resize(d2.size());
              kernels::path_gain(d2.data(), h.data(), p.data(), p.size(), alpha);
              detail::order_field(p.data(), d2.data(), p.size(), n_max, Ordering::power_with_fading, f);
              for (std::size_t e = 0; e < ne; ++e) {
                if (best_used[e] == 0) continue;
                const auto r = detail::run_chain(signal, f, etas[e], n_max);
                if (r.succeeded && (best_used[e] < 0 || r.used < best_used[e])) best_used[e] = r.used;
              }
            }
          }
          for (std::size_t e = 0; e < ne; ++e) {
            if (best_used[e] < 0) continue;
            for (std::size_t c = static_cast<std::size_t>(best_used[e]); c < caps; ++c) ++acc[e * caps + c];
          }
        }
      });

  MaxSirMcResult out;
  out.etas = etas;
  for (std::size_t e = 0; e < ne; ++e) {
    std::vector<Estimate> row;
    for (std::size_t c = 0; c < caps; ++c) row.push_back(make_estimate(counts[e * caps + c], opts.trials, opts.seed));
    out.by_eta_cap.push_back(std::move(row));
  }
  return out;
}

Estimate simulate_max_inst_sir(const NetworkConfig& cfg, const SicConfig& sic, std::uint64_t trials,
                               std::uint64_t seed) {
  sic.validate();
  McOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  return simulate_max_inst_sir(cfg, {sic.eta_t}, sic.n_max, FieldModel::shared, opts).by_eta_cap[0].back();
}

ReaMcResult simulate_rea(const NetworkConfig& cfg, std::size_t k, const std::vector<double>& etas,
                         const McOptions& opts) {
  cfg.validate();
  check_etas(etas);
  if (k >= cfg.size()) throw DomainError("tier index out of range");
  if (!(rea_association_prob(cfg, k) > 0.0)) {
    throw DomainError("range-expanded area of this tier is empty; no users can be sampled");
  }
  if (opts.trials == 0) throw DomainError("trials must be > 0");
  const double half = cfg.alpha / 2.0;
  const double beta = 2.0 / cfg.alpha;
  const std::size_t ne = etas.size();
  const auto& tk = cfg.tiers[k];
  std::vector<double> window2;
  for (const auto& t : cfg.tiers) window2.push_back(400.0 / (kPi * t.lambda));

  double biased_sum = 0.0;
  double plain_sum = 0.0;
  for (const auto& t : cfg.tiers) {
    biased_sum += t.lambda * std::pow(t.p_dl * t.bias / (tk.p_dl * tk.bias), beta);
    plain_sum += t.lambda * std::pow(t.p_dl / tk.p_dl, beta);
  }

  // Slots: uncancelled[ne], cancelled[ne], model_unc[ne], model_can[ne], attempts.
  auto counts = detail::run_trials(
      opts.trials, opts.threads, 4 * ne + 1, [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
        std::vector<double> x2;
        for (std::uint64_t t = begin; t < end; ++t) {
          // Geometric sampler: nearest AP of each tier, PPP beyond it.
          {
            SplitMix64 rng = trial_stream(opts.seed, t);
            std::size_t uw = 0;
            int attempts = 1;
            while (!classify_user(cfg, k, rng, x2, uw)) {
              if (++attempts > kMaxRejections) throw NumericError("simulate_rea: REA too small to sample");
            }
            acc[4 * ne] += static_cast<std::uint64_t>(attempts);
            const double signal = tk.p_dl * rng.exponential() * std::pow(x2[k], -half);
            double all = 0.0;
            double removed = 0.0;
            for (std::size_t i = 0; i < cfg.size(); ++i) {
              const double pi = cfg.tiers[i].p_dl;
              if (i != k) {
                const double nearest = pi * rng.exponential() * std::pow(x2[i], -half);
                all += nearest;
                if (i == uw) removed = nearest;
              }
              const double outer2 = std::max(window2[i], 4.0 * x2[i]);
              const std::uint64_t count = poisson(rng, cfg.tiers[i].lambda * kPi * (outer2 - x2[i]));
              for (std::uint64_t j = 0; j < count; ++j) {
                const double d2 = x2[i] + rng.uniform() * (outer2 - x2[i]);
                all += pi * rng.exponential() * std::pow(d2, -half);
              }
            }
            const double after = all - removed;
            for (std::size_t e = 0; e < ne; ++e) {
              if (signal >= etas[e] * all) ++acc[e];
              if (signal >= etas[e] * after) ++acc[ne + e];
            }
          }
          // Exclusion model: serving distance from the REA law, every tier a PPP
          // outside its exclusion radius.
          {
            SplitMix64 rng = trial_stream(opts.seed ^ kModelStreamSalt, t);
            const double xk2 = rng.exponential() / (kPi * biased_sum) + rng.exponential() / (kPi * plain_sum);
            const double signal = tk.p_dl * rng.exponential() * std::pow(xk2, -half);
            double unc = 0.0;
            double can = 0.0;
            for (std::size_t i = 0; i < cfg.size(); ++i) {
              const auto& ti = cfg.tiers[i];
              const double rho_unc = std::pow(ti.p_dl * ti.bias / (tk.p_dl * tk.bias), beta) * xk2;
              const double rho_can = std::pow(ti.p_dl / tk.p_dl, beta) * xk2;
              const double inner = std::min(rho_unc, rho_can);
              const double outer2 = std::max(window2[i], 4.0 * std::max(rho_unc, rho_can));
              const std::uint64_t count = poisson(rng, ti.lambda * kPi * (outer2 - inner));
              for (std::uint64_t j = 0; j < count; ++j) {
                const double d2 = inner + rng.uniform() * (outer2 - inner);
                const double pw = ti.p_dl * rng.exponential() * std::pow(d2, -half);
                if (d2 >= rho_unc) unc += pw;
                if (d2 >= rho_can) can += pw;
              }
            }
            for (std::size_t e = 0; e < ne; ++e) {
              if (signal >= etas[e] * unc) ++acc[2 * ne + e];
              if (signal >= etas[e] * can) ++acc[3 * ne + e];
            }
          }
        }
      });

  ReaMcResult out;
  out.etas = etas;
  for (std::size_t e = 0; e < ne; ++e) {
    out.uncancelled.push_back(make_estimate(counts[e], opts.trials, opts.seed));
    out.cancelled.push_back(make_estimate(counts[ne + e], opts.trials, opts.seed));
    out.model_uncancelled.push_back(make_estimate(counts[2 * ne + e], opts.trials, opts.seed));
    out.model_cancelled.push_back(make_estimate(counts[3 * ne + e], opts.trials, opts.seed));
  }
  out.rea_fraction = make_estimate(opts.trials, counts[4 * ne], opts.seed);

  // Serving distances replayed serially from the same streams.
  const std::uint64_t keep = std::min<std::uint64_t>(opts.trials, 100000);
  std::vector<double> x2;
  for (std::uint64_t t = 0; t < keep; ++t) {
    SplitMix64 rng = trial_stream(opts.seed, t);
    std::size_t uw = 0;
    while (!classify_user(cfg, k, rng, x2, uw)) {
    }
    out.serving_distances.push_back(std::sqrt(x2[k]));
  }
  return out;
}

Estimate simulate_rea(const NetworkConfig& cfg, double eta, bool cancelled, std::uint64_t trials,
                      std::uint64_t seed) {
  McOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  const auto r = simulate_rea(cfg, rea_tier(cfg), {eta}, opts);
  return cancelled ? r.cancelled[0] : r.uncancelled[0];
}

Estimate rea_fraction_mc(const NetworkConfig& cfg, std::size_t k, std::uint64_t users, std::uint64_t seed) {
  cfg.validate();
  if (k >= cfg.size()) throw DomainError("tier index out of range");
  if (users == 0) throw DomainError("users must be > 0");
  auto counts = detail::run_trials(users, 0, 1, [&](std::uint64_t begin, std::uint64_t end, detail::Counts& acc) {
    std::vector<double> x2;
    std::size_t uw = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng = trial_stream(seed, t);
      if (classify_user(cfg, k, rng, x2, uw)) ++acc[0];
    }
  });
  return make_estimate(counts[0], users, seed);
}

}  // namespace sicnet
