#include "sicnet/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "sicnet/analytic.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/experiments.hpp"
#include "sicnet/model.hpp"
#include "sicnet/montecarlo.hpp"
#include "sicnet/numerics.hpp"

namespace sicnet {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

/// Collects checks for one criterion; `at_most` style comparisons throughout.
class Report {
 public:
  Report(int id, std::string title) : t0_(Clock::now()) {
    r_.id = id;
    r_.title = std::move(title);
  }

  void at_most(const std::string& name, double measured, double limit, bool gating = true) {
    r_.checks.push_back({name, measured, limit, std::isfinite(measured) && measured <= limit, gating});
  }
  void at_least(const std::string& name, double measured, double limit, bool gating = true) {
    r_.checks.push_back({name, measured, limit, std::isfinite(measured) && measured >= limit, gating});
  }
  void info(const std::string& name, double measured, double limit) {
    at_most(name, measured, limit, false);
  }

  /// |mc - reference| <= k max(stderr, 1/trials) + tol
  void agrees(const std::string& name, const Estimate& e, double reference, double tol, bool gating = true) {
    if (e.trials == 0) {
      at_most(name + " (no trials reached this stage)", std::numeric_limits<double>::quiet_NaN(), tol, gating);
      return;
    }
    const double se = std::max(e.std_err, 1.0 / static_cast<double>(e.trials));
    at_most(name, std::abs(e.mean - reference), 3.0 * se + tol, gating);
  }

  CriterionReport finish(double budget_ms = 0.0) {
    r_.runtime_ms = ms_since(t0_);
    if (budget_ms > 0.0) at_most("runtime_ms", r_.runtime_ms, budget_ms);
    return std::move(r_);
  }

 private:
  CriterionReport r_;
  Clock::time_point t0_;
};

McOptions options(const ValidationBudget& b, std::uint64_t salt = 0) {
  McOptions o;
  o.trials = b.trials;
  o.seed = b.seed + salt;
  o.threads = b.threads;
  return o;
}

std::vector<double> db_grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) out.push_back(lo + i * step);
  return out;
}

std::vector<double> linear(const std::vector<double>& db) {
  std::vector<double> out;
  for (double d : db) out.push_back(db_to_linear(d));
  return out;
}

std::string tag_eta(double db) { return fmt("eta=%+gdB", db); }

NetworkConfig two_tier(double p1, double q1, double bias2) {
  NetworkConfig cfg;
  cfg.tiers = {{1e-5, p1, q1, 1.0}, {1e-4, 1.0, 1.0, bias2}};
  cfg.alpha = 4.0;
  cfg.mu = 1e-4;
  cfg.mu_j = 1e-4;
  return cfg;
}

double total_variation(const std::vector<std::uint64_t>& hist, const LoadDistribution& law) {
  double total = 0.0;
  for (auto c : hist) total += static_cast<double>(c);
  if (!(total > 0.0)) return 1.0;
  // The last histogram slot collects everything at or above its index.
  const std::size_t last = hist.size() - 1;
  double tv = 0.0;
  for (std::size_t m = 0; m < last; ++m) tv += std::abs(hist[m] / total - law.pmf(static_cast<long>(m)));
  tv += std::abs(hist[last] / total - (1.0 - law.cdf(static_cast<long>(last) - 1)));
  return 0.5 * tv;
}

SweepResult without_runtime(SweepResult r) {
  const std::size_t c = r.column_index("runtime_ms");
  r.columns.erase(r.columns.begin() + static_cast<std::ptrdiff_t>(c));
  for (auto& row : r.rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(c));
  return r;
}

}  // namespace

bool CriterionReport::passed() const { return gating_failures() == 0; }

std::size_t CriterionReport::gating_count() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.gating; }));
}

std::size_t CriterionReport::gating_failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.gating && !c.passed; }));
}

CriterionReport check_numerics(const ValidationBudget&) {
  Report rep(1, "C(b,alpha): closed form vs quadrature, C(b,4) vs arctan(1/b)");
  const double bs[] = {0.0, 0.01, 0.1, 1.0, 10.0, 100.0};
  const double alphas[] = {2.5, 3.0, 3.5, 4.0, 5.0, 6.0};
  double worst = 0.0;
  for (double b : bs) {
    for (double a : alphas) {
      const double closed = c_integral(b, a);
      const double quad = c_integral_by_quadrature(b, a);
      const double rel = std::abs(closed - quad) / std::abs(quad);
      worst = std::max(worst, rel);
      rep.info(fmt("closed vs quadrature b=%g alpha=%g", b, a), rel, 1e-9);
    }
  }
  rep.at_most("worst relative gap, closed form vs quadrature", worst, 1e-9);
  double worst_atan = 0.0;
  for (double b : bs) worst_atan = std::max(worst_atan, std::abs(c_integral(b, 4.0) - std::atan2(1.0, b)));
  rep.at_most("worst |C(b,4) - arctan(1/b)|", worst_atan, 1e-10);
  return rep.finish(1000.0);
}

CriterionReport check_cancellation(const ValidationBudget& b) {
  Report rep(2, "P(cancel n-th): MC vs closed forms, PGFL vs TSD (mu_j=1e-4, alpha=4)");
  const std::vector<double> db = {0.0, 5.0, 10.0};
  const auto etas = linear(db);
  const int n_max = 8;
  const double mu_j = 1e-4, alpha = 4.0;
  const auto o = options(b);
  const auto dist = estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::distance_only, CanMode::unconditional, o);
  const auto fade =
      estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::power_with_fading, CanMode::unconditional, o);
  const auto dist_c =
      estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::distance_only, CanMode::chain_conditional, o);
  const auto fade_c =
      estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::power_with_fading, CanMode::chain_conditional, o);

  for (std::size_t ie = 0; ie < etas.size(); ++ie) {
    for (int n = 1; n <= n_max; ++n) {
      const double pgfl = ps_can(etas[ie], n, alpha);
      const std::string at = tag_eta(db[ie]) + " n=" + std::to_string(n);
      rep.agrees("distance-ordered MC vs closed form " + at, dist.by_eta_n[ie][n - 1], pgfl, 0.0);
      rep.agrees("fading-ordered MC vs closed form " + at, fade.by_eta_n[ie][n - 1], pgfl,
                 fading_order_tolerance(db[ie]));
      rep.agrees("chain-conditional distance MC vs closed form " + at, dist_c.by_eta_n[ie][n - 1], pgfl, 0.0,
                 false);
      rep.agrees("chain-conditional fading MC vs closed form " + at, fade_c.by_eta_n[ie][n - 1], pgfl,
                 fading_order_tolerance(db[ie]), false);
      const double tsd = ps_can_tsd(etas[ie], n);
      if (n == 1) rep.at_most("|PGFL - TSD| " + at, std::abs(pgfl - tsd), 0.01);
      if (n <= 5) rep.at_most("|PGFL - TSD| / PGFL " + at, std::abs(pgfl - tsd) / pgfl, 0.10);
    }
  }
  return rep.finish(120000.0);
}

CriterionReport check_sic_chain(const ValidationBudget& b) {
  Report rep(3, "SIC chain success vs cancellations cap N=0..5 (lambda_eq=mu_j=1e-4)");
  const auto db = db_grid(-10.0, 10.0, 2.0);
  const auto etas = linear(db);
  const int n_max = 5;
  const NetworkConfig cfg = NetworkConfig::single_tier(1e-4, 1e-4);
  const auto dist = estimate_ps_sic_mc(cfg, etas, n_max, Ordering::distance_only, options(b));
  const auto fade = estimate_ps_sic_mc(cfg, etas, n_max, Ordering::power_with_fading, options(b));

  for (std::size_t ie = 0; ie < etas.size(); ++ie) {
    const auto ps = ps_sic(etas[ie], n_max, 1e-4, 1e-4, 4.0).cumulative();
    const std::string at = tag_eta(db[ie]);
    for (int n = 0; n <= n_max; ++n) {
      rep.agrees("analytic vs chain MC " + at + " N=" + std::to_string(n), dist.by_eta_cap[ie][n], ps[n], 0.02);
      rep.agrees("analytic vs fading-ordered chain MC " + at + " N=" + std::to_string(n), fade.by_eta_cap[ie][n],
                 ps[n], 0.02, false);
    }
    double worst_drop = 0.0, worst_mc_drop = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      worst_drop = std::max(worst_drop, ps[n - 1] - ps[n]);
      worst_mc_drop = std::max(worst_mc_drop, dist.by_eta_cap[ie][n - 1].mean - dist.by_eta_cap[ie][n].mean);
    }
    rep.at_most("analytic decrease in N " + at, worst_drop, 0.0);
    rep.at_most("MC decrease in N " + at, worst_mc_drop, 0.0);
    if (db[ie] >= 0.0) {
      const double d01 = ps[1] - ps[0], d12 = ps[2] - ps[1];
      rep.at_most("analytic increment 1->2 minus 0->1 " + at, d12 - d01, -1e-15);
      rep.info("MC increment 1->2 minus 0->1 " + at,
               (dist.by_eta_cap[ie][2].mean - dist.by_eta_cap[ie][1].mean) -
                   (dist.by_eta_cap[ie][1].mean - dist.by_eta_cap[ie][0].mean),
               0.0);
    }
    if (db[ie] >= 2.0) {
      double inc = 0.0, mc_inc = 0.0;
      for (int n = 1; n <= n_max; ++n) {
        inc = std::max(inc, ps[n] - ps[n - 1]);
        mc_inc = std::max(mc_inc, dist.by_eta_cap[ie][n].mean - dist.by_eta_cap[ie][n - 1].mean);
      }
      rep.at_most("largest analytic increment " + at, inc, 0.02 - 1e-15);
      rep.info("largest MC increment " + at, mc_inc, 0.02);
    }
  }
  return rep.finish(600000.0);
}

CriterionReport check_load_law(const ValidationBudget& b) {
  Report rep(4, "cell load law: mass, mean, Voronoi histogram (mu_j/lambda = 5)");
  const double lambda = 1e-5, mu_j = 5e-5;
  const LoadDistribution law(mu_j, lambda);
  rep.at_most("|sum f_M - 1|", std::abs(law.total_mass() - 1.0), 1e-9);
  rep.at_most("|sum m f_M - mu_j/lambda|", std::abs(law.mean() - mu_j / lambda), 1e-6);

  const auto cells = sample_cell_loads(lambda, mu_j, options(b));
  rep.at_most("total variation, cell covering a user vs f_M", total_variation(cells.tagged, law), 0.02);
  rep.info("total variation, typical cell vs f_M", total_variation(cells.typical, law), 0.02);
  double mean_tagged = 0.0, mean_typical = 0.0, nt = 0.0, ny = 0.0;
  for (std::size_t m = 0; m < cells.tagged.size(); ++m) {
    mean_tagged += m * static_cast<double>(cells.tagged[m]);
    nt += static_cast<double>(cells.tagged[m]);
    mean_typical += m * static_cast<double>(cells.typical[m]);
    ny += static_cast<double>(cells.typical[m]);
  }
  rep.info("empirical mean load, cell covering a user, minus sum m f_M", mean_tagged / nt - law.mean(), 0.0);
  rep.info("empirical mean load, typical cell, minus mu_j/lambda", mean_typical / ny - mu_j / lambda, 0.0);
  return rep.finish();
}

CriterionReport check_min_load(const ValidationBudget& b) {
  Report rep(5, "rate coverage: min-load vs max-SIR (lambda=1e-5, mu_j=5e-5, r_con=260 m)");
  const double lambda = 1e-5, mu_j = 5e-5, alpha = 4.0, r_con = 260.0;
  std::vector<double> rhos;
  for (int i = 0; i < 10; ++i) rhos.push_back(0.05 + 0.05 * i);
  const auto mc = simulate_min_load(lambda, mu_j, alpha, r_con, rhos, options(b));

  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const std::string at = fmt("rho=%.2f", rhos[i]);
    const double maxsir = rate_coverage_max_sir(rhos[i], lambda, mu_j, alpha);
    const double minl = rate_coverage_min_load(rhos[i], lambda, mu_j, alpha, r_con, 0);
    const double minl_sic = rate_coverage_min_load(rhos[i], lambda, mu_j, alpha, r_con, 1);
    rep.at_most("analytic min-load minus max-SIR " + at, minl - maxsir, -1e-15);
    rep.agrees("analytic vs MC min-load " + at, mc.min_load[i], minl, 0.03);
    rep.agrees("analytic vs MC min-load, 1 cancellation " + at, mc.min_load_sic[i], minl_sic, 0.03, false);
    rep.agrees("analytic vs MC max-SIR " + at, mc.max_sir[i], maxsir, 0.0, false);
    rep.info("MC min-load minus MC max-SIR " + at, mc.min_load[i].mean - mc.max_sir[i].mean, 0.0);
    if (i == rhos.size() / 2 - 1)
      rep.at_least("analytic SIC gain at median rho " + at, minl_sic - minl, 0.05);
  }
  rep.info("fraction of users with no AP inside r_con", mc.no_candidate.mean, 1.0);
  return rep.finish(300000.0);
}

CriterionReport check_max_inst_sir(const ValidationBudget& b) {
  Report rep(6, "max-instantaneous-SIR association with SIC, two tiers (P1/P2=Q1/Q2=10)");
  const NetworkConfig cfg = two_tier(10.0, 10.0, 1.0);
  const auto db = db_grid(0.0, 10.0, 1.0);
  const auto etas = linear(db);
  const int n_max = 3;
  const auto shared = simulate_max_inst_sir(cfg, etas, n_max, FieldModel::shared, options(b));
  McOptions io = options(b);
  io.trials = std::max<std::uint64_t>(1000, b.trials / 5);
  const auto indep = simulate_max_inst_sir(cfg, etas, n_max, FieldModel::independent, io);

  double peak = 0.0;
  for (std::size_t ie = 0; ie < etas.size(); ++ie) {
    const std::string at = tag_eta(db[ie]);
    const double out = outage_max_inst_sir(etas[ie], cfg);
    rep.agrees("outage vs MC (shared user field) " + at, shared.by_eta_cap[ie][0], 1.0 - out, 0.0);
    rep.agrees("outage vs MC (independent field per AP) " + at, indep.by_eta_cap[ie][0], 1.0 - out, 0.0, false);
    double prev = 1.0 - out;
    for (int n = 1; n <= n_max; ++n) {
      const double ps = ps_sic_max_inst_sir(etas[ie], n, cfg);
      const std::string atn = at + " N=" + std::to_string(n);
      rep.at_least("analytic uplift over N=0 " + atn, ps - (1.0 - out), 1e-12);
      rep.at_least("analytic gain from N-1 to N " + atn, ps - prev, 0.0);
      rep.info("MC uplift over N=0 minus analytic uplift " + atn,
               (shared.by_eta_cap[ie][n].mean - shared.by_eta_cap[ie][0].mean) - (ps - (1.0 - out)), 0.0);
      peak = std::max(peak, ps - (1.0 - out));
      prev = ps;
    }
  }
  rep.at_least("peak analytic uplift, lower bound", peak, 0.05);
  rep.at_most("peak analytic uplift, upper bound", peak, 0.25);
  return rep.finish(600000.0);
}

CriterionReport check_range_expansion(const ValidationBudget& b) {
  Report rep(7, "range-expanded users, with and without cancelling the strongest AP (P1/P2=10)");
  const auto db = db_grid(-10.0, 10.0, 2.0);
  const auto etas = linear(db);
  const double biases[] = {2.0, 5.0, 10.0};
  std::vector<std::vector<double>> unc(3), can(3);
  std::vector<ReaMcResult> mc;
  for (int ib = 0; ib < 3; ++ib) {
    const NetworkConfig cfg = two_tier(10.0, 1.0, biases[ib]);
    mc.push_back(simulate_rea(cfg, 1, etas, options(b)));
    for (double e : etas) {
      unc[ib].push_back(ps_ic_rea(e, cfg, 1, false));
      can[ib].push_back(ps_ic_rea(e, cfg, 1, true));
    }
    const std::string bt = fmt("b=%g", biases[ib]);
    rep.agrees("REA fraction MC vs closed form " + bt, mc.back().rea_fraction, rea_association_prob(cfg, 1), 0.0,
               false);
    for (std::size_t ie = 0; ie < etas.size(); ++ie) {
      const std::string at = bt + " " + tag_eta(db[ie]);
      rep.agrees("uncancelled closed form vs MC " + at, mc.back().uncancelled[ie], unc[ib][ie], 0.0);
      rep.agrees("cancelled closed form vs MC " + at, mc.back().cancelled[ie], can[ib][ie], 0.0);
      rep.agrees("uncancelled closed form vs exclusion-model MC " + at, mc.back().model_uncancelled[ie],
                 unc[ib][ie], 0.0, false);
      rep.agrees("cancelled closed form vs exclusion-model MC " + at, mc.back().model_cancelled[ie], can[ib][ie],
                 0.0, false);
      rep.at_least("analytic cancelled minus uncancelled " + at, can[ib][ie] - unc[ib][ie], 1e-15);
      rep.info("MC uncancelled minus cancelled " + at, mc.back().uncancelled[ie].mean - mc.back().cancelled[ie].mean,
               0.0);
    }
  }
  for (std::size_t ie = 0; ie < etas.size(); ++ie) {
    const std::string at = tag_eta(db[ie]);
    for (int ib = 1; ib < 3; ++ib) {
      const std::string pair = fmt("b=%g vs b=%g ", biases[ib], biases[ib - 1]) + at;
      rep.at_most("analytic uncancelled increase " + pair, unc[ib][ie] - unc[ib - 1][ie], -1e-15);
      rep.at_most("analytic cancelled increase " + pair, can[ib][ie] - can[ib - 1][ie], -1e-15);
      rep.info("MC uncancelled increase " + pair, mc[ib].uncancelled[ie].mean - mc[ib - 1].uncancelled[ie].mean, 0.0);
      rep.info("MC cancelled increase " + pair, mc[ib].cancelled[ie].mean - mc[ib - 1].cancelled[ie].mean, 0.0);
    }
  }
  return rep.finish(600000.0);
}

CriterionReport check_scale_invariance(const ValidationBudget& b) {
  Report rep(8, "P(cancel n-th) does not depend on the interferer density (eta=5 dB)");
  const std::vector<double> etas = {db_to_linear(5.0)};
  for (Ordering ord : {Ordering::distance_only, Ordering::power_with_fading}) {
    const auto lo = estimate_ps_can_mc(1e-4, 4.0, etas, 3, ord, CanMode::unconditional, options(b, 0));
    const auto hi = estimate_ps_can_mc(1e-3, 4.0, etas, 3, ord, CanMode::unconditional, options(b, 7919));
    for (int n = 1; n <= 3; ++n)
      rep.at_most(std::string("|joint z| mu_j=1e-4 vs 1e-3, ") + ordering_name(ord) + " n=" + std::to_string(n),
                  std::abs(joint_z(lo.by_eta_n[0][n - 1], hi.by_eta_n[0][n - 1])), 3.0);
  }
  return rep.finish();
}

CriterionReport check_determinism(const ValidationBudget& b) {
  Report rep(9, "presets reproduce their CSV data for thread counts 1 and 4");
  for (Preset p : {Preset::fig2, Preset::fig3, Preset::fig4, Preset::fig5, Preset::fig6}) {
    SweepSpec spec = default_spec(p);
    spec.trials = std::max<std::uint64_t>(1000, b.trials / 50);
    spec.seed = b.seed;
    spec.threads = 1;
    const std::string one = format_csv(without_runtime(run_preset(spec)));
    spec.threads = 4;
    const std::string four = format_csv(without_runtime(run_preset(spec)));
    const std::string again = format_csv(without_runtime(run_preset(spec)));
    rep.at_most(std::string(preset_name(p)) + ": CSV differs between 1 and 4 threads", one == four ? 0.0 : 1.0, 0.0);
    rep.at_most(std::string(preset_name(p)) + ": CSV differs between repeated runs", four == again ? 0.0 : 1.0, 0.0);
  }
  return rep.finish();
}

CriterionReport check_kurtosis(const ValidationBudget&) {
  Report rep(10, "excess kurtosis of the residual interference after n cancellations");
  rep.at_most("|gamma2(4,2) - 54/7|", std::abs(kurtosis_after_cancellation(4.0, 2) - 54.0 / 7.0), 1e-12);
  for (double a : {2.5, 3.0, 4.0, 5.0, 6.0}) {
    const double base = kurtosis_after_cancellation(a, 2);
    double worst = 0.0, worst_radius = 0.0;
    for (int n = 2; n <= 50; ++n) {
      const double g = kurtosis_after_cancellation(a, n);
      worst = std::max(worst, std::abs(g * (n - 1) - base) / base);
      // Same quantity from the cumulants at the radius holding n - 1 points on average.
      const double r = cancellation_radius(1e-4, n - 1);
      worst_radius = std::max(worst_radius, std::abs(kurtosis_given_radius(a, 1e-4, r) - g) / g);
    }
    rep.at_most(fmt("worst relative spread of gamma2 (n-1), alpha=%g", a), worst, 1e-12);
    rep.at_most(fmt("worst relative gap, cumulant ratio vs closed form, alpha=%g", a), worst_radius, 1e-12);
  }
  return rep.finish();
}

CriterionReport run_criterion(int id, const ValidationBudget& b) {
  switch (id) {
    case 1: return check_numerics(b);
    case 2: return check_cancellation(b);
    case 3: return check_sic_chain(b);
    case 4: return check_load_law(b);
    case 5: return check_min_load(b);
    case 6: return check_max_inst_sir(b);
    case 7: return check_range_expansion(b);
    case 8: return check_scale_invariance(b);
    case 9: return check_determinism(b);
    case 10: return check_kurtosis(b);
    default: throw ConfigError("criterion id must be in 1..10");
  }
}

std::vector<std::string> validation_suites() { return {"numerics", "can", "sic", "minload", "maxsir", "rea", "all"}; }

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "numerics") return {1, 10};
  if (suite == "can") return {2, 8};
  if (suite == "sic") return {3};
  if (suite == "minload") return {4, 5};
  if (suite == "maxsir") return {6};
  if (suite == "rea") return {7};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw ConfigError("unknown suite '" + suite + "' (expected numerics, can, sic, minload, maxsir, rea or all)");
}

void print_report(std::ostream& os, const CriterionReport& r, bool verbose) {
  char head[128];
  std::snprintf(head, sizeof head, "CRITERION %2d %s  ", r.id, r.passed() ? "PASS" : "FAIL");
  os << head << r.title;
  char tail[128];
  std::snprintf(tail, sizeof tail, "  (%zu/%zu checks passed, %.1f s)", r.gating_count() - r.gating_failures(),
                r.gating_count(), r.runtime_ms / 1000.0);
  os << tail << '\n';
  for (const auto& c : r.checks) {
    if (!verbose && (c.passed || !c.gating)) continue;
    const char* tag = c.gating ? (c.passed ? "pass" : "FAIL") : "info";
    char line[64];
    std::snprintf(line, sizeof line, "    [%s] ", tag);
    os << line << c.name;
    std::snprintf(line, sizeof line, ": measured %.6g, limit %.6g", c.measured, c.limit);
    os << line << '\n';
  }
}

}  // namespace sicnet
