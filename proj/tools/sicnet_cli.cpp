// sicnet: evaluate formulas, run figure sweeps, validate closed forms against
// simulation, and inspect network configurations.
//
// Exit codes: 0 success, 1 runtime or I/O failure (including failed
// validation checks), 2 usage or validation error in the inputs.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sicnet/analytic.hpp"
#include "sicnet/config.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/experiments.hpp"
#include "sicnet/kernels.hpp"
#include "sicnet/model.hpp"
#include "sicnet/montecarlo.hpp"
#include "sicnet/numerics.hpp"
#include "sicnet/validation.hpp"

using namespace sicnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct EvalArgs {
  std::string formula;
  std::optional<double> eta_db, eta;
  int n = 0;
  int n_max = 0;
  int m = 0;
  double alpha = 4.0;
  double lambda = 1e-4;
  double mu_j = 1e-4;
  double b = 0.0;
  double rho = 0.1;
  double r_con = 260.0;
  double r = 0.0;
  int tier = -1;
  bool cancelled = false;
  bool renormalize = false;
  std::string config;
  bool alpha_set = false, mu_j_set = false;
};

double threshold(const EvalArgs& a) {
  if (a.eta_db) return db_to_linear(*a.eta_db);
  if (a.eta) return *a.eta;
  throw ConfigError("this formula needs --eta-db or --eta");
}

std::string threshold_echo(const EvalArgs& a) {
  char buf[96];
  const double e = threshold(a);
  std::snprintf(buf, sizeof buf, "eta=%.9g (%.6g dB)", e, linear_to_db(e));
  return buf;
}

NetworkConfig network_for(const EvalArgs& a) {
  if (a.config.empty()) throw ConfigError("this formula needs a multi-tier network: pass --config FILE");
  NetworkConfig cfg = load_network_config(a.config);
  if (a.alpha_set) cfg.alpha = a.alpha;
  if (a.mu_j_set) cfg.mu_j = a.mu_j;
  cfg.validate();
  return cfg;
}

std::size_t tier_index(const EvalArgs& a, const NetworkConfig& cfg) {
  if (a.tier >= 0) {
    if (static_cast<std::size_t>(a.tier) >= cfg.size()) throw ConfigError("--tier is out of range");
    return static_cast<std::size_t>(a.tier);
  }
  // Default: the tier with the largest bias above 1.
  std::size_t best = cfg.size();
  for (std::size_t k = 0; k < cfg.size(); ++k)
    if (cfg.tiers[k].bias > 1.0 && (best == cfg.size() || cfg.tiers[k].bias > cfg.tiers[best].bias)) best = k;
  if (best == cfg.size()) throw ConfigError("no tier has bias > 1; pass --tier");
  return best;
}

struct Formula {
  std::string help;
  std::function<double(const EvalArgs&, std::string&)> run;  // fills the parameter echo
};

std::string echo(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const std::map<std::string, Formula>& registry() {
  static const std::map<std::string, Formula> r = {
      {"c_integral",
       {"C(b, alpha)  [--b, --alpha]",
        [](const EvalArgs& a, std::string& e) {
          e = echo("b=%.9g", a.b) + echo(" alpha=%.9g", a.alpha);
          return c_integral(a.b, a.alpha);
        }}},
      {"ps_plain",
       {"decoding without cancellation  [--eta-db|--eta, --lambda (lambda_eq, m^-2), --mu-j (m^-2), --alpha]",
        [](const EvalArgs& a, std::string& e) {
          e = threshold_echo(a) + echo(" lambda_eq=%.9g", a.lambda) + echo(" mu_j=%.9g", a.mu_j) +
              echo(" alpha=%.9g", a.alpha);
          return ps_plain(threshold(a), a.lambda, a.mu_j, a.alpha);
        }}},
      {"ps_ic",
       {"decoding after n cancellations  [--eta-db|--eta, --n, --lambda, --mu-j, --alpha, --renormalize]",
        [](const EvalArgs& a, std::string& e) {
          e = threshold_echo(a) + echo(" n=%g", a.n) + echo(" lambda_eq=%.9g", a.lambda) +
              echo(" mu_j=%.9g", a.mu_j) + echo(" alpha=%.9g", a.alpha) + (a.renormalize ? " renormalized" : "");
          IcOptions o;
          o.renormalize_serving_distance = a.renormalize;
          return ps_ic(threshold(a), a.n, a.lambda, a.mu_j, a.alpha, o);
        }}},
      {"ps_can",
       {"cancelling the n-th strongest interferer  [--eta-db|--eta, --n, --alpha]",
        [](const EvalArgs& a, std::string& e) {
          e = threshold_echo(a) + echo(" n=%g", a.n) + echo(" alpha=%.9g", a.alpha);
          return ps_can(threshold(a), a.n, a.alpha);
        }}},
      {"ps_can_tsd",
       {"truncated-stable counterpart of ps_can, alpha=4  [--eta-db|--eta, --n]",
        [](const EvalArgs& a, std::string& e) {
          e = threshold_echo(a) + echo(" n=%g", a.n);
          return ps_can_tsd(threshold(a), a.n);
        }}},
      {"ps_sic",
       {"SIC chain success with at most N cancellations  [--eta-db|--eta, --n-max, --lambda, --mu-j, --alpha]",
        [](const EvalArgs& a, std::string& e) {
          e = threshold_echo(a) + echo(" n_max=%g", a.n_max) + echo(" lambda_eq=%.9g", a.lambda) +
              echo(" mu_j=%.9g", a.mu_j) + echo(" alpha=%.9g", a.alpha);
          IcOptions o;
          o.renormalize_serving_distance = a.renormalize;
          return ps_sic(threshold(a), a.n_max, a.lambda, a.mu_j, a.alpha, o).ps_sic_total;
        }}},
      {"kurtosis",
       {"excess kurtosis after n cancellations  [--n (>= 2), --alpha]",
        [](const EvalArgs& a, std::string& e) {
          e = echo("n=%g", a.n) + echo(" alpha=%.9g", a.alpha);
          return kurtosis_after_cancellation(a.alpha, a.n);
        }}},
      {"load_pmf",
       {"cell load law f_M(m)  [--m, --mu-j, --lambda (AP density, m^-2)]",
        [](const EvalArgs& a, std::string& e) {
          e = echo("m=%g", a.m) + echo(" mu_j=%.9g", a.mu_j) + echo(" lambda=%.9g", a.lambda);
          return load_pmf(a.m, a.mu_j, a.lambda);
        }}},
      {"rate_coverage_max_sir",
       {"DL rate coverage, nearest AP  [--rho (bit/s/Hz), --lambda, --mu-j, --alpha]",
        [](const EvalArgs& a, std::string& e) {
          e = echo("rho=%.9g", a.rho) + echo(" lambda=%.9g", a.lambda) + echo(" mu_j=%.9g", a.mu_j) +
              echo(" alpha=%.9g", a.alpha);
          return rate_coverage_max_sir(a.rho, a.lambda, a.mu_j, a.alpha);
        }}},
      {"rate_coverage_min_load",
       {"DL rate coverage, least-loaded AP in range  [--rho, --lambda, --mu-j, --alpha, --r-con (m), --n (0|1 "
        "cancellations)]",
        [](const EvalArgs& a, std::string& e) {
          e = echo("rho=%.9g", a.rho) + echo(" lambda=%.9g", a.lambda) + echo(" mu_j=%.9g", a.mu_j) +
              echo(" alpha=%.9g", a.alpha) + echo(" r_con=%.9g", a.r_con) + echo(" n_cancel=%g", a.n);
          return rate_coverage_min_load(a.rho, a.lambda, a.mu_j, a.alpha, a.r_con, a.n);
        }}},
      {"outage_max_inst_sir",
       {"UL outage, max instantaneous SIR association  [--eta-db|--eta, --config]",
        [](const EvalArgs& a, std::string& e) {
          const auto cfg = network_for(a);
          e = threshold_echo(a) + " network=" + network_config_to_json(cfg, -1);
          return outage_max_inst_sir(threshold(a), cfg);
        }}},
      {"ps_sic_max_inst_sir",
       {"UL success with SIC, max instantaneous SIR association  [--eta-db|--eta, --n-max, --config]",
        [](const EvalArgs& a, std::string& e) {
          const auto cfg = network_for(a);
          e = threshold_echo(a) + echo(" n_max=%g", a.n_max) + " network=" + network_config_to_json(cfg, -1);
          return ps_sic_max_inst_sir(threshold(a), a.n_max, cfg);
        }}},
      {"ps_ic_rea",
       {"DL success of range-expanded users  [--eta-db|--eta, --config, --tier, --cancelled]",
        [](const EvalArgs& a, std::string& e) {
          const auto cfg = network_for(a);
          const std::size_t k = tier_index(a, cfg);
          e = threshold_echo(a) + echo(" tier=%g", static_cast<double>(k)) +
              (a.cancelled ? " cancelled" : " uncancelled") + " network=" + network_config_to_json(cfg, -1);
          return ps_ic_rea(threshold(a), cfg, k, a.cancelled);
        }}},
      {"rea_association_prob",
       {"probability of sitting in the range-expanded area  [--config, --tier]",
        [](const EvalArgs& a, std::string& e) {
          const auto cfg = network_for(a);
          const std::size_t k = tier_index(a, cfg);
          e = echo("tier=%g", static_cast<double>(k)) + " network=" + network_config_to_json(cfg, -1);
          return rea_association_prob(cfg, k);
        }}},
      {"kurtosis_given_radius",
       {"kappa4 / kappa2^2 for interferers beyond r  [--r (m), --mu-j, --alpha]",
        [](const EvalArgs& a, std::string& e) {
          e = echo("r=%.9g", a.r) + echo(" mu_j=%.9g", a.mu_j) + echo(" alpha=%.9g", a.alpha);
          return kurtosis_given_radius(a.alpha, a.mu_j, a.r);
        }}},
  };
  return r;
}

std::string registry_listing() {
  std::string out = "available formulas:\n";
  for (const auto& [name, f] : registry()) out += "  " + name + "  " + f.help + "\n";
  return out;
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

void print_network(const NetworkConfig& cfg) {
  std::printf("network\n%s\n", network_config_to_json(cfg, 2).c_str());
  const auto eq = equivalent_density(cfg);
  const auto users = tier_user_densities(cfg);
  std::printf("lambda_eq = %.9g m^-2 (SIR-equivalent AP density)\n", eq.lambda_eq);
  std::printf("%-5s %-12s %-12s %-12s %-12s %-12s %-12s\n", "tier", "lambda", "p_assoc", "p_biased", "p_rea",
              "mu_users", "mu_tilde");
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    std::printf("%-5zu %-12.6g %-12.6g %-12.6g %-12.6g %-12.6g %-12.6g\n", k, cfg.tiers[k].lambda,
                association_prob_max_power(cfg, k), biased_association_prob(cfg, k), rea_association_prob(cfg, k),
                users[k], eq.mu_tilde[k]);
  }
  std::printf("kernels: %s\n", kernels::isa_name(kernels::active_isa()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic-geometry SIC analysis: closed forms, Monte Carlo and figure sweeps"};
  app.set_version_flag("--version", SICNET_VERSION);
  app.require_subcommand(1);

  // eval -------------------------------------------------------------------
  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate one closed-form expression and echo its parameters");
  eval->add_option("formula", ea.formula, "Formula name (see `eval list`)")->required();
  auto* o_eta_db = eval->add_option("--eta-db", ea.eta_db, "SIR threshold in dB");
  auto* o_eta = eval->add_option("--eta", ea.eta, "SIR threshold, linear");
  o_eta_db->excludes(o_eta);
  o_eta->excludes(o_eta_db);
  eval->add_option("--n", ea.n, "cancellation index / count (ps_ic, ps_can, kurtosis, min-load cancellations)");
  eval->add_option("--n-max", ea.n_max, "cap on the number of cancellations N");
  eval->add_option("--m", ea.m, "cell load m (load_pmf)");
  auto* o_alpha = eval->add_option("--alpha", ea.alpha, "path-loss exponent (> 2)");
  eval->add_option("--lambda", ea.lambda, "AP density in m^-2 (lambda_eq for single-tier formulas)");
  auto* o_mu_j = eval->add_option("--mu-j", ea.mu_j, "interfering user density on the channel, m^-2");
  eval->add_option("--b", ea.b, "argument b of C(b, alpha)");
  eval->add_option("--rho", ea.rho, "rate threshold, bit/s/Hz");
  eval->add_option("--r-con", ea.r_con, "connectivity range for min-load association, m");
  eval->add_option("--r", ea.r, "exclusion radius, m (kurtosis_given_radius)");
  eval->add_option("--tier", ea.tier, "tier index (0-based) for range-expansion formulas");
  eval->add_flag("--cancelled", ea.cancelled, "remove the strongest unbiased AP (ps_ic_rea)");
  eval->add_flag("--renormalize", ea.renormalize, "condition the serving distance on lying beyond R_n");
  eval->add_option("--config", ea.config, "network JSON file for multi-tier formulas; --alpha/--mu-j override it");

  // sweep ------------------------------------------------------------------
  std::string sw_preset = "fig2", sw_config, sw_output;
  std::uint64_t sw_trials = 100000, sw_seed = 1;
  unsigned sw_threads = 0;
  std::vector<std::string> sw_eta_db, sw_n, sw_b, sw_rho;
  double sw_r_con = 0.0;
  bool sw_no_mc = false;
  auto* sweep = app.add_subcommand("sweep", "Run a preset sweep and write result.csv, plot.gp and meta.json");
  sweep->add_option("--preset", sw_preset, "fig2, fig3, fig4, fig5, fig6 or custom")->capture_default_str();
  sweep->add_option("--trials", sw_trials, "Monte Carlo trials per estimate (>= 1000)")->capture_default_str();
  sweep->add_option("--seed", sw_seed, "64-bit seed; fixes every stochastic column")->capture_default_str();
  sweep->add_option("--threads", sw_threads, "worker threads (0: available parallelism)");
  sweep->add_option("--output", sw_output, "output root (default: $SICNET_OUTPUT_DIR or ./results)");
  sweep->add_option("--eta-db", sw_eta_db, "SIR thresholds in dB (overrides the preset grid)")->delimiter(',');
  sweep->add_option("--n", sw_n, "n (fig2) or cancellation caps N (fig3, fig5, custom)")->delimiter(',');
  sweep->add_option("--b", sw_b, "range-expansion biases, linear (fig6)")->delimiter(',');
  sweep->add_option("--rho", sw_rho, "rate thresholds in bit/s/Hz (fig4)")->delimiter(',');
  sweep->add_option("--r-con", sw_r_con, "connectivity range in m (fig4, default 260)");
  sweep->add_option("--config", sw_config, "network JSON for the custom preset");
  sweep->add_flag("--no-mc", sw_no_mc, "analytic columns only");

  // validate ---------------------------------------------------------------
  std::string va_suite = "all";
  ValidationBudget va_budget;
  bool va_verbose = false;
  auto* validate = app.add_subcommand("validate", "Check closed forms against simulation and report each gap");
  validate->add_option("suite", va_suite, "numerics, can, sic, minload, maxsir, rea or all")->capture_default_str();
  validate->add_option("--trials", va_budget.trials, "Monte Carlo trials per estimate")->capture_default_str();
  validate->add_option("--seed", va_budget.seed, "64-bit seed")->capture_default_str();
  validate->add_option("--threads", va_budget.threads, "worker threads (0: available parallelism)");
  validate->add_flag("--verbose,-v", va_verbose, "print every check, including passes and diagnostics");

  // presets / inspect --------------------------------------------------------
  auto* presets = app.add_subcommand("presets", "List the sweep presets");
  std::string in_config;
  std::optional<double> in_alpha, in_mu, in_mu_j;
  auto* inspect = app.add_subcommand("inspect", "Validate a network file and print derived densities");
  inspect->add_option("--config", in_config, "network JSON file")->required();
  inspect->add_option("--alpha", in_alpha, "override the path-loss exponent");
  inspect->add_option("--mu", in_mu, "override the total user density, m^-2");
  inspect->add_option("--mu-j", in_mu_j, "override the per-channel user density, m^-2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) {
      ea.alpha_set = o_alpha->count() > 0;
      ea.mu_j_set = o_mu_j->count() > 0;
      if (ea.formula == "list") {
        std::cout << registry_listing();
        return kExitOk;
      }
      const auto it = registry().find(ea.formula);
      if (it == registry().end()) {
        std::cerr << "unknown formula '" << ea.formula << "'\n" << registry_listing();
        return kExitUsage;
      }
      std::string params;
      const double v = it->second.run(ea, params);
      std::printf("%s(%s)\n%.12g\n", ea.formula.c_str(), params.c_str(), v);
      return kExitOk;
    }

    if (*sweep) {
      SweepSpec spec = default_spec(parse_preset(sw_preset));
      spec.trials = sw_trials;
      spec.seed = sw_seed;
      spec.threads = sw_threads;
      spec.output_dir = sw_output;
      spec.with_monte_carlo = !sw_no_mc;
      if (!sw_eta_db.empty()) spec.grid.eta_db = parse_list(sw_eta_db);
      if (!sw_n.empty()) {
        spec.grid.n.clear();
        for (double v : parse_list(sw_n)) {
          if (v != std::floor(v)) throw ConfigError("--n takes integers");
          spec.grid.n.push_back(static_cast<int>(v));
        }
      }
      if (!sw_b.empty()) spec.grid.bias = parse_list(sw_b);
      if (!sw_rho.empty()) spec.grid.rho = parse_list(sw_rho);
      if (sw_r_con > 0.0) spec.grid.r_con = sw_r_con;
      if (!sw_config.empty()) {
        if (spec.preset != Preset::custom) throw ConfigError("--config applies to the custom preset only");
        spec.network = load_network_config(sw_config);
      }
      spec.validate();
      const SweepResult result = run_preset(spec);
      const std::string dir = write_result_dir(result, spec);
      std::printf("%s\n%zu rows\n", dir.c_str(), result.rows.size());
      return kExitOk;
    }

    if (*validate) {
      const auto ids = suite_criteria(va_suite);
      if (va_budget.trials < 1000) throw ConfigError("--trials must be >= 1000");
      bool ok = true;
      for (int id : ids) {
        const auto rep = run_criterion(id, va_budget);
        print_report(std::cout, rep, va_verbose);
        std::cout.flush();
        ok = ok && rep.passed();
      }
      return ok ? kExitOk : kExitRuntime;
    }

    if (*presets) {
      for (Preset p : all_presets()) std::printf("%-7s %s\n", preset_name(p), preset_description(p).c_str());
      return kExitOk;
    }

    if (*inspect) {
      NetworkConfig cfg = load_network_config(in_config);
      if (in_alpha) cfg.alpha = *in_alpha;
      if (in_mu) cfg.mu = *in_mu;
      if (in_mu_j) cfg.mu_j = *in_mu_j;
      cfg.validate();
      print_network(cfg);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
