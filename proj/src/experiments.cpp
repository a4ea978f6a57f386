#include "sicnet/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sicnet/analytic.hpp"
#include "sicnet/config.hpp"
#include "sicnet/errors.hpp"
#include "sicnet/montecarlo.hpp"
#include "sicnet/numerics.hpp"

#ifndef SICNET_VERSION
#define SICNET_VERSION "dev"
#endif

namespace sicnet {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<double> db_range(double lo, double hi, double step) {
  std::vector<double> out;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) out.push_back(lo + i * step);
  return out;
}

std::vector<double> to_linear(const std::vector<double>& db) {
  std::vector<double> out;
  for (double d : db) out.push_back(db_to_linear(d));
  return out;
}

Cell num(double x) { return x; }
Cell cnt(long long x) { return x; }
Cell blank() { return std::string(); }

void push_estimate(std::vector<Cell>& row, const Estimate* e) {
  if (e && e->trials > 0) {
    row.push_back(num(e->mean));
    row.push_back(num(e->std_err));
  } else {
    row.push_back(blank());
    row.push_back(blank());
  }
}

McOptions mc_options(const SweepSpec& spec) {
  McOptions o;
  o.trials = spec.trials;
  o.seed = spec.seed;
  o.threads = spec.threads;
  return o;
}

int max_of(const std::vector<int>& v) { return *std::max_element(v.begin(), v.end()); }

NetworkConfig fig5_network() {
  NetworkConfig cfg;
  cfg.tiers = {{1e-5, 10.0, 10.0, 1.0}, {1e-4, 1.0, 1.0, 1.0}};
  cfg.alpha = 4.0;
  cfg.mu = 1e-4;
  cfg.mu_j = 1e-4;
  return cfg;
}

NetworkConfig fig6_network(double bias) {
  NetworkConfig cfg;
  cfg.tiers = {{1e-5, 10.0, 1.0, 1.0}, {1e-4, 1.0, 1.0, bias}};
  cfg.alpha = 4.0;
  cfg.mu = 1e-4;
  cfg.mu_j = 1e-4;
  return cfg;
}

/// Spreads a shared batch time evenly over the rows it produced.
void add_runtime(std::vector<std::vector<Cell>>& rows, std::size_t first, double batch_ms,
                 const std::vector<double>& own_ms) {
  const std::size_t n = rows.size() - first;
  for (std::size_t i = 0; i < n; ++i)
    rows[first + i].push_back(num(own_ms[i] + (n ? batch_ms / n : 0.0)));
}

SweepResult run_fig2(const SweepSpec& spec) {
  SweepResult r;
  r.columns = {"n", "eta_db", "ps_can_pgfl", "ps_can_tsd", "mc_dist_mean", "mc_dist_stderr",
               "mc_fade_mean", "mc_fade_stderr", "eta_lin", "mc_dist_chain_mean", "mc_dist_chain_stderr",
               "mc_fade_chain_mean", "mc_fade_chain_stderr", "fade_tolerance", "runtime_ms"};
  const double mu_j = 1e-4, alpha = 4.0;
  const auto etas = to_linear(spec.grid.eta_db);
  const int n_max = max_of(spec.grid.n);

  const auto t0 = Clock::now();
  CanMcResult dist, fade, dist_chain, fade_chain;
  if (spec.with_monte_carlo) {
    const auto o = mc_options(spec);
    dist = estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::distance_only, CanMode::unconditional, o);
    fade = estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::power_with_fading, CanMode::unconditional, o);
    dist_chain =
        estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::distance_only, CanMode::chain_conditional, o);
    fade_chain =
        estimate_ps_can_mc(mu_j, alpha, etas, n_max, Ordering::power_with_fading, CanMode::chain_conditional, o);
  }
  const double batch = ms_since(t0);

  std::vector<double> own;
  for (std::size_t ie = 0; ie < etas.size(); ++ie) {
    for (int n : spec.grid.n) {
      const auto t1 = Clock::now();
      std::vector<Cell> row{cnt(n), num(spec.grid.eta_db[ie]), num(ps_can(etas[ie], n, alpha)),
                            num(ps_can_tsd(etas[ie], n))};
      const bool mc = spec.with_monte_carlo;
      push_estimate(row, mc ? &dist.by_eta_n[ie][n - 1] : nullptr);
      push_estimate(row, mc ? &fade.by_eta_n[ie][n - 1] : nullptr);
      row.push_back(num(etas[ie]));
      push_estimate(row, mc ? &dist_chain.by_eta_n[ie][n - 1] : nullptr);
      push_estimate(row, mc ? &fade_chain.by_eta_n[ie][n - 1] : nullptr);
      row.push_back(num(fading_order_tolerance(spec.grid.eta_db[ie])));
      r.rows.push_back(std::move(row));
      own.push_back(ms_since(t1));
    }
  }
  add_runtime(r.rows, 0, batch, own);
  return r;
}

SweepResult run_sic_chain(const SweepSpec& spec, const NetworkConfig& cfg) {
  SweepResult r;
  r.columns = {"eta_db", "eta_lin", "n_max", "ps_sic_analytic", "ps_sic_renormalized",
               "mc_dist_mean", "mc_dist_stderr", "mc_fade_mean", "mc_fade_stderr", "runtime_ms"};
  const auto etas = to_linear(spec.grid.eta_db);
  const int n_max = max_of(spec.grid.n);
  const double lambda_eq = equivalent_density(cfg).lambda_eq;

  const auto t0 = Clock::now();
  SicMcResult dist, fade;
  if (spec.with_monte_carlo) {
    const auto o = mc_options(spec);
    dist = estimate_ps_sic_mc(cfg, etas, n_max, Ordering::distance_only, o);
    fade = estimate_ps_sic_mc(cfg, etas, n_max, Ordering::power_with_fading, o);
  }
  const double batch = ms_since(t0);

  IcOptions renorm;
  renorm.renormalize_serving_distance = true;
  std::vector<double> own;
  for (std::size_t ie = 0; ie < etas.size(); ++ie) {
    const auto t1 = Clock::now();
    const auto plain = ps_sic(etas[ie], n_max, lambda_eq, cfg.mu_j, cfg.alpha).cumulative();
    const auto scaled = ps_sic(etas[ie], n_max, lambda_eq, cfg.mu_j, cfg.alpha, renorm).cumulative();
    const double per_row = ms_since(t1) / spec.grid.n.size();
    for (int n : spec.grid.n) {
      std::vector<Cell> row{num(spec.grid.eta_db[ie]), num(etas[ie]), cnt(n), num(plain[n]), num(scaled[n])};
      push_estimate(row, spec.with_monte_carlo ? &dist.by_eta_cap[ie][n] : nullptr);
      push_estimate(row, spec.with_monte_carlo ? &fade.by_eta_cap[ie][n] : nullptr);
      r.rows.push_back(std::move(row));
      own.push_back(per_row);
    }
  }
  add_runtime(r.rows, 0, batch, own);
  return r;
}

SweepResult run_fig4(const SweepSpec& spec) {
  SweepResult r;
  r.columns = {"rho", "r_con", "n_aps", "maxsir_analytic", "minload_analytic", "minload_sic_analytic",
               "mc_maxsir_mean", "mc_maxsir_stderr", "mc_minload_mean", "mc_minload_stderr",
               "mc_minload_sic_mean", "mc_minload_sic_stderr", "mc_no_candidate", "runtime_ms"};
  const double lambda = 1e-5, mu_j = 5e-5, alpha = 4.0;
  const double r_con = spec.grid.r_con;

  const auto t0 = Clock::now();
  MinLoadMcResult mc;
  if (spec.with_monte_carlo) mc = simulate_min_load(lambda, mu_j, alpha, r_con, spec.grid.rho, mc_options(spec));
  const double batch = ms_since(t0);

  std::vector<double> own;
  for (std::size_t i = 0; i < spec.grid.rho.size(); ++i) {
    const auto t1 = Clock::now();
    const double rho = spec.grid.rho[i];
    std::vector<Cell> row{num(rho), num(r_con), cnt(min_load_candidate_count(lambda, r_con)),
                          num(rate_coverage_max_sir(rho, lambda, mu_j, alpha)),
                          num(rate_coverage_min_load(rho, lambda, mu_j, alpha, r_con, 0)),
                          num(rate_coverage_min_load(rho, lambda, mu_j, alpha, r_con, 1))};
    const bool m = spec.with_monte_carlo;
    push_estimate(row, m ? &mc.max_sir[i] : nullptr);
    push_estimate(row, m ? &mc.min_load[i] : nullptr);
    push_estimate(row, m ? &mc.min_load_sic[i] : nullptr);
    row.push_back(m ? num(mc.no_candidate.mean) : blank());
    r.rows.push_back(std::move(row));
    own.push_back(ms_since(t1));
  }
  add_runtime(r.rows, 0, batch, own);
  return r;
}

SweepResult run_fig5(const SweepSpec& spec) {
  SweepResult r;
  r.columns = {"eta_db", "eta_lin", "n_max", "ps_analytic", "uplift_analytic", "mc_shared_mean",
               "mc_shared_stderr", "mc_indep_mean", "mc_indep_stderr", "runtime_ms"};
  const NetworkConfig cfg = fig5_network();
  const auto etas = to_linear(spec.grid.eta_db);
  const int n_max = max_of(spec.grid.n);

  const auto t0 = Clock::now();
  MaxSirMcResult shared, indep;
  if (spec.with_monte_carlo) {
    const auto o = mc_options(spec);
    shared = simulate_max_inst_sir(cfg, etas, n_max, FieldModel::shared, o);
    indep = simulate_max_inst_sir(cfg, etas, n_max, FieldModel::independent, o);
  }
  const double batch = ms_since(t0);

  std::vector<double> own;
  for (std::size_t ie = 0; ie < etas.size(); ++ie) {
    const auto t1 = Clock::now();
    const double base = 1.0 - outage_max_inst_sir(etas[ie], cfg);
    for (int n : spec.grid.n) {
      const double ps = n == 0 ? base : ps_sic_max_inst_sir(etas[ie], n, cfg);
      std::vector<Cell> row{num(spec.grid.eta_db[ie]), num(etas[ie]), cnt(n), num(ps), num(ps - base)};
      push_estimate(row, spec.with_monte_carlo ? &shared.by_eta_cap[ie][n] : nullptr);
      push_estimate(row, spec.with_monte_carlo ? &indep.by_eta_cap[ie][n] : nullptr);
      r.rows.push_back(std::move(row));
      own.push_back(ms_since(t1));
    }
  }
  add_runtime(r.rows, 0, batch, own);
  return r;
}

SweepResult run_fig6(const SweepSpec& spec) {
  SweepResult r;
  r.columns = {"b", "eta_db", "eta_lin", "p_re", "ps_uncancelled", "ps_cancelled", "mc_unc_mean",
               "mc_unc_stderr", "mc_can_mean", "mc_can_stderr", "model_unc_mean", "model_unc_stderr",
               "model_can_mean", "model_can_stderr", "mc_rea_fraction", "runtime_ms"};
  const auto etas = to_linear(spec.grid.eta_db);
  for (double b : spec.grid.bias) {
    const NetworkConfig cfg = fig6_network(b);
    const auto t0 = Clock::now();
    ReaMcResult mc;
    if (spec.with_monte_carlo) mc = simulate_rea(cfg, 1, etas, mc_options(spec));
    const double batch = ms_since(t0);
    const double p_re = rea_association_prob(cfg, 1);
    const std::size_t first = r.rows.size();
    std::vector<double> own;
    for (std::size_t ie = 0; ie < etas.size(); ++ie) {
      const auto t1 = Clock::now();
      std::vector<Cell> row{num(b), num(spec.grid.eta_db[ie]), num(etas[ie]), num(p_re),
                            num(ps_ic_rea(etas[ie], cfg, 1, false)), num(ps_ic_rea(etas[ie], cfg, 1, true))};
      const bool m = spec.with_monte_carlo;
      push_estimate(row, m ? &mc.uncancelled[ie] : nullptr);
      push_estimate(row, m ? &mc.cancelled[ie] : nullptr);
      push_estimate(row, m ? &mc.model_uncancelled[ie] : nullptr);
      push_estimate(row, m ? &mc.model_cancelled[ie] : nullptr);
      row.push_back(m ? num(mc.rea_fraction.mean) : blank());
      r.rows.push_back(std::move(row));
      own.push_back(ms_since(t1));
    }
    add_runtime(r.rows, first, batch, own);
  }
  return r;
}

std::string hex64(std::uint64_t x) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

nlohmann::json grid_json(const SweepGrid& g) {
  nlohmann::json j;
  j["eta_db"] = g.eta_db;
  j["n"] = g.n;
  j["bias"] = g.bias;
  j["rho"] = g.rho;
  j["r_con"] = g.r_con;
  return j;
}

std::string utc_stamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

double fading_order_tolerance(double eta_db) {
  return std::clamp(0.05 - 0.004 * eta_db, 0.01, 0.05);
}

const char* preset_name(Preset p) {
  switch (p) {
    case Preset::fig2: return "fig2";
    case Preset::fig3: return "fig3";
    case Preset::fig4: return "fig4";
    case Preset::fig5: return "fig5";
    case Preset::fig6: return "fig6";
    case Preset::custom: return "custom";
  }
  return "?";
}

Preset parse_preset(const std::string& name) {
  for (Preset p : all_presets())
    if (name == preset_name(p)) return p;
  throw ConfigError("unknown preset '" + name + "' (expected fig2, fig3, fig4, fig5, fig6 or custom)");
}

std::vector<Preset> all_presets() {
  return {Preset::fig2, Preset::fig3, Preset::fig4, Preset::fig5, Preset::fig6, Preset::custom};
}

std::string preset_description(Preset p) {
  switch (p) {
    case Preset::fig2:
      return "P(cancel n-th strongest), n=1..8, eta in {0,5,10} dB, mu_j=1e-4 m^-2, alpha=4";
    case Preset::fig3:
      return "SIC chain success vs eta, N=0..5, lambda_eq=mu_j=1e-4 m^-2, alpha=4";
    case Preset::fig4:
      return "DL rate coverage, max-SIR vs min-load (+1 cancellation), lambda=1e-5, mu_j=5e-5, r_con=260 m";
    case Preset::fig5:
      return "UL max-instantaneous-SIR association with SIC, N=0..3, two tiers, P1/P2=Q1/Q2=10";
    case Preset::fig6:
      return "DL range-expanded users with/without cancelling the strongest AP, b in {2,5,10}, P1/P2=10";
    case Preset::custom:
      return "SIC chain on a user-supplied network (--config), eta and N grid from flags";
  }
  return "";
}

void SweepSpec::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError("sweep: " + m); };
  if (with_monte_carlo && trials < 1000) fail("trials must be >= 1000 for Monte Carlo columns");
  for (double d : grid.eta_db)
    if (!std::isfinite(d)) fail("eta_db must be finite");
  for (double b : grid.bias)
    if (!std::isfinite(b) || b < 1.0) fail("bias must be >= 1");
  for (double rho : grid.rho)
    if (!std::isfinite(rho) || !(rho > 0.0)) fail("rho must be > 0");
  if (!std::isfinite(grid.r_con) || grid.r_con < 0.0) fail("r_con must be >= 0");

  const int n_lo = preset == Preset::fig2 ? 1 : 0;
  for (int n : grid.n)
    if (n < n_lo || n > 64) fail("n must be in [" + std::to_string(n_lo) + ", 64]");

  switch (preset) {
    case Preset::fig2:
    case Preset::fig3:
    case Preset::fig5:
    case Preset::custom:
      if (grid.eta_db.empty() || grid.n.empty()) fail("grid needs at least one eta and one n");
      break;
    case Preset::fig4:
      if (grid.rho.empty()) fail("grid needs at least one rho");
      if (!(grid.r_con > 0.0)) fail("r_con must be > 0");
      break;
    case Preset::fig6:
      if (grid.eta_db.empty() || grid.bias.empty()) fail("grid needs at least one eta and one bias");
      for (double b : grid.bias)
        if (!(b > 1.0)) fail("fig6 biases must exceed 1 (no range expansion otherwise)");
      break;
  }
  if (network) network->validate();
}

SweepSpec default_spec(Preset preset) {
  SweepSpec s;
  s.preset = preset;
  switch (preset) {
    case Preset::fig2:
      s.grid.eta_db = {0.0, 5.0, 10.0};
      s.grid.n = {1, 2, 3, 4, 5, 6, 7, 8};
      break;
    case Preset::fig3:
      s.grid.eta_db = db_range(-10.0, 10.0, 2.0);
      s.grid.n = {0, 1, 2, 3, 4, 5};
      break;
    case Preset::fig4:
      for (int i = 0; i < 10; ++i) s.grid.rho.push_back(0.05 + 0.05 * i);
      s.grid.r_con = 260.0;
      break;
    case Preset::fig5:
      s.grid.eta_db = db_range(-10.0, 10.0, 2.0);
      s.grid.n = {0, 1, 2, 3};
      break;
    case Preset::fig6:
      s.grid.eta_db = db_range(-10.0, 10.0, 2.0);
      s.grid.bias = {2.0, 5.0, 10.0};
      break;
    case Preset::custom:
      s.grid.eta_db = {0.0};
      s.grid.n = {0};
      break;
  }
  return s;
}

std::size_t SweepResult::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw DomainError("no column named '" + name + "'");
}

double SweepResult::number(std::size_t row, const std::string& column) const {
  const Cell& c = rows.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
  throw DomainError("column '" + column + "' holds no number in row " + std::to_string(row));
}

SweepResult run_preset(const SweepSpec& in) {
  // Fill any grid axis the caller left empty from the preset defaults.
  SweepSpec spec = in;
  const SweepSpec def = default_spec(in.preset);
  if (spec.grid.eta_db.empty()) spec.grid.eta_db = def.grid.eta_db;
  if (spec.grid.n.empty()) spec.grid.n = def.grid.n;
  if (spec.grid.bias.empty()) spec.grid.bias = def.grid.bias;
  if (spec.grid.rho.empty()) spec.grid.rho = def.grid.rho;
  if (spec.grid.r_con == 0.0) spec.grid.r_con = def.grid.r_con;
  spec.validate();

  const auto t0 = Clock::now();
  SweepResult r;
  NetworkConfig net;
  switch (spec.preset) {
    case Preset::fig2:
      net = NetworkConfig::single_tier(1e-4, 1e-4);
      r = run_fig2(spec);
      break;
    case Preset::fig3:
      net = NetworkConfig::single_tier(1e-4, 1e-4);
      r = run_sic_chain(spec, net);
      break;
    case Preset::fig4:
      net = NetworkConfig::single_tier(1e-5, 5e-5);
      r = run_fig4(spec);
      break;
    case Preset::fig5:
      net = fig5_network();
      r = run_fig5(spec);
      break;
    case Preset::fig6:
      net = fig6_network(spec.grid.bias.front());
      r = run_fig6(spec);
      break;
    case Preset::custom:
      net = spec.network ? *spec.network : NetworkConfig::single_tier(1e-4, 1e-4);
      r = run_sic_chain(spec, net);
      break;
  }
  r.preset = preset_name(spec.preset);

  const std::string net_json = network_config_to_json(net, -1);
  const std::string grid_text = grid_json(spec.grid).dump();
  r.metadata["preset"] = r.preset;
  r.metadata["seed"] = std::to_string(spec.seed);
  r.metadata["trials"] = spec.with_monte_carlo ? std::to_string(spec.trials) : "0";
  r.metadata["threads"] = std::to_string(resolve_threads(spec.threads));
  r.metadata["version"] = SICNET_VERSION;
  r.metadata["network"] = net_json;
  r.metadata["grid"] = grid_text;
  r.metadata["config_hash"] = hex64(fnv1a(r.preset + '\n' + net_json + '\n' + grid_text));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", ms_since(t0));
  r.metadata["wall_clock_ms"] = buf;
  return r;
}

std::string default_output_dir() {
  const char* env = std::getenv("SICNET_OUTPUT_DIR");
  return env && *env ? env : "results";
}

std::string write_result_dir(const SweepResult& result, const SweepSpec& spec) {
  const std::string root = spec.output_dir.empty() ? default_output_dir() : spec.output_dir;
  const fs::path base = fs::path(root) / result.preset;
  const std::string stem = utc_stamp() + "-" + std::to_string(spec.seed);
  fs::path dir = base / stem;
  std::error_code ec;
  for (int k = 1; fs::exists(dir, ec); ++k) dir = base / (stem + "." + std::to_string(k));
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  emit_csv(result, (dir / "result.csv").string());
  emit_plot_script(result, (dir / "plot.gp").string(), "result.csv");

  nlohmann::json meta;
  for (const auto& [k, v] : result.metadata) {
    if (k == "network" || k == "grid")
      meta[k] = nlohmann::json::parse(v);
    else
      meta[k] = v;
  }
  meta["rows"] = result.rows.size();
  meta["columns"] = result.columns;
  const fs::path meta_path = dir / "meta.json";
  std::ofstream f(meta_path);
  if (!f) throw IoError("cannot open " + meta_path.string() + " for writing");
  f << meta.dump(2) << '\n';
  if (!f) throw IoError("write failed: " + meta_path.string());
  return dir.string();
}

// ---------------------------------------------------------------------------
// gnuplot scripts

namespace {

struct Curve {
  std::string x, y, err;  // column names; err empty for lines
  std::string filter_col;
  double filter_value = 0.0;
  std::string title;
  std::string style;
};

std::string using_clause(const SweepResult& r, const Curve& c) {
  auto col = [&](const std::string& name) { return "$" + std::to_string(r.column_index(name) + 1); };
  std::ostringstream os;
  std::string y = col(c.y);
  if (!c.filter_col.empty()) {
    char v[32];
    std::snprintf(v, sizeof v, "%.9g", c.filter_value);
    y = "(" + col(c.filter_col) + "==" + v + " ? " + col(c.y) + " : 1/0)";
  }
  os << "(" << col(c.x) << "):" << y;
  if (!c.err.empty()) os << ":(" << col(c.err) << ")";
  return os.str();
}

std::vector<double> distinct(const SweepResult& r, const std::string& column) {
  std::vector<double> out;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double v = r.number(i, column);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

bool has_numbers(const SweepResult& r, const std::string& column) {
  const std::size_t c = r.column_index(column);
  for (const auto& row : r.rows)
    if (!std::holds_alternative<std::string>(row[c])) return true;
  return false;
}

}  // namespace

std::string format_plot_script(const SweepResult& r, const std::string& csv_name) {
  std::vector<Curve> curves;
  std::ostringstream head;
  head << "# gnuplot script for preset " << r.preset << "; data: " << csv_name << "\n";

  const bool mc = [&] {
    for (const auto& c : r.columns)
      if (c.rfind("mc_", 0) == 0 && has_numbers(r, c)) return true;
    return false;
  }();

  if (r.preset == "fig2") {
    head << "set xlabel 'n (index of the interferer to cancel)'\nset ylabel 'P(cancel)'\nset logscale y\n";
    for (double e : distinct(r, "eta_db")) {
      const std::string t = fmt(e) + " dB";
      curves.push_back({"n", "ps_can_pgfl", "", "eta_db", e, "PGFL " + t, "lines lw 2"});
      curves.push_back({"n", "ps_can_tsd", "", "eta_db", e, "TSD " + t, "lines dt 2"});
      if (mc) {
        curves.push_back({"n", "mc_dist_mean", "mc_dist_stderr", "eta_db", e, "MC distance " + t, "yerrorbars pt 6"});
        curves.push_back({"n", "mc_fade_mean", "mc_fade_stderr", "eta_db", e, "MC fading " + t, "yerrorbars pt 4"});
      }
    }
  } else if (r.preset == "fig3" || r.preset == "custom") {
    head << "# Only this model's curves are drawn; no external bounds are overlaid.\n";
    head << "set xlabel 'SIR threshold (dB)'\nset ylabel 'success probability'\nset key bottom left\n";
    for (double n : distinct(r, "n_max")) {
      const std::string t = n == 0 ? "no SIC" : "N = " + fmt(n);
      curves.push_back({"eta_db", "ps_sic_analytic", "", "n_max", n, t, n == 0 ? "lines lw 3 lc rgb 'blue'" : "lines"});
      if (mc)
        curves.push_back({"eta_db", "mc_dist_mean", "mc_dist_stderr", "n_max", n, "MC " + t, "yerrorbars pt 7 ps 0.5"});
    }
  } else if (r.preset == "fig4") {
    head << "set xlabel 'rate threshold rho (bit/s/Hz)'\nset ylabel 'rate coverage'\n";
    curves.push_back({"rho", "maxsir_analytic", "", "", 0, "max-SIR", "lines lw 2"});
    curves.push_back({"rho", "minload_analytic", "", "", 0, "min-load", "lines dt 2"});
    curves.push_back({"rho", "minload_sic_analytic", "", "", 0, "min-load, 1 cancellation", "lines dt 3"});
    if (mc) {
      curves.push_back({"rho", "mc_maxsir_mean", "mc_maxsir_stderr", "", 0, "MC max-SIR", "yerrorbars pt 6"});
      curves.push_back({"rho", "mc_minload_mean", "mc_minload_stderr", "", 0, "MC min-load", "yerrorbars pt 4"});
      curves.push_back({"rho", "mc_minload_sic_mean", "mc_minload_sic_stderr", "", 0, "MC min-load SIC", "yerrorbars pt 8"});
    }
  } else if (r.preset == "fig5") {
    head << "set xlabel 'SIR threshold (dB)'\nset ylabel 'success probability'\n";
    for (double n : distinct(r, "n_max")) {
      const std::string t = n == 0 ? "max-SIR, no SIC" : "N = " + fmt(n);
      curves.push_back({"eta_db", "ps_analytic", "", "n_max", n, t, "lines"});
      if (mc)
        curves.push_back({"eta_db", "mc_shared_mean", "mc_shared_stderr", "n_max", n, "MC " + t, "yerrorbars pt 6"});
    }
  } else if (r.preset == "fig6") {
    head << "set xlabel 'SIR threshold (dB)'\nset ylabel 'success probability (range-expanded users)'\n";
    for (double b : distinct(r, "b")) {
      const std::string t = "b = " + fmt(b);
      curves.push_back({"eta_db", "ps_uncancelled", "", "b", b, t, "lines"});
      curves.push_back({"eta_db", "ps_cancelled", "", "b", b, t + ", strongest AP cancelled", "lines dt 2"});
      if (mc) {
        curves.push_back({"eta_db", "mc_unc_mean", "mc_unc_stderr", "b", b, "MC " + t, "yerrorbars pt 6"});
        curves.push_back({"eta_db", "mc_can_mean", "mc_can_stderr", "b", b, "MC " + t + " cancelled", "yerrorbars pt 4"});
      }
    }
  } else {
    throw DomainError("no plot layout for preset '" + r.preset + "'");
  }

  std::ostringstream os;
  os << head.str();
  os << "set datafile separator ','\n";
  os << "set datafile missing ''\n";
  os << "set grid\n";
  os << "set key outside right\n";
  os << "data = '" << csv_name << "'\n";
  if (curves.empty()) return os.str();
  os << "plot \\\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Curve& c = curves[i];
    os << "  data every ::1 using " << using_clause(r, c) << " with " << c.style << " title '" << c.title << "'";
    os << (i + 1 < curves.size() ? ", \\\n" : "\n");
  }
  return os.str();
}

void emit_plot_script(const SweepResult& result, const std::string& path, const std::string& csv_name) {
  const std::string text = format_plot_script(result, csv_name);
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace sicnet
