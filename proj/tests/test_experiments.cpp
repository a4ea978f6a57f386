#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "sicnet/errors.hpp"
#include "sicnet/experiments.hpp"

using namespace sicnet;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sicnet_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("presets parse by name") {
  for (Preset p : all_presets()) CHECK(parse_preset(preset_name(p)) == p);
  CHECK_THROWS_AS(parse_preset("fig9"), ConfigError);
}

TEST_CASE("fig2 header and grid") {
  SweepSpec spec = default_spec(Preset::fig2);
  spec.with_monte_carlo = false;
  const auto r = run_preset(spec);
  const std::string csv = format_csv(r);
  CHECK(csv.rfind("n,eta_db,ps_can_pgfl,ps_can_tsd,mc_dist_mean,mc_dist_stderr,mc_fade_mean,mc_fade_stderr", 0) == 0);
  CHECK(r.rows.size() == 24);
  CHECK(r.number(0, "ps_can_pgfl") > r.number(1, "ps_can_pgfl"));
  CHECK(r.number(8, "eta_lin") == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("MC rows carry a positive stderr") {
  SweepSpec spec = default_spec(Preset::fig2);
  spec.trials = 2000;
  spec.grid.eta_db = {0.0};
  spec.grid.n = {1, 2};
  const auto r = run_preset(spec);
  REQUIRE(r.rows.size() == 2);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r.number(i, "mc_dist_stderr") > 0.0);
    CHECK(r.number(i, "mc_fade_stderr") > 0.0);
  }
}

TEST_CASE("custom preset with one grid point yields one row") {
  SweepSpec spec = default_spec(Preset::custom);
  spec.grid.eta_db = {3.0};
  spec.grid.n = {2};
  spec.trials = 1000;
  const auto r = run_preset(spec);
  CHECK(r.rows.size() == 1);
  CHECK(r.number(0, "n_max") == 2.0);
}

TEST_CASE("invalid sweeps are rejected") {
  SweepSpec spec = default_spec(Preset::fig3);
  spec.trials = 10;
  CHECK_THROWS_AS(run_preset(spec), ConfigError);
  spec = default_spec(Preset::fig6);
  spec.grid.bias = {1.0};
  CHECK_THROWS_AS(run_preset(spec), ConfigError);
  spec = default_spec(Preset::fig2);
  spec.grid.n = {0};
  CHECK_THROWS_AS(run_preset(spec), ConfigError);
}

TEST_CASE("CSV quoting, empty results and round trip") {
  SweepResult r;
  r.preset = "custom";
  r.columns = {"a", "b,c", "text"};
  CHECK(format_csv(r) == "a,\"b,c\",text\r\n");
  r.rows.push_back({1.0 / 3.0, 42LL, std::string("say \"hi\"\nthere")});
  r.rows.push_back({-1.25e-300, -7LL, std::string()});
  const auto text = format_csv(r);
  const auto t = parse_csv(text);
  REQUIRE(t.header.size() == 3);
  CHECK(t.header[1] == "b,c");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "0.333333333");
  CHECK(std::stod(t.rows[0][0]) == std::stod("0.333333333"));
  CHECK(t.rows[0][1] == "42");
  CHECK(t.rows[0][2] == "say \"hi\"\nthere");
  CHECK(std::stod(t.rows[1][0]) == -1.25e-300);
  CHECK(t.rows[1][2].empty());
  CHECK_THROWS_AS(parse_csv("a,b\r\n\"open"), ConfigError);
}

TEST_CASE("emitted preset CSV parses back to the printed values") {
  SweepSpec spec = default_spec(Preset::fig6);
  spec.with_monte_carlo = false;
  const auto r = run_preset(spec);
  const auto dir = scratch_dir("roundtrip");
  emit_csv(r, (dir / "x.csv").string());
  const auto t = read_csv((dir / "x.csv").string());
  REQUIRE(t.rows.size() == r.rows.size());
  CHECK(t.header == r.columns);
  const std::size_t c = r.column_index("ps_cancelled");
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", r.number(i, "ps_cancelled"));
    CHECK(t.rows[i][c] == buf);
    CHECK(std::stod(t.rows[i][c]) == doctest::Approx(r.number(i, "ps_cancelled")).epsilon(1e-8));
  }
}

TEST_CASE("fig3 plot draws one curve per cap and the baseline") {
  SweepSpec spec = default_spec(Preset::fig3);
  spec.with_monte_carlo = false;
  const auto r = run_preset(spec);
  const std::string gp = format_plot_script(r, "result.csv");
  CHECK(gp.find("'result.csv'") != std::string::npos);
  CHECK(gp.find("no SIC") != std::string::npos);
  for (int n = 1; n <= 5; ++n) CHECK(gp.find("N = " + std::to_string(n)) != std::string::npos);
  CHECK(count(gp, " with ") >= 6);
  CHECK(count(gp, "\n") >= 6);
}

TEST_CASE("every preset has a plot layout") {
  for (Preset p : all_presets()) {
    SweepSpec spec = default_spec(p);
    spec.with_monte_carlo = false;
    const auto gp = format_plot_script(run_preset(spec));
    CHECK(gp.find("plot ") != std::string::npos);
  }
}

TEST_CASE("result directory layout and metadata") {
  SweepSpec spec = default_spec(Preset::fig4);
  spec.with_monte_carlo = false;
  spec.seed = 77;
  spec.output_dir = scratch_dir("layout").string();
  const auto r = run_preset(spec);
  const fs::path dir = write_result_dir(r, spec);
  CHECK(dir.parent_path().filename() == "fig4");
  CHECK(dir.filename().string().find("-77") != std::string::npos);
  CHECK(fs::exists(dir / "result.csv"));
  CHECK(fs::exists(dir / "plot.gp"));
  const auto meta = slurp(dir / "meta.json");
  CHECK(meta.find("\"seed\": \"77\"") != std::string::npos);
  CHECK(meta.find("config_hash") != std::string::npos);
  CHECK(meta.find("version") != std::string::npos);
  // a second run in the same second gets its own directory
  const fs::path again = write_result_dir(r, spec);
  CHECK(again != dir);
}

TEST_CASE("unwritable output directory is an I/O error") {
  SweepSpec spec = default_spec(Preset::fig2);
  spec.with_monte_carlo = false;
  const auto base = scratch_dir("blocked");
  std::ofstream(base / "file") << "x";
  spec.output_dir = (base / "file").string();
  CHECK_THROWS_AS(write_result_dir(run_preset(spec), spec), IoError);
}

TEST_CASE("same seed reproduces the data columns") {
  SweepSpec spec = default_spec(Preset::fig3);
  spec.trials = 1000;
  spec.grid.eta_db = {-4.0, 4.0};
  auto strip = [](SweepResult r) {
    const auto c = r.column_index("runtime_ms");
    r.columns.erase(r.columns.begin() + c);
    for (auto& row : r.rows) row.erase(row.begin() + c);
    return format_csv(r);
  };
  spec.threads = 1;
  const auto a = strip(run_preset(spec));
  spec.threads = 4;
  const auto b = strip(run_preset(spec));
  CHECK(a == b);
}

}  // TEST_SUITE
