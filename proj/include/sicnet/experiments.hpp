#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sicnet/model.hpp"

namespace sicnet {

enum class Preset { fig2, fig3, fig4, fig5, fig6, custom };

const char* preset_name(Preset p);
Preset parse_preset(const std::string& name);  // throws ConfigError
std::vector<Preset> all_presets();
std::string preset_description(Preset p);

/// Grid overrides; empty vectors keep the preset defaults.
struct SweepGrid {
  std::vector<double> eta_db;
  std::vector<int> n;
  std::vector<double> bias;
  std::vector<double> rho;
  double r_con = 0.0;  // fig4 connectivity range, m (0: preset default)
};

struct SweepSpec {
  Preset preset = Preset::fig2;
  SweepGrid grid;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output_dir;
  std::optional<NetworkConfig> network;  // custom preset only
  bool with_monte_carlo = true;

  void validate() const;  // throws ConfigError
};

using Cell = std::variant<double, long long, std::string>;

struct SweepResult {
  std::string preset;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, std::string> metadata;

  std::size_t column_index(const std::string& name) const;  // throws DomainError
  double number(std::size_t row, const std::string& column) const;
};

/// Allowed gap between the fading-ordered cancellation MC and the distance
/// ordering closed form: 0.05 at 0 dB, falling linearly to 0.01 at 10 dB.
double fading_order_tolerance(double eta_db);

/// Sweep defaults per preset (grid, trials and network are filled from the
/// published scenario parameters).
SweepSpec default_spec(Preset preset);

SweepResult run_preset(const SweepSpec& spec);

/// RFC 4180 CSV, header first, floats with 9 significant digits.
void emit_csv(const SweepResult& result, const std::string& path);
std::string format_csv(const SweepResult& result);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

/// Gnuplot script that draws the figure from `csv_name` in the same directory.
void emit_plot_script(const SweepResult& result, const std::string& path,
                      const std::string& csv_name = "result.csv");
std::string format_plot_script(const SweepResult& result, const std::string& csv_name = "result.csv");

/// Writes result.csv, plot.gp and meta.json under
/// <output_dir>/<preset>/<timestamp>-<seed>/ and returns that directory.
std::string write_result_dir(const SweepResult& result, const SweepSpec& spec);

/// Output directory from SICNET_OUTPUT_DIR, else "results".
std::string default_output_dir();

}  // namespace sicnet
