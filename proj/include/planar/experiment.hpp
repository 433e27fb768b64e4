#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "planar/noise.hpp"
#include "planar/result_table.hpp"
#include "planar/thermal.hpp"

namespace planar {

/// Bad config, with the 1-based line it points at (0 when unknown) and the
/// file it came from.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message, const std::string& source = "");
  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  std::string detail_;
};

struct OutputSpec {
  std::string path;            // empty: stdout
  std::string format = "csv";  // csv | json
  std::string per_trial_path;  // lifetime only
  bool wall_time = false;
};

struct ThresholdConfig {
  std::vector<int> distances;
  std::string model = "independent_xz";
  std::vector<double> p_values;
  double p_prime = 0.0;
  std::optional<double> q;      // phenomenological; defaults to p
  std::optional<int> rounds;    // phenomenological; defaults to d
  std::uint64_t trials = 1000;
};

struct LifetimeConfig {
  std::string system = "ising1d";  // ising1d | ising2d | toric
  bool periodic = true;
  double J = 1.0;
  double J_s = 1.0;
  double J_p = 1.0;
  std::vector<int> sizes;
  std::vector<double> betas;
  std::uint64_t trials = 200;
  double horizon = 1e6;
};

struct ExperimentConfig {
  std::variant<ThresholdConfig, LifetimeConfig> body;
  std::uint64_t seed = 1;
  int workers = 1;
  OutputSpec output;

  std::string kind() const { return body.index() == 0 ? "threshold" : "lifetime"; }
  /// FNV-1a of the settings that determine the results (workers and output
  /// excluded), as 16 hex digits.
  std::string hash() const;
  nlohmann::json to_json() const;
};

/// Parses and validates a JSON config. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Checks the invariants (nonempty grids, trials >= 1, ...). Throws ConfigError
/// with line 0.
void validate(const ExperimentConfig& config);

/// Evenly spaced grid, start and stop included, values rounded to 12 decimals.
std::vector<double> grid(double start, double stop, double step);

NoiseModel noise_for(const ThresholdConfig& config, int distance, double p);

/// Does one trial fail? Samples noise, decodes, checks the logical effect.
bool threshold_trial(const CodeLayout& layout, const NoiseModel& model, Rng& rng);

/// `progress` (may be null) receives a status line now and then.
ResultTable run_threshold_sweep(const ExperimentConfig& config, std::ostream* progress = nullptr);
LifetimeTable run_lifetime_sweep(const ExperimentConfig& config, std::ostream* progress = nullptr);

thermal::SystemSpec system_for(const LifetimeConfig& config, int size);

}  // namespace planar
