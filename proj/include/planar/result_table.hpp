#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "planar/stats.hpp"

namespace planar {

inline constexpr const char* kCodeVersion = "0.1.0";

struct TableMeta {
  std::string experiment;  // "threshold" or "lifetime"
  std::uint64_t seed = 0;
  std::string version = kCodeVersion;
  std::string config_hash;
  friend bool operator==(const TableMeta&, const TableMeta&) = default;
};

/// One (d, noise) point of a threshold sweep.
struct ThresholdRow {
  int distance = 0;
  std::string model;  // independent_xz | depolarizing | phenomenological
  double p = 0.0;
  double p_prime = 0.0;
  double q = 0.0;
  int rounds = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  Interval wilson;
  double wall_seconds = 0.0;
  friend bool operator==(const ThresholdRow& a, const ThresholdRow& b) {
    return a.distance == b.distance && a.model == b.model && a.p == b.p && a.p_prime == b.p_prime && a.q == b.q &&
           a.rounds == b.rounds && a.trials == b.trials && a.failures == b.failures && a.rate == b.rate &&
           a.wilson.low == b.wilson.low && a.wilson.high == b.wilson.high && a.wall_seconds == b.wall_seconds;
  }
};

struct ResultTable {
  TableMeta meta;
  std::vector<ThresholdRow> rows;
  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

/// Fills rate and the Wilson interval from trials/failures. Throws
/// std::invalid_argument if failures > trials.
ThresholdRow make_row(ThresholdRow row);

/// Wall time depends on the machine, so it is written only when asked for;
/// everything else is a pure function of the table.
std::string to_csv(const ResultTable& table, bool with_wall_time = false);
nlohmann::json to_json(const ResultTable& table, bool with_wall_time = false);
ResultTable table_from_json(const nlohmann::json& j);

/// (p, rate) curves per distance for estimate_crossing.
std::map<int, std::vector<std::pair<double, double>>> curves(const ResultTable& table);
Crossing estimate_crossing(const ResultTable& table);

struct LifetimeRow {
  std::string system;  // ising1d | ising2d | toric
  int size = 0;
  double beta = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
  double median = 0.0;
  double mean = 0.0;
  std::vector<double> times;       // per trial, horizon when censored
  std::vector<bool> trial_censored;
  double wall_seconds = 0.0;
  friend bool operator==(const LifetimeRow& a, const LifetimeRow& b) {
    return a.system == b.system && a.size == b.size && a.beta == b.beta && a.trials == b.trials &&
           a.censored == b.censored && a.median == b.median && a.mean == b.mean && a.times == b.times &&
           a.trial_censored == b.trial_censored && a.wall_seconds == b.wall_seconds;
  }
};

struct LifetimeTable {
  TableMeta meta;
  std::vector<LifetimeRow> rows;
  friend bool operator==(const LifetimeTable&, const LifetimeTable&) = default;
};

/// Per-(L, beta) summary.
std::string to_csv(const LifetimeTable& table, bool with_wall_time = false);
/// One line per trial.
std::string trials_csv(const LifetimeTable& table);
nlohmann::json to_json(const LifetimeTable& table, bool with_wall_time = false);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// Writes text to a file, or to stdout for "" or "-". Throws
/// std::runtime_error on I/O failure.
void write_output(const std::string& path, const std::string& text);

}  // namespace planar
