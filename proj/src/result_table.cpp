#include "planar/result_table.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <fmt/format.h>

namespace planar {

using nlohmann::json;

std::string format_double(double v) { return fmt::format("{}", v); }

ThresholdRow make_row(ThresholdRow row) {
  if (row.failures > row.trials) throw std::invalid_argument("failures exceed trials");
  if (row.trials == 0) {
    row.rate = 0.0;
    row.wilson = {0.0, 1.0};
    return row;
  }
  row.rate = static_cast<double>(row.failures) / static_cast<double>(row.trials);
  row.wilson = wilson_interval(row.failures, row.trials);
  return row;
}

namespace {

std::string meta_comment(const TableMeta& m) {
  return fmt::format("# experiment={} seed={} version={} config_hash={}\n", m.experiment, m.seed, m.version,
                     m.config_hash);
}

json meta_json(const TableMeta& m) {
  return json{{"experiment", m.experiment}, {"seed", m.seed}, {"version", m.version}, {"config_hash", m.config_hash}};
}

TableMeta meta_from_json(const json& j) {
  TableMeta m;
  m.experiment = j.at("experiment").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.version = j.at("version").get<std::string>();
  m.config_hash = j.at("config_hash").get<std::string>();
  return m;
}

}  // namespace

std::string to_csv(const ResultTable& table, bool with_wall_time) {
  std::string out = meta_comment(table.meta);
  out += "d,model,p,p_prime,q,rounds,trials,failures,rate,ci_low,ci_high";
  out += with_wall_time ? ",wall_seconds\n" : "\n";
  for (const auto& r : table.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}", r.distance, r.model, format_double(r.p),
                       format_double(r.p_prime), format_double(r.q), r.rounds, r.trials, r.failures,
                       format_double(r.rate), format_double(r.wilson.low), format_double(r.wilson.high));
    if (with_wall_time) out += "," + format_double(r.wall_seconds);
    out += "\n";
  }
  return out;
}

json to_json(const ResultTable& table, bool with_wall_time) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    json row{{"d", r.distance},     {"model", r.model},       {"p", r.p},
             {"p_prime", r.p_prime}, {"q", r.q},               {"rounds", r.rounds},
             {"trials", r.trials},   {"failures", r.failures}, {"rate", r.rate},
             {"ci_low", r.wilson.low}, {"ci_high", r.wilson.high}};
    if (with_wall_time) row["wall_seconds"] = r.wall_seconds;
    rows.push_back(std::move(row));
  }
  return json{{"meta", meta_json(table.meta)}, {"rows", rows}};
}

ResultTable table_from_json(const json& j) {
  ResultTable t;
  t.meta = meta_from_json(j.at("meta"));
  for (const auto& r : j.at("rows")) {
    ThresholdRow row;
    row.distance = r.at("d").get<int>();
    row.model = r.at("model").get<std::string>();
    row.p = r.at("p").get<double>();
    row.p_prime = r.at("p_prime").get<double>();
    row.q = r.at("q").get<double>();
    row.rounds = r.at("rounds").get<int>();
    row.trials = r.at("trials").get<std::uint64_t>();
    row.failures = r.at("failures").get<std::uint64_t>();
    if (row.failures > row.trials) throw std::invalid_argument("failures exceed trials");
    row.rate = r.at("rate").get<double>();
    row.wilson = {r.at("ci_low").get<double>(), r.at("ci_high").get<double>()};
    row.wall_seconds = r.value("wall_seconds", 0.0);
    t.rows.push_back(row);
  }
  return t;
}

std::map<int, std::vector<std::pair<double, double>>> curves(const ResultTable& table) {
  std::map<int, std::vector<std::pair<double, double>>> out;
  for (const auto& r : table.rows) out[r.distance].emplace_back(r.p, r.rate);
  for (auto& [d, pts] : out) std::sort(pts.begin(), pts.end());
  return out;
}

Crossing estimate_crossing(const ResultTable& table) { return estimate_crossing(curves(table)); }

std::string to_csv(const LifetimeTable& table, bool with_wall_time) {
  std::string out = meta_comment(table.meta);
  out += "system,L,beta,trials,censored,median,mean";
  out += with_wall_time ? ",wall_seconds\n" : "\n";
  for (const auto& r : table.rows) {
    out += fmt::format("{},{},{},{},{},{},{}", r.system, r.size, format_double(r.beta), r.trials, r.censored,
                       format_double(r.median), format_double(r.mean));
    if (with_wall_time) out += "," + format_double(r.wall_seconds);
    out += "\n";
  }
  return out;
}

std::string trials_csv(const LifetimeTable& table) {
  std::string out = meta_comment(table.meta);
  out += "system,L,beta,trial,time,censored\n";
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      out += fmt::format("{},{},{},{},{},{}\n", r.system, r.size, format_double(r.beta), i, format_double(r.times[i]),
                         r.trial_censored[i] ? 1 : 0);
    }
  }
  return out;
}

json to_json(const LifetimeTable& table, bool with_wall_time) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    json row{{"system", r.system},     {"L", r.size},          {"beta", r.beta},
             {"trials", r.trials},     {"censored", r.censored}, {"median", r.median},
             {"mean", r.mean},         {"times", r.times},     {"trial_censored", r.trial_censored}};
    if (with_wall_time) row["wall_seconds"] = r.wall_seconds;
    rows.push_back(std::move(row));
  }
  return json{{"meta", meta_json(table.meta)}, {"rows", rows}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace planar
