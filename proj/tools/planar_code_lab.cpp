#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "planar/braid_cnot.hpp"
#include "planar/decoder.hpp"
#include "planar/experiment.hpp"
#include "planar/layout.hpp"

namespace {

using nlohmann::json;
using namespace planar;

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<std::string> per_trial;
  bool wall_time = false;
  bool quiet = false;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--config", f.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "master seed (overrides config)");
  cmd->add_option("--workers", f.workers, "worker threads (overrides config)")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", f.trials, "trials per point (overrides config)")->check(CLI::PositiveNumber);
  cmd->add_option("--output", f.output, "output file, - for stdout (overrides config)");
  cmd->add_option("--format", f.format, "csv or json (overrides config)")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--wall-time", f.wall_time, "include per-point wall time in the output");
  cmd->add_flag("--quiet", f.quiet, "no progress on stderr");
}

ExperimentConfig configure(const SweepFlags& f, const std::string& expected) {
  ExperimentConfig cfg = load_config(f.config);
  if (cfg.kind() != expected)
    throw UsageError(fmt::format("{} is a {} config, not {}", f.config, cfg.kind(), expected));
  if (f.seed) cfg.seed = *f.seed;
  if (f.workers) cfg.workers = *f.workers;
  if (f.trials) {
    if (auto* t = std::get_if<ThresholdConfig>(&cfg.body)) t->trials = *f.trials;
    if (auto* l = std::get_if<LifetimeConfig>(&cfg.body)) l->trials = *f.trials;
  }
  if (f.output) cfg.output.path = *f.output;
  if (f.format) cfg.output.format = *f.format;
  if (f.per_trial) cfg.output.per_trial_path = *f.per_trial;
  if (f.wall_time) cfg.output.wall_time = true;
  validate(cfg);
  return cfg;
}

int run_threshold(const SweepFlags& f) {
  const ExperimentConfig cfg = configure(f, "threshold");
  const ResultTable table = run_threshold_sweep(cfg, f.quiet ? nullptr : &std::cerr);
  write_output(cfg.output.path, cfg.output.format == "json" ? to_json(table, cfg.output.wall_time).dump(2) + "\n"
                                                            : to_csv(table, cfg.output.wall_time));
  if (!f.quiet) {
    try {
      const Crossing c = estimate_crossing(table);
      std::cerr << fmt::format("crossing: p_c = {:.4f} +/- {:.4f} ({} pairs)\n", c.p_c, c.spread, c.pairwise.size());
    } catch (const std::invalid_argument& e) {
      std::cerr << "crossing: not estimated (" << e.what() << ")\n";
    }
  }
  return 0;
}

int run_lifetime(const SweepFlags& f) {
  const ExperimentConfig cfg = configure(f, "lifetime");
  const LifetimeTable table = run_lifetime_sweep(cfg, f.quiet ? nullptr : &std::cerr);
  write_output(cfg.output.path, cfg.output.format == "json" ? to_json(table, cfg.output.wall_time).dump(2) + "\n"
                                                            : to_csv(table, cfg.output.wall_time));
  if (!cfg.output.per_trial_path.empty()) write_output(cfg.output.per_trial_path, trials_csv(table));
  return 0;
}

int run_decode(const std::string& path, std::optional<int> distance_flag) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
  if (!j.is_object()) throw UsageError(path + ": expected a JSON object");
  int d = distance_flag.value_or(j.value("distance", 0));
  if (d < 2) throw UsageError(path + ": needs \"distance\" >= 2 (or --distance)");
  NoiseModel model = IndependentXZ{};
  Syndrome syn;
  try {
    if (j.contains("noise")) model = noise_from_json(j["noise"]);
    syn = syndrome_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  }
  const CodeLayout layout = CodeLayout::planar(d);
  auto check = [&](const std::vector<int>& v, StabilizerType t, const char* what) {
    for (int s : v)
      if (s < 0 || s >= layout.num_stabilizers(t))
        throw UsageError(fmt::format("{}: {} index {} out of range for d={}", path, what, s, d));
  };
  check(syn.m_defects, StabilizerType::Plaquette, "m defect");
  check(syn.e_defects, StabilizerType::Vertex, "e defect");
  for (const auto& r : syn.rounds) {
    check(r.m_defects, StabilizerType::Plaquette, "m defect");
    check(r.e_defects, StabilizerType::Vertex, "e defect");
  }
  const Correction c = decode(syn, layout, model);
  json out = to_json(c);
  out["distance"] = d;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_braid(int size, const std::string& control, const std::string& target, std::uint64_t seed, bool no_walk) {
  const CnotResult r = braid_cnot_demo(size, control[0], target[0], Rng(seed), !no_walk);
  for (const auto& ev : r.events) std::cout << ev.dump() << "\n";
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"observable", c.name}, {"code", c.code}, {"cnot", c.oracle}});
  std::cout << json{{"result", "cnot"},
                    {"control", std::string(1, r.control)},
                    {"target", std::string(1, r.target)},
                    {"walked", !no_walk},
                    {"code_space_kept", r.code_space_kept},
                    {"matches_cnot", r.matches},
                    {"checks", checks}}
                   .dump()
            << "\n";
  if (!r.code_space_kept) return kRuntime;
  return r.matches || no_walk ? 0 : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar surface code workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kCodeVersion);

  SweepFlags threshold_flags;
  auto* threshold = app.add_subcommand("threshold", "Monte Carlo threshold sweep");
  add_sweep_flags(threshold, threshold_flags);

  SweepFlags lifetime_flags;
  auto* lifetime = app.add_subcommand("lifetime", "thermal memory lifetimes");
  add_sweep_flags(lifetime, lifetime_flags);
  lifetime->add_option("--per-trial", lifetime_flags.per_trial, "per-trial CSV output file");

  std::string syndrome_path;
  std::optional<int> decode_distance;
  auto* decode_cmd = app.add_subcommand("decode", "decode one syndrome with minimum-weight matching");
  decode_cmd->add_option("--syndrome", syndrome_path, "syndrome JSON")->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("--distance", decode_distance, "code distance (overrides the file)")
      ->check(CLI::Range(2, 1000));

  int braid_size = 9;
  std::string control = "+";
  std::string target = "0";
  std::uint64_t braid_seed = 1;
  bool no_walk = false;
  auto* braid = app.add_subcommand("braid-demo", "CNOT by braiding a smooth hole around a rough hole");
  braid->add_option("--size", braid_size, "code distance (at least 8)")->capture_default_str()->check(CLI::Range(8, 40));
  braid->add_option("--control", control, "control input: 0, 1, + or -")->capture_default_str()
      ->check(CLI::IsMember({"0", "1", "+", "-"}));
  braid->add_option("--target", target, "target input: 0, 1, + or -")->capture_default_str()
      ->check(CLI::IsMember({"0", "1", "+", "-"}));
  braid->add_option("--seed", braid_seed, "measurement seed")->capture_default_str();
  braid->add_flag("--no-walk", no_walk, "leave the smooth hole in place (control run)");

  int describe_distance = 3;
  auto* describe = app.add_subcommand("describe", "dump the code layout as JSON");
  describe->add_option("--distance", describe_distance, "code distance")->capture_default_str()->check(CLI::Range(2, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*threshold) return run_threshold(threshold_flags);
    if (*lifetime) return run_lifetime(lifetime_flags);
    if (*decode_cmd) return run_decode(syndrome_path, decode_distance);
    if (*braid) return run_braid(braid_size, control, target, braid_seed, no_walk);
    if (*describe) {
      std::cout << CodeLayout::planar(describe_distance).to_json().dump(2) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
