#include "planar/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "planar/decoder.hpp"

namespace planar {

using nlohmann::json;

ConfigError::ConfigError(int line, const std::string& message, const std::string& source)
    : std::runtime_error(source.empty() ? (line > 0 ? fmt::format("line {}: {}", line, message) : message)
                                        : (line > 0 ? fmt::format("{}:{}: {}", source, line, message)
                                                    : fmt::format("{}: {}", source, message))),
      line_(line),
      detail_(message) {}

namespace {

// Config fields are looked up by key text; nested keys are searched for
// after their parent, which is right for the documents this tool reads.
class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  int line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    for (const auto& key : path) {
      const auto found = text_.find("\"" + key + "\"", pos);
      if (found == std::string::npos) return 0;
      pos = found;
    }
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& message) const {
    throw ConfigError(line_of(path), message);
  }

  static std::string dotted(const std::vector<std::string>& path) {
    std::string s;
    for (const auto& k : path) s += (s.empty() ? "" : ".") + k;
    return s;
  }

  void only_keys(const json& obj, const std::vector<std::string>& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(path, fmt::format("'{}' must be an object", dotted(path)));
    for (const auto& [k, v] : obj.items()) {
      if (!allowed.count(k)) {
        auto p = path;
        p.push_back(k);
        fail(p, fmt::format("unknown field '{}'", dotted(p)));
      }
    }
  }

  double number(const json& v, const std::vector<std::string>& path) const {
    if (!v.is_number()) fail(path, fmt::format("'{}' must be a number", dotted(path)));
    return v.get<double>();
  }

  std::int64_t integer(const json& v, const std::vector<std::string>& path) const {
    if (!v.is_number_integer()) fail(path, fmt::format("'{}' must be an integer", dotted(path)));
    return v.get<std::int64_t>();
  }

  std::string string(const json& v, const std::vector<std::string>& path) const {
    if (!v.is_string()) fail(path, fmt::format("'{}' must be a string", dotted(path)));
    return v.get<std::string>();
  }

  bool boolean(const json& v, const std::vector<std::string>& path) const {
    if (!v.is_boolean()) fail(path, fmt::format("'{}' must be true or false", dotted(path)));
    return v.get<bool>();
  }

  std::vector<int> int_list(const json& v, const std::vector<std::string>& path) const {
    if (!v.is_array()) fail(path, fmt::format("'{}' must be a list of integers", dotted(path)));
    std::vector<int> out;
    for (const auto& e : v) out.push_back(static_cast<int>(integer(e, path)));
    return out;
  }

  // A list, a single number, or {"start", "stop", "step"}.
  std::vector<double> number_grid(const json& v, const std::vector<std::string>& path) const {
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array()) {
      std::vector<double> out;
      for (const auto& e : v) out.push_back(number(e, path));
      return out;
    }
    if (v.is_object()) {
      only_keys(v, path, {"start", "stop", "step"});
      for (const char* k : {"start", "stop", "step"}) {
        if (!v.contains(k)) fail(path, fmt::format("'{}' needs '{}'", dotted(path), k));
      }
      auto sub = [&](const char* k) {
        auto p = path;
        p.push_back(k);
        return number(v.at(k), p);
      };
      const double step = sub("step");
      if (!(step > 0)) fail(path, fmt::format("'{}.step' must be positive", dotted(path)));
      if (sub("stop") < sub("start")) fail(path, fmt::format("'{}.stop' is below start", dotted(path)));
      return grid(sub("start"), sub("stop"), step);
    }
    fail(path, fmt::format("'{}' must be a number, a list or {{start, stop, step}}", dotted(path)));
  }

 private:
  const std::string& text_;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void check_probability(const Reader& r, double v, const std::vector<std::string>& path) {
  if (!(v >= 0.0 && v <= 1.0)) r.fail(path, fmt::format("'{}' must lie in [0, 1], got {}", Reader::dotted(path), v));
}

}  // namespace

std::vector<double> grid(double start, double stop, double step) {
  if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long i = 0; i < n; ++i) out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte > 0 ? byte - 1 : 0), '\n'));
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError(line, "invalid JSON: " + what);
  }
  Reader r(text);
  if (!j.is_object()) throw ConfigError(1, "config must be a JSON object");
  r.only_keys(j, {}, {"experiment", "distances", "noise", "trials", "seed", "workers", "output", "system", "sizes",
                      "beta", "horizon"});
  if (!j.contains("experiment")) throw ConfigError(1, "missing field 'experiment'");
  const std::string kind = r.string(j["experiment"], {"experiment"});

  ExperimentConfig cfg;
  if (j.contains("seed")) {
    const auto s = r.integer(j["seed"], {"seed"});
    if (s < 0) r.fail({"seed"}, "'seed' must not be negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("workers")) cfg.workers = static_cast<int>(r.integer(j["workers"], {"workers"}));
  if (j.contains("output")) {
    const auto& o = j["output"];
    r.only_keys(o, {"output"}, {"path", "format", "per_trial", "wall_time"});
    if (o.contains("path")) cfg.output.path = r.string(o["path"], {"output", "path"});
    if (o.contains("format")) cfg.output.format = r.string(o["format"], {"output", "format"});
    if (o.contains("per_trial")) cfg.output.per_trial_path = r.string(o["per_trial"], {"output", "per_trial"});
    if (o.contains("wall_time")) cfg.output.wall_time = r.boolean(o["wall_time"], {"output", "wall_time"});
    if (cfg.output.format != "csv" && cfg.output.format != "json")
      r.fail({"output", "format"}, "'output.format' must be \"csv\" or \"json\"");
  }
  std::uint64_t trials = 0;
  if (j.contains("trials")) {
    const auto t = r.integer(j["trials"], {"trials"});
    if (t < 1) r.fail({"trials"}, "'trials' must be at least 1");
    trials = static_cast<std::uint64_t>(t);
  }

  auto refuse = [&](const char* key) {
    if (j.contains(key)) r.fail({key}, fmt::format("field '{}' does not apply to a {} experiment", key, kind));
  };

  if (kind == "threshold") {
    for (const char* k : {"system", "sizes", "beta", "horizon"}) refuse(k);
    ThresholdConfig t;
    if (trials) t.trials = trials;
    if (!j.contains("distances")) throw ConfigError(1, "missing field 'distances'");
    t.distances = r.int_list(j["distances"], {"distances"});
    for (int d : t.distances)
      if (d < 2) r.fail({"distances"}, fmt::format("distance {} is below 2", d));
    if (!j.contains("noise")) throw ConfigError(1, "missing field 'noise'");
    const auto& n = j["noise"];
    r.only_keys(n, {"noise"}, {"model", "p", "p_prime", "q", "rounds"});
    if (n.contains("model")) t.model = r.string(n["model"], {"noise", "model"});
    if (t.model != "independent_xz" && t.model != "depolarizing" && t.model != "phenomenological")
      r.fail({"noise", "model"}, fmt::format("unknown noise model '{}'", t.model));
    if (!n.contains("p")) r.fail({"noise"}, "missing field 'noise.p'");
    t.p_values = r.number_grid(n["p"], {"noise", "p"});
    for (double p : t.p_values) check_probability(r, p, {"noise", "p"});
    if (n.contains("p_prime")) {
      if (t.model != "independent_xz") r.fail({"noise", "p_prime"}, "'noise.p_prime' only applies to independent_xz");
      t.p_prime = r.number(n["p_prime"], {"noise", "p_prime"});
      check_probability(r, t.p_prime, {"noise", "p_prime"});
    }
    for (const char* k : {"q", "rounds"}) {
      if (n.contains(k) && t.model != "phenomenological")
        r.fail({"noise", k}, fmt::format("'noise.{}' only applies to phenomenological", k));
    }
    if (n.contains("q")) {
      t.q = r.number(n["q"], {"noise", "q"});
      check_probability(r, *t.q, {"noise", "q"});
    }
    if (n.contains("rounds")) {
      t.rounds = static_cast<int>(r.integer(n["rounds"], {"noise", "rounds"}));
      if (*t.rounds < 1) r.fail({"noise", "rounds"}, "'noise.rounds' must be at least 1");
    }
    cfg.body = t;
  } else if (kind == "lifetime") {
    for (const char* k : {"distances", "noise"}) refuse(k);
    LifetimeConfig l;
    if (trials) l.trials = trials;
    if (!j.contains("system")) throw ConfigError(1, "missing field 'system'");
    const auto& s = j["system"];
    r.only_keys(s, {"system"}, {"kind", "periodic", "J", "J_s", "J_p"});
    if (s.contains("kind")) l.system = r.string(s["kind"], {"system", "kind"});
    if (l.system != "ising1d" && l.system != "ising2d" && l.system != "toric")
      r.fail({"system", "kind"}, fmt::format("unknown system '{}'", l.system));
    if (s.contains("periodic")) l.periodic = r.boolean(s["periodic"], {"system", "periodic"});
    if (s.contains("J")) l.J = r.number(s["J"], {"system", "J"});
    if (s.contains("J_s")) l.J_s = r.number(s["J_s"], {"system", "J_s"});
    if (s.contains("J_p")) l.J_p = r.number(s["J_p"], {"system", "J_p"});
    if (!j.contains("sizes")) throw ConfigError(1, "missing field 'sizes'");
    l.sizes = r.int_list(j["sizes"], {"sizes"});
    for (int L : l.sizes)
      if (L < 2) r.fail({"sizes"}, fmt::format("size {} is below 2", L));
    if (!j.contains("beta")) throw ConfigError(1, "missing field 'beta'");
    l.betas = r.number_grid(j["beta"], {"beta"});
    for (double b : l.betas)
      if (!(b > 0)) r.fail({"beta"}, "'beta' values must be positive");
    if (j.contains("horizon")) {
      l.horizon = r.number(j["horizon"], {"horizon"});
      if (!(l.horizon > 0)) r.fail({"horizon"}, "'horizon' must be positive");
    }
    cfg.body = l;
  } else {
    r.fail({"experiment"}, fmt::format("unknown experiment '{}' (expected threshold or lifetime)", kind));
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, "cannot read config", path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.line(), e.detail(), path);
  }
}

void validate(const ExperimentConfig& config) {
  if (config.workers < 1) throw ConfigError(0, "workers must be at least 1");
  if (config.output.format != "csv" && config.output.format != "json")
    throw ConfigError(0, "output format must be csv or json");
  if (const auto* t = std::get_if<ThresholdConfig>(&config.body)) {
    if (t->distances.empty()) throw ConfigError(0, "distance list is empty");
    if (t->p_values.empty()) throw ConfigError(0, "p grid is empty");
    if (t->trials < 1) throw ConfigError(0, "trials must be at least 1");
    for (int d : t->distances)
      if (d < 2) throw ConfigError(0, fmt::format("distance {} is below 2", d));
  } else {
    const auto& l = std::get<LifetimeConfig>(config.body);
    if (l.sizes.empty()) throw ConfigError(0, "size list is empty");
    if (l.betas.empty()) throw ConfigError(0, "beta grid is empty");
    if (l.trials < 1) throw ConfigError(0, "trials must be at least 1");
    if (!(l.horizon > 0)) throw ConfigError(0, "horizon must be positive");
  }
}

json ExperimentConfig::to_json() const {
  json j{{"experiment", kind()}, {"seed", seed}};
  if (const auto* t = std::get_if<ThresholdConfig>(&body)) {
    json noise{{"model", t->model}, {"p", t->p_values}};
    if (t->model == "independent_xz") noise["p_prime"] = t->p_prime;
    if (t->q) noise["q"] = *t->q;
    if (t->rounds) noise["rounds"] = *t->rounds;
    j["distances"] = t->distances;
    j["noise"] = noise;
    j["trials"] = t->trials;
  } else {
    const auto& l = std::get<LifetimeConfig>(body);
    j["system"] = {{"kind", l.system}, {"periodic", l.periodic}, {"J", l.J}, {"J_s", l.J_s}, {"J_p", l.J_p}};
    j["sizes"] = l.sizes;
    j["beta"] = l.betas;
    j["trials"] = l.trials;
    j["horizon"] = l.horizon;
  }
  return j;
}

std::string ExperimentConfig::hash() const { return fmt::format("{:016x}", fnv1a(to_json().dump())); }

NoiseModel noise_for(const ThresholdConfig& config, int distance, double p) {
  if (config.model == "depolarizing") return Depolarizing{p};
  if (config.model == "phenomenological")
    return Phenomenological{p, config.q.value_or(p), config.rounds.value_or(distance)};
  return IndependentXZ{p, config.p_prime};
}

bool threshold_trial(const CodeLayout& layout, const NoiseModel& model, Rng& rng) {
  const NoiseSample s = sample(model, layout, rng);
  const Syndrome syn = std::holds_alternative<Phenomenological>(model) ? measured_syndrome(s, layout)
                                                                        : syndrome_of(s.frame, layout);
  if (syn.empty() && syn.rounds.empty()) return logical_effect(s.frame, layout).any();
  const Correction c = decode(syn, layout, model);
  return logical_effect(compose(s.frame, c.frame), layout).any();
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs body(point, trial) for every trial of every point. Worker w takes the
// w-th contiguous slice of each point's trial range, so which worker runs a
// trial never changes what it computes.
template <class Body>
void run_parallel(std::size_t points, std::uint64_t trials, int workers, std::ostream* progress,
                  const std::string& label, Body body) {
  const std::uint64_t total = points * trials;
  std::atomic<std::uint64_t> done{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto k = static_cast<std::uint64_t>(std::max(1, workers));
  auto work = [&](std::uint64_t w) {
    try {
      for (std::size_t pt = 0; pt < points && !stop; ++pt) {
        const std::uint64_t lo = trials * w / k;
        const std::uint64_t hi = trials * (w + 1) / k;
        for (std::uint64_t t = lo; t < hi && !stop; ++t) {
          body(pt, t);
          done.fetch_add(1, std::memory_order_relaxed);
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };
  std::vector<std::thread> pool;
  for (std::uint64_t w = 1; w < k; ++w) pool.emplace_back(work, w);
  std::thread reporter;
  std::atomic<bool> finished{false};
  if (progress) {
    reporter = std::thread([&] {
      auto last = Clock::now();
      while (!finished) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
        if (Clock::now() - last >= std::chrono::seconds(1)) {
          last = Clock::now();
          const auto d = done.load();
          *progress << fmt::format("{}: {}/{} trials ({:.1f}%)\n", label, d, total,
                                   total ? 100.0 * static_cast<double>(d) / static_cast<double>(total) : 100.0)
                    << std::flush;
        }
      }
    });
  }
  work(0);
  for (auto& t : pool) t.join();
  finished = true;
  if (reporter.joinable()) reporter.join();
  if (error) std::rethrow_exception(error);
  if (progress) *progress << fmt::format("{}: {}/{} trials done\n", label, total, total) << std::flush;
}

}  // namespace

ResultTable run_threshold_sweep(const ExperimentConfig& config, std::ostream* progress) {
  validate(config);
  const auto* cfg = std::get_if<ThresholdConfig>(&config.body);
  if (!cfg) throw ConfigError(0, "not a threshold config");
  std::map<int, CodeLayout> layouts;
  for (int d : cfg->distances) layouts.emplace(d, CodeLayout::planar(d));
  struct Point {
    int d;
    double p;
    NoiseModel model;
  };
  std::vector<Point> points;
  for (int d : cfg->distances) {
    for (double p : cfg->p_values) {
      NoiseModel m = noise_for(*cfg, d, p);
      planar::validate(m);
      points.push_back({d, p, m});
    }
  }
  std::vector<std::atomic<std::uint64_t>> failures(points.size());
  std::vector<std::atomic<std::int64_t>> nanos(points.size());
  run_parallel(points.size(), cfg->trials, config.workers, progress, "threshold", [&](std::size_t pt, std::uint64_t t) {
    const auto start = Clock::now();
    Rng rng(config.seed, {static_cast<std::uint64_t>(pt), t});
    const Point& P = points[pt];
    if (threshold_trial(layouts.at(P.d), P.model, rng)) failures[pt].fetch_add(1, std::memory_order_relaxed);
    nanos[pt].fetch_add(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count(),
                        std::memory_order_relaxed);
  });
  ResultTable table;
  table.meta = {"threshold", config.seed, kCodeVersion, config.hash()};
  for (std::size_t i = 0; i < points.size(); ++i) {
    ThresholdRow row;
    row.distance = points[i].d;
    row.model = cfg->model;
    row.p = points[i].p;
    if (const auto* m = std::get_if<IndependentXZ>(&points[i].model)) row.p_prime = m->p_prime;
    if (const auto* m = std::get_if<Phenomenological>(&points[i].model)) {
      row.q = m->q;
      row.rounds = m->rounds;
    }
    row.trials = cfg->trials;
    row.failures = failures[i].load();
    row.wall_seconds = static_cast<double>(nanos[i].load()) * 1e-9;
    table.rows.push_back(make_row(row));
  }
  return table;
}

thermal::SystemSpec system_for(const LifetimeConfig& config, int size) {
  if (config.system == "ising1d") return thermal::Ising1D{size, config.periodic, config.J};
  if (config.system == "ising2d") return thermal::Ising2D{size, config.periodic, config.J};
  if (config.system == "toric") return thermal::ToricCode{size, config.J_s, config.J_p};
  throw ConfigError(0, "unknown system " + config.system);
}

LifetimeTable run_lifetime_sweep(const ExperimentConfig& config, std::ostream* progress) {
  validate(config);
  const auto* cfg = std::get_if<LifetimeConfig>(&config.body);
  if (!cfg) throw ConfigError(0, "not a lifetime config");
  struct Point {
    int size;
    double beta;
  };
  std::vector<Point> points;
  for (int L : cfg->sizes)
    for (double b : cfg->betas) points.push_back({L, b});
  std::vector<std::vector<thermal::LifetimeSample>> samples(points.size(),
                                                            std::vector<thermal::LifetimeSample>(cfg->trials));
  std::vector<std::atomic<std::int64_t>> nanos(points.size());
  run_parallel(points.size(), cfg->trials, config.workers, progress, "lifetime", [&](std::size_t pt, std::uint64_t t) {
    const auto start = Clock::now();
    Rng rng(config.seed, {static_cast<std::uint64_t>(pt), t});
    thermal::LifetimeOptions opt;
    opt.beta = points[pt].beta;
    opt.horizon = cfg->horizon;
    samples[pt][t] = thermal::lifetime_trial(system_for(*cfg, points[pt].size), opt, rng);
    nanos[pt].fetch_add(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count(),
                        std::memory_order_relaxed);
  });
  LifetimeTable table;
  table.meta = {"lifetime", config.seed, kCodeVersion, config.hash()};
  for (std::size_t i = 0; i < points.size(); ++i) {
    LifetimeRow row;
    row.system = cfg->system;
    row.size = points[i].size;
    row.beta = points[i].beta;
    row.trials = cfg->trials;
    for (const auto& s : samples[i]) {
      row.times.push_back(s.time);
      row.trial_censored.push_back(s.censored);
      row.censored += s.censored ? 1 : 0;
    }
    row.median = median(row.times);
    row.mean = mean(row.times);
    row.wall_seconds = static_cast<double>(nanos[i].load()) * 1e-9;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace planar
