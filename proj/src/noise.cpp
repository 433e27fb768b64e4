#include "planar/noise.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace planar {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(fmt::format("{} must lie in [0, 1], got {}", name, p));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void add_independent(PauliFrame& f, double px, double pz, Rng& rng) {
  const auto n = static_cast<std::size_t>(f.num_qubits());
  for (std::size_t q = 0; q < n; ++q) {
    if (rng.bernoulli(px)) f.x_part().flip(q);
    if (rng.bernoulli(pz)) f.z_part().flip(q);
  }
}

BitVec bernoulli_mask(std::size_t n, double p, Rng& rng) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.bernoulli(p)) v.set(i);
  return v;
}

}  // namespace

void validate(const NoiseModel& model) {
  std::visit(Overloaded{
                 [](const IndependentXZ& m) {
                   check_probability(m.p, "p");
                   check_probability(m.p_prime, "p_prime");
                 },
                 [](const Depolarizing& m) { check_probability(m.p, "p"); },
                 [](const Phenomenological& m) {
                   check_probability(m.p, "p");
                   check_probability(m.q, "q");
                   if (m.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
                 },
             },
             model);
}

std::string describe(const NoiseModel& model) {
  return std::visit(Overloaded{
                        [](const IndependentXZ& m) { return fmt::format("independent_xz(p={}, p'={})", m.p, m.p_prime); },
                        [](const Depolarizing& m) { return fmt::format("depolarizing(p={})", m.p); },
                        [](const Phenomenological& m) {
                          return fmt::format("phenomenological(p={}, q={}, rounds={})", m.p, m.q, m.rounds);
                        },
                    },
                    model);
}

nlohmann::json to_json(const NoiseModel& model) {
  return std::visit(Overloaded{
                        [](const IndependentXZ& m) {
                          return nlohmann::json{{"model", "independent_xz"}, {"p", m.p}, {"p_prime", m.p_prime}};
                        },
                        [](const Depolarizing& m) { return nlohmann::json{{"model", "depolarizing"}, {"p", m.p}}; },
                        [](const Phenomenological& m) {
                          return nlohmann::json{{"model", "phenomenological"}, {"p", m.p}, {"q", m.q}, {"rounds", m.rounds}};
                        },
                    },
                    model);
}

NoiseModel noise_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("model").get<std::string>();
  NoiseModel m;
  if (kind == "independent_xz") {
    m = IndependentXZ{j.at("p").get<double>(), j.value("p_prime", 0.0)};
  } else if (kind == "depolarizing") {
    m = Depolarizing{j.at("p").get<double>()};
  } else if (kind == "phenomenological") {
    const double p = j.at("p").get<double>();
    m = Phenomenological{p, j.value("q", p), j.value("rounds", 1)};
  } else {
    throw std::invalid_argument("unknown noise model '" + kind + "'");
  }
  validate(m);
  return m;
}

double flip_probability(double gamma, double t) {
  if (gamma < 0.0 || t < 0.0) throw std::invalid_argument("flip probability needs gamma >= 0 and t >= 0");
  return -std::expm1(-gamma * t) / 2.0;
}

NoiseSample sample(const NoiseModel& model, const CodeLayout& layout, Rng& rng) {
  validate(model);
  const int n = layout.num_qubits();
  NoiseSample out{PauliFrame(n), {}};
  std::visit(Overloaded{
                 [&](const IndependentXZ& m) { add_independent(out.frame, m.p, m.p_prime, rng); },
                 [&](const Depolarizing& m) {
                   for (std::size_t q = 0; q < static_cast<std::size_t>(n); ++q) {
                     const double u = rng.uniform();
                     if (u >= m.p) continue;
                     // [0, p/3) x, [p/3, 2p/3) y, [2p/3, p) z
                     const double third = m.p / 3.0;
                     if (u < 2.0 * third) out.frame.x_part().set(q);
                     if (u >= third) out.frame.z_part().set(q);
                   }
                 },
                 [&](const Phenomenological& m) {
                   const auto np = static_cast<std::size_t>(layout.num_stabilizers(StabilizerType::Plaquette));
                   const auto nv = static_cast<std::size_t>(layout.num_stabilizers(StabilizerType::Vertex));
                   out.rounds.reserve(static_cast<std::size_t>(m.rounds));
                   for (int r = 0; r < m.rounds; ++r) {
                     RoundFaults faults{PauliFrame(n), {}, {}};
                     add_independent(faults.data_increment, m.p, m.p, rng);
                     faults.plaquette_flips = bernoulli_mask(np, m.q, rng);
                     faults.vertex_flips = bernoulli_mask(nv, m.q, rng);
                     out.frame ^= faults.data_increment;
                     out.rounds.push_back(std::move(faults));
                   }
                 },
             },
             model);
  return out;
}

Syndrome measured_syndrome(const NoiseSample& s, const CodeLayout& layout) {
  Syndrome out;
  const int n = layout.num_qubits();
  PauliFrame accumulated(n);
  BitVec prev_m(static_cast<std::size_t>(layout.num_stabilizers(StabilizerType::Plaquette)));
  BitVec prev_e(static_cast<std::size_t>(layout.num_stabilizers(StabilizerType::Vertex)));
  auto push_round = [&](const BitVec& meas_m, const BitVec& meas_e) {
    out.rounds.push_back({(meas_m ^ prev_m).indices(), (meas_e ^ prev_e).indices()});
    prev_m = meas_m;
    prev_e = meas_e;
  };
  for (const auto& r : s.rounds) {
    accumulated ^= r.data_increment;
    push_round(plaquette_defects(accumulated.x_part(), layout) ^ r.plaquette_flips,
               vertex_defects(accumulated.z_part(), layout) ^ r.vertex_flips);
  }
  const BitVec final_m = plaquette_defects(accumulated.x_part(), layout);
  const BitVec final_e = vertex_defects(accumulated.z_part(), layout);
  push_round(final_m, final_e);
  out.m_defects = final_m.indices();
  out.e_defects = final_e.indices();
  return out;
}

}  // namespace planar
