#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "planar/layout.hpp"
#include "planar/pauli_frame.hpp"
#include "planar/rng.hpp"

namespace planar {

/// Independent sigma^x errors with probability p and sigma^z errors with
/// probability p_prime on every qubit.
struct IndependentXZ {
  double p = 0.0;
  double p_prime = 0.0;
};

/// sigma^x, sigma^y, sigma^z each with probability p/3.
struct Depolarizing {
  double p = 0.0;
};

/// `rounds` noisy syndrome rounds. Each round adds independent sigma^x and
/// sigma^z data errors with probability p and then flips each measured
/// stabilizer outcome with probability q. A perfect final round follows.
struct Phenomenological {
  double p = 0.0;
  double q = 0.0;
  int rounds = 1;
};

using NoiseModel = std::variant<IndependentXZ, Depolarizing, Phenomenological>;

/// Throws std::invalid_argument on probabilities outside [0, 1] or rounds < 1.
void validate(const NoiseModel& model);
std::string describe(const NoiseModel& model);
nlohmann::json to_json(const NoiseModel& model);
NoiseModel noise_from_json(const nlohmann::json& j);

/// Probability of a net flip after time t under flips at rate gamma:
/// (1 - exp(-gamma t)) / 2.
double flip_probability(double gamma, double t);

struct RoundFaults {
  PauliFrame data_increment;
  BitVec plaquette_flips;
  BitVec vertex_flips;
};

/// `frame` is the accumulated data error. For the phenomenological model
/// `rounds` has one entry per noisy round (the perfect final round carries no
/// faults and is not listed).
struct NoiseSample {
  PauliFrame frame;
  std::vector<RoundFaults> rounds;
};

NoiseSample sample(const NoiseModel& model, const CodeLayout& layout, Rng& rng);

/// Detection-event syndrome of a phenomenological sample: rounds[t] holds the
/// stabilizers whose measured value changed in round t (t = 0..R, the last one
/// being the perfect round); m_defects/e_defects hold the true final syndrome.
Syndrome measured_syndrome(const NoiseSample& sample, const CodeLayout& layout);

}  // namespace planar
