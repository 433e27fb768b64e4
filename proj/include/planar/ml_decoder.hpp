#pragma once

#include "planar/decoder.hpp"

namespace planar {

/// Maximum-likelihood decoding by enumerating every error pattern of each
/// species (2^n patterns, so d <= 3). Each species is treated as independent
/// flips with probability p; the coset (stabilizer class times logical class)
/// with the largest total probability wins and its lightest member is
/// returned. Pairings are left empty. Throws std::invalid_argument for d > 3.
Correction ml_decode(const Syndrome& syndrome, const CodeLayout& layout, double p);

/// Exact logical failure probabilities for independent sigma^x flips with
/// probability p, summed over all 2^n patterns rather than sampled.
struct ExactFailure {
  double ml = 0.0;
  double mwpm = 0.0;
};
ExactFailure exact_failure_probability(const CodeLayout& layout, double p);

}  // namespace planar
