#include "planar/ml_decoder.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace planar {

namespace {

constexpr int kMaxQubits = 20;

// Per-qubit syndrome masks for one species, as integers over the stabilizers.
struct SpeciesTables {
  int n = 0;
  std::vector<std::uint32_t> syndrome_mask;  // per qubit
  std::uint32_t logical_mask = 0;            // qubits on the logical string it anticommutes with
};

SpeciesTables tables_for(const CodeLayout& layout, StabilizerType t) {
  SpeciesTables s;
  s.n = layout.num_qubits();
  if (layout.distance() > 3 || s.n > kMaxQubits || layout.has_holes()) {
    throw std::invalid_argument("maximum-likelihood decoding is limited to hole-free codes with d <= 3");
  }
  s.syndrome_mask.assign(static_cast<std::size_t>(s.n), 0);
  for (int q = 0; q < s.n; ++q)
    for (int st : layout.adjacent(t, q)) s.syndrome_mask[static_cast<std::size_t>(q)] ^= 1u << st;
  const auto& logical = t == StabilizerType::Plaquette ? layout.logical_z() : layout.logical_x();
  for (int q : logical) s.logical_mask |= 1u << q;
  return s;
}

std::uint32_t syndrome_key(const SpeciesTables& s, std::uint32_t pattern) {
  std::uint32_t key = 0;
  while (pattern) {
    key ^= s.syndrome_mask[static_cast<std::size_t>(std::countr_zero(pattern))];
    pattern &= pattern - 1;
  }
  return key;
}

bool logical_class(const SpeciesTables& s, std::uint32_t pattern) { return std::popcount(pattern & s.logical_mask) & 1; }

double pattern_probability(int n, std::uint32_t pattern, double p) {
  const int w = std::popcount(pattern);
  return std::pow(p, w) * std::pow(1.0 - p, n - w);
}

struct Coset {
  double prob[2] = {0.0, 0.0};
  std::uint32_t best[2] = {0, 0};
  bool seen[2] = {false, false};
};

std::unordered_map<std::uint32_t, Coset> enumerate(const SpeciesTables& s, double p) {
  std::unordered_map<std::uint32_t, Coset> out;
  const std::uint32_t total = 1u << s.n;
  for (std::uint32_t e = 0; e < total; ++e) {
    auto& c = out[syndrome_key(s, e)];
    const int l = logical_class(s, e);
    c.prob[l] += pattern_probability(s.n, e, p);
    if (!c.seen[l] || std::popcount(e) < std::popcount(c.best[l])) {
      c.best[l] = e;
      c.seen[l] = true;
    }
  }
  return out;
}

std::uint32_t ml_pattern(const SpeciesTables& s, const std::vector<int>& defects, double p) {
  std::uint32_t key = 0;
  for (int d : defects) key |= 1u << d;
  // Only patterns with the target syndrome matter; scan them directly.
  Coset c;
  const std::uint32_t total = 1u << s.n;
  for (std::uint32_t e = 0; e < total; ++e) {
    if (syndrome_key(s, e) != key) continue;
    const int l = logical_class(s, e);
    c.prob[l] += pattern_probability(s.n, e, p);
    if (!c.seen[l] || std::popcount(e) < std::popcount(c.best[l])) {
      c.best[l] = e;
      c.seen[l] = true;
    }
  }
  if (!c.seen[0] && !c.seen[1]) throw std::invalid_argument("syndrome is not produced by any error");
  if (!c.seen[1] || (c.seen[0] && c.prob[0] >= c.prob[1])) return c.best[0];
  return c.best[1];
}

}  // namespace

Correction ml_decode(const Syndrome& syndrome, const CodeLayout& layout, double p) {
  const auto sm = tables_for(layout, StabilizerType::Plaquette);
  const auto se = tables_for(layout, StabilizerType::Vertex);
  const std::uint32_t x = ml_pattern(sm, syndrome.m_defects, p);
  const std::uint32_t z = ml_pattern(se, syndrome.e_defects, p);
  Correction c{PauliFrame(layout.num_qubits()), {}, {}, 0};
  for (int q = 0; q < sm.n; ++q) {
    if ((x >> q) & 1u) c.frame.x_part().set(static_cast<std::size_t>(q));
    if ((z >> q) & 1u) c.frame.z_part().set(static_cast<std::size_t>(q));
  }
  c.total_weight = std::popcount(x) + std::popcount(z);
  return c;
}

ExactFailure exact_failure_probability(const CodeLayout& layout, double p) {
  const auto s = tables_for(layout, StabilizerType::Plaquette);
  const auto cosets = enumerate(s, p);
  ExactFailure f;
  for (const auto& [key, c] : cosets) {
    f.ml += std::min(c.prob[0], c.prob[1]);
    std::vector<Defect> defects;
    for (int b = 0; b < 32; ++b)
      if ((key >> b) & 1u) defects.push_back({b, 0});
    PauliFrame corr(layout.num_qubits());
    apply_pairing(match_defects(defects, StabilizerType::Plaquette, layout), StabilizerType::Plaquette, layout, corr);
    std::uint32_t pattern = 0;
    corr.x_part().for_each_set([&](std::size_t q) { pattern |= 1u << q; });
    f.mwpm += c.prob[logical_class(s, pattern) ? 0 : 1];
  }
  return f;
}

}  // namespace planar
