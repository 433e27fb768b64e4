#include <stdexcept>

#include "planar/blossom.hpp"
#include "planar/thermal.hpp"

namespace planar::thermal {

namespace {

int torus_gap(int a, int b, int L) {
  const int d = ((b - a) % L + L) % L;
  return std::min(d, L - d);
}

}  // namespace

std::vector<int> toric_correction(const ClassicalSystem& system) {
  const auto* spec = std::get_if<ToricCode>(&system.spec());
  if (!spec) throw std::invalid_argument("toric readout needs a toric-code system");
  const int L = spec->L;
  const auto defects = system.defects();
  const int k = static_cast<int>(defects.size());
  std::vector<int> edges;
  if (k == 0) return edges;
  std::vector<WeightedEdge> graph;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const int a = defects[static_cast<std::size_t>(i)];
      const int b = defects[static_cast<std::size_t>(j)];
      graph.push_back({i, j, torus_gap(a / L, b / L, L) + torus_gap(a % L, b % L, L)});
    }
  }
  const auto mate = min_weight_perfect_matching(k, graph);
  for (int i = 0; i < k; ++i) {
    const int j = mate[static_cast<std::size_t>(i)];
    if (j < i) continue;
    int r = defects[static_cast<std::size_t>(i)] / L;
    int c = defects[static_cast<std::size_t>(i)] % L;
    const int rb = defects[static_cast<std::size_t>(j)] / L;
    const int cb = defects[static_cast<std::size_t>(j)] % L;
    // Down (or up) through horizontal edges, then right (or left) through
    // vertical edges, whichever way round the torus is shorter.
    const int dr = ((rb - r) % L + L) % L;
    const bool down = dr <= L - dr;
    for (int s = 0; s < (down ? dr : L - dr); ++s) {
      if (down) {
        r = (r + 1) % L;
        edges.push_back(r * L + c);
      } else {
        edges.push_back(r * L + c);
        r = (r - 1 + L) % L;
      }
    }
    const int dc = ((cb - c) % L + L) % L;
    const bool right = dc <= L - dc;
    for (int s = 0; s < (right ? dc : L - dc); ++s) {
      if (right) {
        c = (c + 1) % L;
        edges.push_back(L * L + r * L + c);
      } else {
        edges.push_back(L * L + r * L + c);
        c = (c - 1 + L) % L;
      }
    }
  }
  return edges;
}

bool toric_readout_fails(const ClassicalSystem& system) {
  const int L = linear_size(system.spec());
  std::vector<std::int8_t> s = system.spins();
  for (int e : toric_correction(system)) s[static_cast<std::size_t>(e)] = static_cast<std::int8_t>(-s[static_cast<std::size_t>(e)]);
  // Error plus correction is a closed dual loop; it is non-trivial iff it
  // crosses row 0's horizontal edges or column 0's vertical edges oddly.
  int row = 1;
  int col = 1;
  for (int c = 0; c < L; ++c) row *= s[static_cast<std::size_t>(c)];
  for (int r = 0; r < L; ++r) col *= s[static_cast<std::size_t>(L * L + r * L)];
  return row < 0 || col < 0;
}

}  // namespace planar::thermal
