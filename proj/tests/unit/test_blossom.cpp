#include <algorithm>
#include <limits>

#include <gtest/gtest.h>

#include "planar/blossom.hpp"
#include "planar/rng.hpp"

using namespace planar;

namespace {

// Exhaustive minimum over all perfect matchings; max int64 if none.
std::int64_t brute_force(int n, const std::vector<WeightedEdge>& edges) {
  constexpr auto inf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::vector<std::int64_t>> w(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), inf));
  for (const auto& e : edges) {
    auto& cell = w[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)];
    cell = std::min(cell, e.weight);
    w[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = cell;
  }
  std::vector<std::int64_t> best(std::size_t{1} << n, inf);
  best[0] = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (best[mask] == inf) continue;
    int i = 0;
    while (i < n && (mask >> i & 1)) ++i;
    if (i == n) continue;
    for (int j = i + 1; j < n; ++j) {
      if (mask >> j & 1) continue;
      const auto c = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c == inf) continue;
      auto& nb = best[mask | (1u << i) | (1u << j)];
      nb = std::min(nb, best[mask] + c);
    }
  }
  return best[(std::size_t{1} << n) - 1];
}

}  // namespace

TEST(Blossom, MatchesBruteForceOnRandomGraphs) {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 2 * static_cast<int>(1 + rng.below(6));
    const double density = 0.3 + 0.7 * rng.uniform();
    const auto wmax = static_cast<std::uint64_t>(1 + rng.below(30));
    std::vector<WeightedEdge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(density)) edges.push_back({u, v, static_cast<std::int64_t>(rng.below(wmax + 1))});
    const auto expect = brute_force(n, edges);
    if (expect == std::numeric_limits<std::int64_t>::max()) {
      EXPECT_THROW(min_weight_perfect_matching(n, edges), std::invalid_argument);
      continue;
    }
    const auto mate = min_weight_perfect_matching(n, edges);
    for (int v = 0; v < n; ++v) ASSERT_EQ(mate[static_cast<std::size_t>(mate[static_cast<std::size_t>(v)])], v);
    ASSERT_EQ(matching_weight(mate, edges), expect) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(Blossom, DeterministicForEqualInputs) {
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < 8; ++u)
    for (int v = u + 1; v < 8; ++v) edges.push_back({u, v, 1});
  EXPECT_EQ(min_weight_perfect_matching(8, edges), min_weight_perfect_matching(8, edges));
}

TEST(Blossom, ParallelEdgesKeepLightest) {
  const auto mate = min_weight_perfect_matching(4, {{0, 1, 9}, {0, 1, 1}, {2, 3, 0}, {0, 2, 3}, {1, 3, 3}});
  EXPECT_EQ(mate, (std::vector<int>{1, 0, 3, 2}));
}

TEST(Blossom, OddCycleNeedsBlossom) {
  // Triangle 0-1-2 with a pendant 3 on node 2 plus a cheap path that only a
  // blossom contraction finds.
  const std::vector<WeightedEdge> edges{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 10}, {0, 3, 2}, {4, 5, 1}, {3, 4, 1}};
  const auto mate = min_weight_perfect_matching(6, edges);
  EXPECT_EQ(matching_weight(mate, edges), brute_force(6, edges));
}

TEST(Blossom, Errors) {
  EXPECT_THROW(min_weight_perfect_matching(3, {{0, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(min_weight_perfect_matching(2, {{0, 1, -1}}), std::invalid_argument);
  EXPECT_THROW(min_weight_perfect_matching(2, {{0, 2, 1}}), std::out_of_range);
  EXPECT_THROW(min_weight_perfect_matching(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}), std::invalid_argument);
  EXPECT_TRUE(min_weight_perfect_matching(0, {}).empty());
}
