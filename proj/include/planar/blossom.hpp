#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace planar {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

/// Minimum-weight perfect matching by Edmonds' blossom algorithm (primal-dual
/// with blossom shrinking and expansion), O(n^3) on a dense weight matrix.
///
/// Edges not listed are absent. Parallel edges keep the lightest weight.
/// Returns mate[v] for every node. Throws std::invalid_argument if the node
/// count is odd, a weight is negative, or no perfect matching exists.
///
/// The result depends only on the node numbering and edge weights, so equal
/// inputs always produce equal matchings.
std::vector<int> min_weight_perfect_matching(int num_nodes, const std::vector<WeightedEdge>& edges);

/// Sum of the weights of the matched edges.
std::int64_t matching_weight(const std::vector<int>& mate, const std::vector<WeightedEdge>& edges);

}  // namespace planar
