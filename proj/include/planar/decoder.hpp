#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "planar/blossom.hpp"
#include "planar/layout.hpp"
#include "planar/noise.hpp"
#include "planar/pauli_frame.hpp"

namespace planar {

/// A defect on a stabilizer, with the measurement round for repeated
/// measurement (0 otherwise).
struct Defect {
  int stabilizer = 0;
  int round = 0;
  friend bool operator==(const Defect&, const Defect&) = default;
  friend auto operator<=>(const Defect&, const Defect&) = default;
};

/// Nodes 0..k-1 are the defects, node k+i is the virtual boundary partner of
/// defect i. Defect-defect weights are lattice distances plus the round
/// separation, defect i to node k+i is its boundary distance, and boundary
/// nodes are joined to each other at weight 0.
struct MatchingGraph {
  StabilizerType type = StabilizerType::Plaquette;
  std::vector<Defect> defects;
  std::vector<WeightedEdge> edges;

  int num_defects() const { return static_cast<int>(defects.size()); }
  int num_nodes() const { return 2 * num_defects(); }
  bool is_boundary(int node) const { return node >= num_defects(); }
};

/// Defect `a` matched to defect `b`, or to the boundary when b is empty.
struct MatchedPair {
  Defect a;
  std::optional<Defect> b;
  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Correction {
  PauliFrame frame;
  std::vector<MatchedPair> m_pairing;  // plaquette defects, fixed by sigma^x
  std::vector<MatchedPair> e_pairing;  // vertex defects, fixed by sigma^z
  std::int64_t total_weight = 0;
};

/// Defects of one species. With rounds present each round's detection events
/// are used; otherwise the final syndrome, all in round 0.
std::vector<Defect> defects_of(const Syndrome& syndrome, StabilizerType type);

MatchingGraph build_graph(const std::vector<Defect>& defects, StabilizerType type, const CodeLayout& layout);
/// (graph for m defects, graph for e defects). Phenomenological models read
/// the per-round detection events, the others the final syndrome.
std::pair<MatchingGraph, MatchingGraph> build_graph(const Syndrome& syndrome, const CodeLayout& layout,
                                                    const NoiseModel& model);

/// Minimum-weight perfect matching of the whole graph as sorted node pairs.
std::vector<std::pair<int, int>> mwpm(const MatchingGraph& graph);

/// Matches one species. Defect-defect edges at least as long as the two
/// boundary routes together never improve a matching, so they are dropped and
/// the remaining connected groups are solved separately. The total weight
/// equals that of mwpm() on the full graph.
std::vector<MatchedPair> match_defects(const std::vector<Defect>& defects, StabilizerType type,
                                       const CodeLayout& layout, std::int64_t* weight = nullptr);

/// Applies the pairs' shortest lattice paths to a frame (sigma^x for
/// plaquette pairs, sigma^z for vertex pairs).
void apply_pairing(const std::vector<MatchedPair>& pairs, StabilizerType type, const CodeLayout& layout,
                   PauliFrame& frame);

/// Decodes both species independently.
Correction decode(const Syndrome& syndrome, const CodeLayout& layout, const NoiseModel& model);

nlohmann::json to_json(const Correction& c);
Syndrome syndrome_from_json(const nlohmann::json& j);

}  // namespace planar
