#include "planar/decoder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace planar {

namespace {

int spatial_distance(const CodeLayout& layout, StabilizerType t, int a, int b) {
  return layout.lattice_distance({t, a}, {t, b});
}

std::int64_t pair_weight(const CodeLayout& layout, StabilizerType t, const Defect& a, const Defect& b) {
  const int s = spatial_distance(layout, t, a.stabilizer, b.stabilizer);
  if (s < 0) return -1;
  return s + std::abs(a.round - b.round);
}

}  // namespace

std::vector<Defect> defects_of(const Syndrome& syndrome, StabilizerType type) {
  std::vector<Defect> out;
  const bool m = type == StabilizerType::Plaquette;
  if (syndrome.rounds.empty()) {
    for (int s : m ? syndrome.m_defects : syndrome.e_defects) out.push_back({s, 0});
    return out;
  }
  for (std::size_t r = 0; r < syndrome.rounds.size(); ++r) {
    const auto& round = syndrome.rounds[r];
    for (int s : m ? round.m_defects : round.e_defects) out.push_back({s, static_cast<int>(r)});
  }
  return out;
}

MatchingGraph build_graph(const std::vector<Defect>& defects, StabilizerType type, const CodeLayout& layout) {
  MatchingGraph g;
  g.type = type;
  g.defects = defects;
  const int k = g.num_defects();
  for (int i = 0; i < k; ++i) {
    const auto& di = defects[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      const std::int64_t w = pair_weight(layout, type, di, defects[static_cast<std::size_t>(j)]);
      if (w >= 0) g.edges.push_back({i, j, w});
    }
    const int b = layout.boundary_distance({type, di.stabilizer});
    if (b >= 0) g.edges.push_back({i, k + i, b});
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) g.edges.push_back({k + i, k + j, 0});
  return g;
}

std::pair<MatchingGraph, MatchingGraph> build_graph(const Syndrome& syndrome, const CodeLayout& layout,
                                                    const NoiseModel& model) {
  Syndrome view = syndrome;
  if (!std::holds_alternative<Phenomenological>(model)) view.rounds.clear();
  return {build_graph(defects_of(view, StabilizerType::Plaquette), StabilizerType::Plaquette, layout),
          build_graph(defects_of(view, StabilizerType::Vertex), StabilizerType::Vertex, layout)};
}

std::vector<std::pair<int, int>> mwpm(const MatchingGraph& graph) {
  const auto mate = min_weight_perfect_matching(graph.num_nodes(), graph.edges);
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < graph.num_nodes(); ++u)
    if (mate[static_cast<std::size_t>(u)] > u) out.emplace_back(u, mate[static_cast<std::size_t>(u)]);
  return out;
}

std::vector<MatchedPair> match_defects(const std::vector<Defect>& defects, StabilizerType type,
                                       const CodeLayout& layout, std::int64_t* weight) {
  const int k = static_cast<int>(defects.size());
  std::vector<int> bd(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) bd[static_cast<std::size_t>(i)] = layout.boundary_distance({type, defects[static_cast<std::size_t>(i)].stabilizer});

  // Union-find over useful defect-defect edges.
  std::vector<int> parent(static_cast<std::size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  struct Link {
    int i, j;
    std::int64_t w;
  };
  std::vector<Link> links;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::int64_t w = pair_weight(layout, type, defects[static_cast<std::size_t>(i)], defects[static_cast<std::size_t>(j)]);
      if (w < 0) continue;
      const int bi = bd[static_cast<std::size_t>(i)];
      const int bj = bd[static_cast<std::size_t>(j)];
      if (bi >= 0 && bj >= 0 && w >= bi + bj) continue;
      links.push_back({i, j, w});
      parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  }

  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(static_cast<std::size_t>(k), -1);
  std::vector<int> local(static_cast<std::size_t>(k), -1);
  std::vector<int> root_group(static_cast<std::size_t>(k), -1);
  for (int i = 0; i < k; ++i) {
    const int r = find(i);
    if (root_group[static_cast<std::size_t>(r)] < 0) {
      root_group[static_cast<std::size_t>(r)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    const int g = root_group[static_cast<std::size_t>(r)];
    group_of[static_cast<std::size_t>(i)] = g;
    local[static_cast<std::size_t>(i)] = static_cast<int>(groups[static_cast<std::size_t>(g)].size());
    groups[static_cast<std::size_t>(g)].push_back(i);
  }
  std::vector<std::vector<WeightedEdge>> group_edges(groups.size());
  for (const auto& l : links) {
    const int g = group_of[static_cast<std::size_t>(l.i)];
    group_edges[static_cast<std::size_t>(g)].push_back({local[static_cast<std::size_t>(l.i)], local[static_cast<std::size_t>(l.j)], l.w});
  }

  std::vector<MatchedPair> out;
  std::int64_t total = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& members = groups[g];
    const int m = static_cast<int>(members.size());
    if (m == 1) {
      const int i = members[0];
      if (bd[static_cast<std::size_t>(i)] < 0) throw std::runtime_error("defect cannot be matched");
      out.push_back({defects[static_cast<std::size_t>(i)], std::nullopt});
      total += bd[static_cast<std::size_t>(i)];
      continue;
    }
    auto edges = group_edges[g];
    for (int a = 0; a < m; ++a) {
      const int b = bd[static_cast<std::size_t>(members[static_cast<std::size_t>(a)])];
      if (b >= 0) edges.push_back({a, m + a, b});
      for (int c = a + 1; c < m; ++c) edges.push_back({m + a, m + c, 0});
    }
    const auto mate = min_weight_perfect_matching(2 * m, edges);
    total += matching_weight(mate, edges);
    for (int a = 0; a < m; ++a) {
      const int v = mate[static_cast<std::size_t>(a)];
      const Defect& da = defects[static_cast<std::size_t>(members[static_cast<std::size_t>(a)])];
      if (v >= m) {
        out.push_back({da, std::nullopt});
      } else if (v > a) {
        out.push_back({da, defects[static_cast<std::size_t>(members[static_cast<std::size_t>(v)])]});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MatchedPair& x, const MatchedPair& y) { return x.a < y.a; });
  if (weight) *weight = total;
  return out;
}

void apply_pairing(const std::vector<MatchedPair>& pairs, StabilizerType type, const CodeLayout& layout,
                   PauliFrame& frame) {
  BitVec& part = type == StabilizerType::Plaquette ? frame.x_part() : frame.z_part();
  for (const auto& p : pairs) {
    const auto path = p.b ? layout.shortest_path({type, p.a.stabilizer}, {type, p.b->stabilizer})
                          : layout.boundary_path({type, p.a.stabilizer});
    for (int q : path) part.flip(static_cast<std::size_t>(q));
  }
}

Correction decode(const Syndrome& syndrome, const CodeLayout& layout, const NoiseModel& model) {
  Syndrome view = syndrome;
  if (!std::holds_alternative<Phenomenological>(model)) view.rounds.clear();
  Correction c{PauliFrame(layout.num_qubits()), {}, {}, 0};
  std::int64_t wm = 0;
  std::int64_t we = 0;
  c.m_pairing = match_defects(defects_of(view, StabilizerType::Plaquette), StabilizerType::Plaquette, layout, &wm);
  c.e_pairing = match_defects(defects_of(view, StabilizerType::Vertex), StabilizerType::Vertex, layout, &we);
  apply_pairing(c.m_pairing, StabilizerType::Plaquette, layout, c.frame);
  apply_pairing(c.e_pairing, StabilizerType::Vertex, layout, c.frame);
  c.total_weight = wm + we;
  return c;
}

namespace {

nlohmann::json pairing_json(const std::vector<MatchedPair>& pairs) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pairs) {
    nlohmann::json a{{"stabilizer", p.a.stabilizer}, {"round", p.a.round}};
    nlohmann::json b = p.b ? nlohmann::json{{"stabilizer", p.b->stabilizer}, {"round", p.b->round}}
                           : nlohmann::json("boundary");
    arr.push_back({a, b});
  }
  return arr;
}

}  // namespace

nlohmann::json to_json(const Correction& c) {
  return {{"frame", c.frame.to_hex()},
          {"total_weight", c.total_weight},
          {"m_pairing", pairing_json(c.m_pairing)},
          {"e_pairing", pairing_json(c.e_pairing)}};
}

Syndrome syndrome_from_json(const nlohmann::json& j) {
  Syndrome s;
  s.m_defects = j.value("m_defects", std::vector<int>{});
  s.e_defects = j.value("e_defects", std::vector<int>{});
  std::sort(s.m_defects.begin(), s.m_defects.end());
  std::sort(s.e_defects.begin(), s.e_defects.end());
  if (j.contains("rounds")) {
    for (const auto& r : j.at("rounds")) {
      SyndromeRound round{r.value("m_defects", std::vector<int>{}), r.value("e_defects", std::vector<int>{})};
      s.rounds.push_back(std::move(round));
    }
  }
  return s;
}

}  // namespace planar
