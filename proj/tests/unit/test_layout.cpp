#include <deque>
#include <set>

#include <gtest/gtest.h>

#include "planar/layout.hpp"
#include "planar/pauli_frame.hpp"

using namespace planar;

namespace {

// Plain BFS over stabilizers sharing an active qubit; -2 stands for "off the
// code through an edge".
int bfs(const CodeLayout& L, StabilizerRef a, std::optional<StabilizerRef> b) {
  const auto& stabs = L.stabilizers(a.type);
  std::vector<int> dist(stabs.size(), -1);
  std::deque<int> queue{a.index};
  dist[static_cast<std::size_t>(a.index)] = 0;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    if (b && s == b->index) return dist[static_cast<std::size_t>(s)];
    for (int q : stabs[static_cast<std::size_t>(s)].support) {
      if (!b && L.is_boundary_qubit(a.type, q)) return dist[static_cast<std::size_t>(s)] + 1;
      for (int t : L.adjacent(a.type, q)) {
        if (!stabs[static_cast<std::size_t>(t)].enabled || dist[static_cast<std::size_t>(t)] >= 0) continue;
        dist[static_cast<std::size_t>(t)] = dist[static_cast<std::size_t>(s)] + 1;
        queue.push_back(t);
      }
    }
  }
  return -1;
}

}  // namespace

TEST(Layout, CountsMatchFormula) {
  for (int d = 2; d <= 9; ++d) {
    const auto L = CodeLayout::planar(d);
    EXPECT_EQ(L.num_qubits(), d * d + (d - 1) * (d - 1));
    EXPECT_EQ(L.num_stabilizers(StabilizerType::Plaquette), d * (d - 1));
    EXPECT_EQ(L.num_stabilizers(StabilizerType::Vertex), d * (d - 1));
    EXPECT_EQ(L.num_logical_qubits(), 1);
  }
  EXPECT_THROW(CodeLayout::planar(1), std::invalid_argument);
}

TEST(Layout, StabilizersCommuteAndLogicalsAnticommute) {
  for (int d : {2, 3, 5, 8}) {
    const auto L = CodeLayout::planar(d);
    const std::size_t n = static_cast<std::size_t>(L.num_qubits());
    for (const auto& p : L.plaquettes()) {
      EXPECT_TRUE(p.support.size() == 3 || p.support.size() == 4);
      const auto zp = BitVec::from_indices(n, p.support);
      for (const auto& v : L.vertices()) EXPECT_FALSE(zp.dot(BitVec::from_indices(n, v.support)));
      EXPECT_FALSE(zp.dot(BitVec::from_indices(n, L.logical_x())));
    }
    for (const auto& v : L.vertices())
      EXPECT_FALSE(BitVec::from_indices(n, v.support).dot(BitVec::from_indices(n, L.logical_z())));
    EXPECT_TRUE(BitVec::from_indices(n, L.logical_z()).dot(BitVec::from_indices(n, L.logical_x())));
    EXPECT_EQ(static_cast<int>(L.logical_z().size()), d);
    EXPECT_EQ(static_cast<int>(L.logical_x().size()), d);
  }
}

TEST(Layout, SiteLookupRoundTrips) {
  const auto L = CodeLayout::planar(4);
  for (int q = 0; q < L.num_qubits(); ++q) EXPECT_EQ(L.qubit_at(L.qubit_coords()[static_cast<std::size_t>(q)]), q);
  for (auto t : {StabilizerType::Plaquette, StabilizerType::Vertex})
    for (int s = 0; s < L.num_stabilizers(t); ++s)
      EXPECT_EQ(L.stabilizer_at(t, L.stabilizers(t)[static_cast<std::size_t>(s)].at), s);
  EXPECT_EQ(L.qubit_at({0, 1}), -1);
  EXPECT_EQ(L.stabilizer_at(StabilizerType::Plaquette, {1, 0}), -1);
}

TEST(Layout, DistancesMatchBfsOracle) {
  for (int d = 2; d <= 6; ++d) {
    const auto L = CodeLayout::planar(d);
    for (auto t : {StabilizerType::Plaquette, StabilizerType::Vertex}) {
      for (int a = 0; a < L.num_stabilizers(t); ++a) {
        const StabilizerRef ra{t, a};
        EXPECT_EQ(L.boundary_distance(ra), bfs(L, ra, std::nullopt));
        EXPECT_EQ(static_cast<int>(L.boundary_path(ra).size()), L.boundary_distance(ra));
        for (int b = 0; b < L.num_stabilizers(t); ++b) {
          const StabilizerRef rb{t, b};
          EXPECT_EQ(L.lattice_distance(ra, rb), bfs(L, ra, rb));
        }
      }
    }
  }
}

TEST(Layout, BoundaryDistanceClosedForm) {
  const int d = 7;
  const auto L = CodeLayout::planar(d);
  for (int s = 0; s < L.num_stabilizers(StabilizerType::Plaquette); ++s) {
    const int c = L.plaquettes()[static_cast<std::size_t>(s)].at.col;
    EXPECT_EQ(L.boundary_distance({StabilizerType::Plaquette, s}), std::min((c + 1) / 2, (2 * d - 1 - c) / 2));
  }
  for (int s = 0; s < L.num_stabilizers(StabilizerType::Vertex); ++s) {
    const int r = L.vertices()[static_cast<std::size_t>(s)].at.row;
    EXPECT_EQ(L.boundary_distance({StabilizerType::Vertex, s}), std::min((r + 1) / 2, (2 * d - 1 - r) / 2));
  }
}

TEST(Layout, PathsConnectTheirEndpoints) {
  const auto L = CodeLayout::planar(5);
  const int n = L.num_qubits();
  for (int a = 0; a < L.num_stabilizers(StabilizerType::Plaquette); a += 3) {
    for (int b = 0; b < L.num_stabilizers(StabilizerType::Plaquette); b += 2) {
      const auto path = L.shortest_path({StabilizerType::Plaquette, a}, {StabilizerType::Plaquette, b});
      const auto syn = syndrome_of(PauliFrame::x_on(n, path), L);
      std::vector<int> expect;
      if (a != b) expect = {std::min(a, b), std::max(a, b)};
      EXPECT_EQ(syn.m_defects, expect);
    }
    const auto syn = syndrome_of(PauliFrame::x_on(n, L.boundary_path({StabilizerType::Plaquette, a})), L);
    EXPECT_EQ(syn.m_defects, std::vector<int>{a});
  }
}

TEST(Layout, MixedTypesRejected) {
  const auto L = CodeLayout::planar(3);
  EXPECT_THROW(L.lattice_distance({StabilizerType::Plaquette, 0}, {StabilizerType::Vertex, 0}), std::invalid_argument);
}

TEST(Layout, HoleAddsLogicalQubit) {
  const auto L = CodeLayout::planar(7);
  const int p = L.stabilizer_at(StabilizerType::Plaquette, {6, 5});
  const auto H = L.with_hole(HoleKind::Smooth, {{StabilizerType::Plaquette, p}});
  EXPECT_EQ(H.num_logical_qubits(), 2);
  ASSERT_EQ(H.holes().size(), 1u);
  EXPECT_FALSE(H.plaquettes()[static_cast<std::size_t>(p)].enabled);
  const auto& hole = H.holes()[0];
  EXPECT_EQ(hole.logical_loop.size(), 4u);
  // The loop is the disabled plaquette, so it commutes with every enabled vertex.
  const std::size_t n = static_cast<std::size_t>(H.num_qubits());
  const auto loop = BitVec::from_indices(n, hole.logical_loop);
  for (const auto& v : H.vertices()) {
    if (v.enabled) {
      EXPECT_FALSE(loop.dot(BitVec::from_indices(n, v.support)));
    }
  }
  // Rough hole built from a vertex too.
  const int v = L.stabilizer_at(StabilizerType::Vertex, {5, 6});
  EXPECT_EQ(L.with_hole(HoleKind::Rough, {{StabilizerType::Vertex, v}}).num_logical_qubits(), 2);
  // Touching the outer boundary is refused.
  EXPECT_THROW(L.with_hole(HoleKind::Smooth, {{StabilizerType::Plaquette, 0}}), std::invalid_argument);
}

TEST(Layout, JsonDumpHasSupports) {
  const auto j = CodeLayout::planar(3).to_json();
  EXPECT_EQ(j.at("distance").get<int>(), 3);
  EXPECT_EQ(j.at("qubits").size(), 13u);
  EXPECT_EQ(j.at("plaquettes").size(), 6u);
}
