#include <gtest/gtest.h>

#include "planar/braid_cnot.hpp"
#include "planar/hole_simulator.hpp"

using namespace planar;

namespace {

StabilizerRef P(const CodeLayout& L, int r, int c) {
  return {StabilizerType::Plaquette, L.stabilizer_at(StabilizerType::Plaquette, {r, c})};
}
StabilizerRef V(const CodeLayout& L, int r, int c) {
  return {StabilizerType::Vertex, L.stabilizer_at(StabilizerType::Vertex, {r, c})};
}

int value(HoleSimulator& sim, const std::string& name, char which) {
  const auto reg = sim.logicals();
  const auto& pair = reg.at(name);
  return sim.tableau().expectation(which == 'z' ? pair.z : pair.x);
}

void expect_even_spares(const HoleSimulator& sim) {
  for (const auto& ev : sim.events()) {
    if (ev.contains("spare_anyons")) {
      EXPECT_EQ(ev["spare_anyons"].get<int>() % 2, 0) << ev.dump();
    }
  }
}

}  // namespace

TEST(Holes, CreateKeepsCodeSpaceAndAddsQubit) {
  HoleSimulator sim(9, Rng(1));
  const auto& L = sim.layout();
  sim.create_hole(HoleKind::Smooth, {P(L, 6, 5), P(L, 6, 7)});
  EXPECT_TRUE(sim.in_code_space());
  EXPECT_EQ(sim.layout().num_logical_qubits(), 2);
  EXPECT_EQ(check_register(sim.logicals(), sim.layout(), sim.num_qubits()), "");
  EXPECT_EQ(value(sim, "hole0", 'z'), 1);
  EXPECT_EQ(value(sim, "edge", 'z'), 1);
  expect_even_spares(sim);
}

TEST(Holes, ExpandContractRoundTripPreservesLogicals) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    HoleSimulator sim(9, Rng(seed));
    const auto L = sim.layout();
    const int h = sim.create_hole(HoleKind::Smooth, {P(L, 6, 5)});
    // Put the hole in |1> with its hole-to-edge sigma^x string.
    sim.tableau().apply(sim.logicals().at("hole0").x);
    ASSERT_EQ(value(sim, "hole0", 'z'), -1);
    // The string ends on the smooth edge, so the edge charge flips with it.
    const int edge = value(sim, "edge", 'z');
    sim.expand_hole(h, {P(L, 6, 7), P(L, 8, 7)});
    EXPECT_TRUE(sim.in_code_space());
    EXPECT_EQ(value(sim, "hole0", 'z'), -1);
    sim.contract_hole(h, {P(L, 6, 7), P(L, 8, 7)});
    EXPECT_TRUE(sim.in_code_space());
    EXPECT_EQ(value(sim, "hole0", 'z'), -1);
    EXPECT_EQ(value(sim, "edge", 'z'), edge);
    EXPECT_EQ(check_register(sim.logicals(), sim.layout(), sim.num_qubits()), "");
    expect_even_spares(sim);
  }
}

TEST(Holes, MovingARoughHoleCarriesItsState) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    HoleSimulator sim(9, Rng(seed));
    const auto L = sim.layout();
    const int h = sim.create_hole(HoleKind::Rough, {V(L, 7, 6)});
    ASSERT_EQ(value(sim, "hole0", 'x'), 1);
    sim.tableau().apply(sim.logicals().at("hole0").z);
    ASSERT_EQ(value(sim, "hole0", 'x'), -1);
    sim.move_hole(h, {V(L, 7, 8)});
    sim.move_hole(h, {V(L, 9, 8)});
    sim.move_hole(h, {V(L, 9, 10)});
    EXPECT_TRUE(sim.in_code_space());
    EXPECT_EQ(value(sim, "hole0", 'x'), -1);
    expect_even_spares(sim);
  }
}

TEST(Holes, ExpansionMustOverlap) {
  HoleSimulator sim(9, Rng(0));
  const auto L = sim.layout();
  const int h = sim.create_hole(HoleKind::Smooth, {P(L, 6, 5)});
  EXPECT_THROW(sim.move_hole(h, {P(L, 12, 11)}), std::invalid_argument);
}

TEST(Holes, ClosingAHoleReturnsToOneQubit) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    HoleSimulator sim(9, Rng(seed));
    const auto L = sim.layout();
    const int h = sim.create_hole(HoleKind::Smooth, {P(L, 6, 5), P(L, 6, 7), P(L, 8, 5)});
    sim.contract_hole(h, sim.region(h));
    EXPECT_TRUE(sim.in_code_space());
    EXPECT_EQ(sim.layout().num_logical_qubits(), 1);
    EXPECT_EQ(value(sim, "edge", 'z'), 1);
  }
}

TEST(BraidCnot, MatchesCnotOnComputationalInputs) {
  for (char c : {'0', '1'}) {
    for (char t : {'0', '+'}) {
      const auto r = braid_cnot_demo(8, c, t, Rng(3));
      EXPECT_TRUE(r.code_space_kept);
      EXPECT_TRUE(r.matches) << c << t;
    }
  }
  EXPECT_THROW(braid_cnot_demo(7, '0', '0', Rng(1)), std::invalid_argument);
}

TEST(BraidCnot, EntanglingCaseNeedsTheWalk) {
  const auto walked = braid_cnot_demo(8, '+', '0', Rng(2));
  EXPECT_TRUE(walked.matches);
  const auto still = braid_cnot_demo(8, '+', '0', Rng(2), false);
  EXPECT_FALSE(still.matches);
  bool joint = false;
  for (const auto& chk : walked.checks)
    if (chk.name == "Zc Zt") joint = chk.code == 1 && chk.oracle == 1;
  EXPECT_TRUE(joint);
}
