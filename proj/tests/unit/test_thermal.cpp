#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "planar/thermal.hpp"

using namespace planar;
using namespace planar::thermal;

namespace {

std::vector<SystemSpec> fixtures() {
  return {Ising1D{12, false, 1.0}, Ising1D{12, true, 0.7}, Ising2D{5, false, 1.0}, Ising2D{5, true, 1.3},
          ToricCode{4, 1.0, 0.8}};
}

}  // namespace

TEST(Thermal, GroundEnergies) {
  EXPECT_DOUBLE_EQ(ClassicalSystem(Ising1D{10, false, 1.0}).energy(), -9.0);
  EXPECT_DOUBLE_EQ(ClassicalSystem(Ising1D{10, true, 1.0}).energy(), -10.0);
  EXPECT_DOUBLE_EQ(ClassicalSystem(Ising2D{4, true, 1.0}).energy(), -32.0);
  EXPECT_DOUBLE_EQ(ClassicalSystem(Ising2D{4, false, 1.0}).energy(), -24.0);
  EXPECT_DOUBLE_EQ(ClassicalSystem(ToricCode{3, 1.0, 2.0}).energy(), -27.0);
  for (const auto& s : fixtures()) {
    ClassicalSystem sys(s);
    EXPECT_DOUBLE_EQ(sys.energy(), sys.ground_energy());
  }
}

TEST(Thermal, DeltaEnergyBookkeeping) {
  Rng rng(10);
  for (const auto& s : fixtures()) {
    ClassicalSystem sys(s);
    for (int step = 0; step < 300; ++step) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(sys.num_spins())));
      const double e0 = sys.energy();
      const double de = sys.delta_energy(i);
      EXPECT_DOUBLE_EQ(de, 2 * sys.coupling() * sys.local_sum(i));
      EXPECT_LE(std::abs(sys.local_sum(i)), 4);
      sys.flip(i);
      EXPECT_NEAR(sys.energy() - e0, de, 1e-9) << describe(s);
    }
    EXPECT_THROW(sys.delta_energy(sys.num_spins()), std::out_of_range);
  }
}

TEST(Thermal, AffectedSpinsAreExactlyThoseThatChange) {
  Rng rng(2);
  for (const auto& s : fixtures()) {
    ClassicalSystem sys(s);
    for (int i = 0; i < sys.num_spins(); ++i) {
      std::vector<int> before(static_cast<std::size_t>(sys.num_spins()));
      for (int j = 0; j < sys.num_spins(); ++j) before[static_cast<std::size_t>(j)] = sys.local_sum(j);
      sys.flip(i);
      std::vector<int> changed;
      for (int j = 0; j < sys.num_spins(); ++j)
        if (j != i && sys.local_sum(j) != before[static_cast<std::size_t>(j)]) changed.push_back(j);
      for (int j : changed)
        EXPECT_NE(std::find(sys.affected(i).begin(), sys.affected(i).end(), j), sys.affected(i).end());
      if (rng.bernoulli(0.5)) sys.flip(i);
    }
  }
}

TEST(Thermal, Barriers) {
  EXPECT_DOUBLE_EQ(barrier(Ising1D{16, false, 1.0}, chain_sweep(Ising1D{16, false, 1.0}, 0)), 2.0);
  EXPECT_DOUBLE_EQ(barrier(Ising1D{16, true, 1.0}, chain_sweep(Ising1D{16, true, 1.0}, 5)), 4.0);
  for (int L : {4, 8, 12}) {
    const Ising2D spec{L, false, 1.0};
    EXPECT_DOUBLE_EQ(barrier(spec, raster_path(spec)), 2.0 * (L + 1));
    const ToricCode toric{L, 1.0, 1.5};
    EXPECT_DOUBLE_EQ(barrier(toric, toric_logical_path(toric)), 4 * 1.5);
  }
}

TEST(Thermal, MetropolisDetailedBalance) {
  for (double beta : {0.3, 1.0, 2.5}) {
    for (double de : {0.5, 2.0, 8.0}) {
      EXPECT_NEAR(metropolis_rate(beta, de) / metropolis_rate(beta, -de), std::exp(-beta * de), 1e-12);
    }
  }
  EXPECT_DOUBLE_EQ(metropolis_rate(1.0, -3.0), 1.0);
}

TEST(Thermal, KineticRatesAreConsistent) {
  Rng rng(4);
  for (const auto& s : fixtures()) {
    ClassicalSystem sys(s);
    KineticMonteCarlo kmc(sys, 0.7);
    for (int step = 0; step < 200; ++step) {
      double expect = 0;
      int count = 0;
      for (int i = 0; i < sys.num_spins(); ++i) expect += metropolis_rate(0.7, sys.delta_energy(i));
      for (int k = -4; k <= 4; ++k) count += kmc.class_size(k);
      EXPECT_EQ(count, sys.num_spins());
      EXPECT_NEAR(kmc.total_rate(), expect, 1e-9);
      const double e0 = sys.energy();
      const auto ev = kmc.step(rng);
      ASSERT_TRUE(ev);
      EXPECT_GT(ev->dt, 0.0);
      EXPECT_NEAR(sys.energy() - e0, ev->delta_energy, 1e-9);
    }
  }
}

TEST(Thermal, KineticMonteCarloSamplesBoltzmann) {
  // Time-weighted occupancy of a 4-spin ring against exp(-beta E) / Z.
  const double beta = 0.6;
  ClassicalSystem sys(Ising1D{4, true, 1.0});
  KineticMonteCarlo kmc(sys, beta);
  Rng rng(99);
  std::map<int, double> occupancy;
  auto state = [&] {
    int s = 0;
    for (int i = 0; i < 4; ++i) s |= (sys.spin(i) > 0 ? 1 : 0) << i;
    return s;
  };
  double total = 0;
  for (int n = 0; n < 400000; ++n) {
    const int before = state();
    const auto ev = kmc.step(rng);
    occupancy[before] += ev->dt;
    total += ev->dt;
  }
  double Z = 0;
  std::map<int, double> weight;
  for (int s = 0; s < 16; ++s) {
    ClassicalSystem probe(Ising1D{4, true, 1.0});
    for (int i = 0; i < 4; ++i)
      if (!(s >> i & 1)) probe.flip(i);
    weight[s] = std::exp(-beta * probe.energy());
    Z += weight[s];
  }
  for (int s = 0; s < 16; ++s) EXPECT_NEAR(occupancy[s] / total, weight[s] / Z, 0.01) << s;
}

TEST(Thermal, DiscreteMetropolisStep) {
  Rng rng(1);
  ClassicalSystem sys(Ising2D{4, true, 1.0});
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    int chosen = -1;
    accepted += metropolis_step(sys, 5.0, rng, &chosen);
    EXPECT_GE(chosen, 0);
  }
  // At low temperature from the ground state almost nothing is accepted.
  EXPECT_LT(accepted, 5);
}

TEST(Thermal, ToricCorrectionRemovesDefects) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    ClassicalSystem sys(ToricCode{6, 1.0, 1.0});
    for (int k = 0; k < 8; ++k) sys.flip(static_cast<int>(rng.below(static_cast<std::uint64_t>(sys.num_spins()))));
    ClassicalSystem fixed = sys;
    for (int e : toric_correction(sys)) fixed.flip(e);
    EXPECT_TRUE(fixed.defects().empty());
  }
}

TEST(Thermal, ToricReadoutSeesHomology) {
  const ToricCode spec{6, 1.0, 1.0};
  ClassicalSystem sys(spec);
  EXPECT_FALSE(toric_readout_fails(sys));
  // Edges around one vertex: a contractible dual loop.
  for (int e : {0, 5, 36, 66}) sys.flip(e);  // h(0,0), h(0,5), v(0,0), v(5,0)
  EXPECT_TRUE(sys.defects().empty());
  EXPECT_FALSE(toric_readout_fails(sys));
  ClassicalSystem wrapped(spec);
  for (int e : toric_logical_path(spec)) wrapped.flip(e);
  EXPECT_TRUE(wrapped.defects().empty());
  EXPECT_TRUE(toric_readout_fails(wrapped));
  // A short error is corrected.
  ClassicalSystem small(spec);
  small.flip(7);
  EXPECT_EQ(small.defects().size(), 2u);
  EXPECT_FALSE(toric_readout_fails(small));
}

TEST(Thermal, LifetimeTrialsAreSeeded) {
  LifetimeOptions opt;
  opt.beta = 1.0;
  opt.horizon = 1e4;
  for (const auto& s : fixtures()) {
    Rng a(3, {1, 2});
    Rng b(3, {1, 2});
    const auto x = lifetime_trial(s, opt, a);
    const auto y = lifetime_trial(s, opt, b);
    EXPECT_EQ(x.time, y.time);
    EXPECT_EQ(x.events, y.events);
  }
}

TEST(Thermal, CensoringAtHorizon) {
  LifetimeOptions opt;
  opt.beta = 10.0;
  opt.horizon = 5.0;
  Rng rng(1);
  const auto s = lifetime_trial(Ising2D{6, true, 1.0}, opt, rng);
  EXPECT_TRUE(s.censored);
  EXPECT_DOUBLE_EQ(s.time, 5.0);
  opt.beta = 0.05;
  opt.horizon = 1e6;
  const auto hot = lifetime_trial(Ising1D{16, true, 1.0}, opt, rng);
  EXPECT_FALSE(hot.censored);
  EXPECT_LT(hot.time, 100.0);
}
