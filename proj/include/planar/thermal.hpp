#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "planar/rng.hpp"

namespace planar::thermal {

/// Ferromagnetic chain, H = -J sum s_i s_{i+1}.
struct Ising1D {
  int L = 16;
  bool periodic = false;
  double J = 1.0;
};

/// Ferromagnetic square lattice, H = -J sum over nearest neighbours.
struct Ising2D {
  int L = 8;
  bool periodic = false;
  double J = 1.0;
};

/// One Pauli species of the toric code on an L x L torus. Spins live on the
/// 2L^2 edges: +1 no error, -1 a sigma^x error. H = -J_s sum A_s - J_p sum
/// B_p, where B_p is the product of the four edge spins around a plaquette
/// and every A_s stays +1 because only sigma^x errors occur.
///
/// Edge h(r,c) = r*L + c joins vertex (r,c) to (r,c+1); edge v(r,c) = L^2 +
/// r*L + c joins (r,c) to (r+1,c). Plaquette (r,c) has edges h(r,c),
/// h(r+1,c), v(r,c), v(r,c+1), indices mod L.
struct ToricCode {
  int L = 8;
  double J_s = 1.0;
  double J_p = 1.0;
};

using SystemSpec = std::variant<Ising1D, Ising2D, ToricCode>;

std::string describe(const SystemSpec& spec);
int linear_size(const SystemSpec& spec);

/// Spin configuration plus the local structure needed for single-spin
/// dynamics. Starts in the all +1 ground state.
class ClassicalSystem {
 public:
  explicit ClassicalSystem(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  int num_spins() const { return static_cast<int>(spins_.size()); }
  int spin(int i) const { return spins_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::int8_t>& spins() const { return spins_; }
  void flip(int i);

  double energy() const;
  double ground_energy() const;
  /// Energy change from flipping spin i. Throws std::out_of_range.
  double delta_energy(int i) const;
  /// delta_energy(i) == 2 * coupling() * local_sum(i); local_sum lies in [-4, 4].
  int local_sum(int i) const;
  double coupling() const;
  /// Spins whose local_sum changes when spin i flips (i excluded).
  const std::vector<int>& affected(int i) const { return affected_.at(static_cast<std::size_t>(i)); }

  /// Sum of spins (Ising kinds).
  int magnetization() const { return magnetization_; }
  /// Plaquettes with B_p = -1 (toric code), as r*L + c.
  std::vector<int> defects() const;
  /// Edges of plaquette p (toric code).
  const std::array<int, 4>& plaquette_edges(int p) const { return plaquette_edges_.at(static_cast<std::size_t>(p)); }
  /// The two plaquettes containing edge e (toric code).
  const std::array<int, 2>& edge_plaquettes(int e) const { return edge_plaquettes_.at(static_cast<std::size_t>(e)); }

 private:
  void check(int i) const;

  SystemSpec spec_;
  std::vector<std::int8_t> spins_;
  std::vector<std::vector<int>> neighbours_;  // Ising bonds
  std::vector<std::array<int, 4>> plaquette_edges_;
  std::vector<std::array<int, 2>> edge_plaquettes_;
  std::vector<std::vector<int>> affected_;
  int magnetization_ = 0;
};

/// Spins flipped one at a time from the ground state.
using FlipPath = std::vector<int>;

/// Largest energy above the ground state met along the path.
double barrier(const SystemSpec& spec, const FlipPath& path);

/// 1D: flip start, start+1, ..., L-1, then start-1, ..., 0.
FlipPath chain_sweep(const Ising1D& spec, int start);
/// 2D: flip row by row, left to right.
FlipPath raster_path(const Ising2D& spec);
/// Toric code: create an m pair with h(1,0), walk one member down column 0
/// and annihilate it through h(0,0). Applies a logical operator.
FlipPath toric_logical_path(const ToricCode& spec);

/// Metropolis rate for an energy change: min(1, exp(-beta dE)).
double metropolis_rate(double beta, double delta_energy);

/// Continuous-time single-spin-flip Metropolis dynamics, rejection-free: every
/// spin flips at its Metropolis rate, spins are grouped by local_sum so an
/// event is drawn in O(1).
class KineticMonteCarlo {
 public:
  KineticMonteCarlo(ClassicalSystem& system, double beta);

  struct Event {
    double dt = 0.0;
    int spin = -1;
    double delta_energy = 0.0;
  };

  double total_rate() const;
  double class_rate(int local_sum) const { return rates_[static_cast<std::size_t>(local_sum + 4)]; }
  int class_size(int local_sum) const {
    return static_cast<int>(members_[static_cast<std::size_t>(local_sum + 4)].size());
  }
  /// Draws the waiting time and the spin, and flips it. Empty when no spin
  /// can flip (total rate zero).
  std::optional<Event> step(Rng& rng);

 private:
  void place(int i);
  void unplace(int i);

  ClassicalSystem& sys_;
  std::array<double, 9> rates_{};
  std::array<std::vector<int>, 9> members_;
  std::vector<int> cls_;
  std::vector<int> pos_;
};

/// One attempted discrete-time Metropolis move on a uniformly chosen spin.
/// Returns whether it was accepted; `chosen` receives the spin.
bool metropolis_step(ClassicalSystem& system, double beta, Rng& rng, int* chosen = nullptr);

struct LifetimeOptions {
  double beta = 1.0;
  double horizon = 1e6;
  /// Toric readout times: first_checkpoint * factor^k.
  double first_checkpoint = 1.0;
  double checkpoint_factor = 1.189207115002721;  // 2^(1/4)
};

struct LifetimeSample {
  double time = 0.0;
  bool censored = false;  // reached the horizon without a failure
  std::uint64_t events = 0;
};

/// Evolves from the ground state until the stored bit is read out wrong.
/// Ising: majority vote, checked after every flip (a tie counts as wrong).
/// Toric code: matching decoder plus homology check at the checkpoints.
LifetimeSample lifetime_trial(const SystemSpec& spec, const LifetimeOptions& opt, Rng& rng);

/// Toric readout: pairs the plaquette defects by minimum total torus
/// distance, applies the connecting edge flips to a copy, and reports whether
/// the result differs from the ground state by a non-contractible loop.
bool toric_readout_fails(const ClassicalSystem& system);
/// Edges flipped by the correction for the current defects.
std::vector<int> toric_correction(const ClassicalSystem& system);

}  // namespace planar::thermal
