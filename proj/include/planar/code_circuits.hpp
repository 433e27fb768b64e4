#pragma once

#include <array>
#include <vector>

#include "planar/layout.hpp"
#include "planar/pauli_frame.hpp"
#include "planar/tableau.hpp"

namespace planar {

/// B_p (sigma^z on the support) or A_s (sigma^x) over an n-qubit register.
PauliString stabilizer_operator(const CodeLayout& layout, StabilizerRef s, int n);
/// sigma^x on the qubits of a frame's x-part and sigma^z on its z-part.
PauliString frame_operator(const PauliFrame& frame, int n);

/// Tableau on layout.num_qubits() data qubits plus `ancillas` extra qubits
/// (indices after the data), in the code space with vacuum everywhere and the
/// edge qubit in |0>. Vertices are measured from |0...0> and every -1 is sent
/// to the top/bottom edge with a sigma^z string.
Tableau prepare_vacuum(const CodeLayout& layout, int ancillas, Rng& rng);

/// Measures every enabled stabilizer through `ancilla`: reset to |0>, CNOT
/// from each support qubit (Hadamard-conjugated for vertices), measure Z.
Syndrome extract_syndrome_via_ancilla(Tableau& t, const CodeLayout& layout, int ancilla, Rng& rng);

// Nine-qubit code: blocks {0,1,2}, {3,4,5}, {6,7,8}; each block in
// (|+++> +/- |--->)/sqrt2.

/// Encoding circuit taking qubit 0's state to the code.
Circuit shor_encoder();
/// X_a X_b inside each block (6), then Z on two adjacent blocks (2).
std::vector<PauliString> shor_stabilizers();
PauliString shor_logical_z();  // ZZZ on the first block
PauliString shor_logical_x();  // X on qubits 0, 3, 6

/// Correction from the 8 outcomes (true = -1), in the order of shor_stabilizers().
Circuit shor_correction(const std::array<bool, 8>& syndrome);

struct ShorRun {
  std::array<bool, 8> syndrome{};
  bool recovered = false;
};

/// Encodes `input` ('0', '1' or '+'), applies `pauli` ('I', 'X', 'Y', 'Z') on
/// `qubit`, measures the stabilizers, corrects, and checks that the logical
/// observable of the input is restored with every stabilizer back at +1.
ShorRun shor_code_demo(char input, int qubit, char pauli, Rng& rng);

struct BraidingSetup {
  StabilizerType moved = StabilizerType::Vertex;  // species carried around the loop
  StabilizerType fixed = StabilizerType::Plaquette;
  bool place_fixed = true;  // false leaves the loop empty
  int radius = 1;           // loop half-width in lattice steps
};

struct BraidingResult {
  int phase = 1;
  bool deterministic = true;
};

/// Prepares the vacuum, creates a pair of `fixed` anyons near the centre with
/// one member inside the loop, and runs the loop that carries a `moved`
/// anyon around that region as a Pauli string controlled by an ancilla in
/// |+>. The ancilla's X measurement gives the monodromy phase. Throws
/// std::invalid_argument if the loop would reach a boundary stabilizer.
BraidingResult braiding_phase_test(const CodeLayout& layout, const BraidingSetup& setup, Rng& rng);

}  // namespace planar
