#pragma once

#include <string>
#include <vector>

#include "planar/bitvec.hpp"
#include "planar/layout.hpp"

namespace planar {

/// Pauli error record over data qubits. sigma^y is both bits set; phases are
/// not tracked.
class PauliFrame {
 public:
  PauliFrame() = default;
  explicit PauliFrame(int num_qubits)
      : x_(static_cast<std::size_t>(num_qubits)), z_(static_cast<std::size_t>(num_qubits)) {}
  PauliFrame(BitVec x, BitVec z);

  static PauliFrame x_on(int num_qubits, const std::vector<int>& qubits);
  static PauliFrame z_on(int num_qubits, const std::vector<int>& qubits);

  int num_qubits() const { return static_cast<int>(x_.size()); }
  const BitVec& x_part() const { return x_; }
  const BitVec& z_part() const { return z_; }
  BitVec& x_part() { return x_; }
  BitVec& z_part() { return z_; }

  bool empty() const { return !x_.any() && !z_.any(); }
  std::size_t weight() const;

  PauliFrame& operator^=(const PauliFrame& other);
  friend PauliFrame compose(PauliFrame a, const PauliFrame& b) { return a ^= b; }
  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;

  /// "<x hex>:<z hex>", little-endian nibbles (see BitVec::to_hex).
  std::string to_hex() const;
  static PauliFrame from_hex(int num_qubits, const std::string& text);

 private:
  BitVec x_;
  BitVec z_;
};

struct SyndromeRound {
  std::vector<int> m_defects;
  std::vector<int> e_defects;
  friend bool operator==(const SyndromeRound&, const SyndromeRound&) = default;
};

/// Defect sets, sorted. For repeated noisy measurement `rounds` holds the
/// detection events of each round (change of the measured value against the
/// previous round), and m_defects/e_defects hold the final round's syndrome.
struct Syndrome {
  std::vector<int> m_defects;
  std::vector<int> e_defects;
  std::vector<SyndromeRound> rounds;

  bool empty() const { return m_defects.empty() && e_defects.empty(); }
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// Plaquette p is a defect iff its support meets x_part an odd number of
/// times; vertex s iff its support meets z_part oddly. Only enabled
/// stabilizers are reported.
Syndrome syndrome_of(const PauliFrame& frame, const CodeLayout& layout);

/// Defect bitmaps indexed by stabilizer, the inner-loop form of syndrome_of.
BitVec plaquette_defects(const BitVec& x_part, const CodeLayout& layout);
BitVec vertex_defects(const BitVec& z_part, const CodeLayout& layout);

/// flips_logical_z: x_part meets logical_z oddly (a logical X happened).
/// flips_logical_x: z_part meets logical_x oddly (a logical Z happened).
struct LogicalEffect {
  bool flips_logical_z = false;
  bool flips_logical_x = false;
  bool any() const { return flips_logical_z || flips_logical_x; }
  friend bool operator==(const LogicalEffect&, const LogicalEffect&) = default;
};

/// Throws std::invalid_argument if the frame leaves a residual syndrome.
LogicalEffect logical_effect(const PauliFrame& frame, const CodeLayout& layout);

}  // namespace planar
