#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planar/bitvec.hpp"
#include "planar/rng.hpp"

namespace planar {

/// Hermitian Pauli product with a sign: (-1)^negative * prod X^x Z^z, where a
/// qubit with both bits set carries Y.
struct PauliString {
  BitVec x;
  BitVec z;
  bool negative = false;

  PauliString() = default;
  explicit PauliString(int n) : x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n)) {}

  int num_qubits() const { return static_cast<int>(x.size()); }
  /// 'X', 'Y' or 'Z' on each listed qubit.
  static PauliString on(int n, const std::vector<int>& qubits, char pauli);
  /// "+XIZY" style; leading sign optional.
  static PauliString parse(const std::string& text);
  std::string str() const;

  bool commutes_with(const PauliString& other) const { return x.dot(other.z) == z.dot(other.x); }
  bool is_identity() const { return !x.any() && !z.any(); }
  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Product a*b. Throws std::invalid_argument if the factors anticommute
/// (the product would not be Hermitian).
PauliString operator*(const PauliString& a, const PauliString& b);

struct Measurement {
  int outcome = 1;  // +1 or -1
  bool deterministic = true;
};

/// Stabilizer state of n qubits in the Aaronson-Gottesman form: rows 0..n-1
/// are destabilizers, n..2n-1 stabilizers. Starts in |0...0>.
class Tableau {
 public:
  explicit Tableau(int n);

  int num_qubits() const { return n_; }

  void h(int q);
  void s(int q);
  void x(int q);
  void y(int q);
  void z(int q);
  void cx(int control, int target);
  void cz(int a, int b);
  /// Applies a Pauli product (the sign is a global phase and is ignored).
  void apply(const PauliString& p);

  /// Measures a Pauli product. A random outcome uses `forced` when given,
  /// otherwise a fair coin from rng.
  Measurement measure(const PauliString& p, Rng& rng, std::optional<int> forced = std::nullopt);
  Measurement measure_z(int q, Rng& rng) { return measure(PauliString::on(n_, {q}, 'Z'), rng); }
  Measurement measure_x(int q, Rng& rng) { return measure(PauliString::on(n_, {q}, 'X'), rng); }
  /// Measures Z and flips the qubit back to |0> if needed.
  void reset(int q, Rng& rng);

  /// +1 or -1 if the state is an eigenstate of p, 0 otherwise. Does not
  /// change the state.
  int expectation(const PauliString& p) const;

  /// Stabilizer generators (rows n..2n-1).
  std::vector<PauliString> stabilizers() const;

  friend bool operator==(const Tableau&, const Tableau&) = default;

 private:
  void rowsum(int h, int i);
  bool anticommutes(int row, const PauliString& p) const;

  int n_;
  std::vector<BitVec> xs_;
  std::vector<BitVec> zs_;
  std::vector<std::uint8_t> r_;
};

/// One Clifford step, used to replay the same circuit on different simulators.
struct Gate {
  enum Kind : std::uint8_t { H, S, X, Y, Z, CX, CZ } kind;
  int a = 0;
  int b = -1;
  friend bool operator==(const Gate&, const Gate&) = default;
};
using Circuit = std::vector<Gate>;

void run(Tableau& t, const Circuit& c);

}  // namespace planar
