#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace planar {

/// Site on the doubled grid of a distance-d planar code. Rows and columns run
/// over 0..2d-2.
///
///   (r + c) even            data qubit
///   r even, c odd           plaquette  B_p = prod sigma^z  (hosts m anyons)
///   r odd,  c even          vertex     A_s = prod sigma^x  (hosts e anyons)
///
/// Left/right edges are smooth: m anyons leave the code through them, and the
/// plaquette logical string runs left to right. Top/bottom edges are rough: e
/// anyons leave through them.
struct Coord {
  int row = 0;
  int col = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

enum class StabilizerType : std::uint8_t { Plaquette, Vertex };

/// Plaquettes detect the x-part of a frame (m anyons); vertices the z-part (e anyons).
inline StabilizerType other(StabilizerType t) {
  return t == StabilizerType::Plaquette ? StabilizerType::Vertex : StabilizerType::Plaquette;
}
const char* to_string(StabilizerType t);

struct StabilizerRef {
  StabilizerType type = StabilizerType::Plaquette;
  int index = 0;
  friend bool operator==(const StabilizerRef&, const StabilizerRef&) = default;
  friend auto operator<=>(const StabilizerRef&, const StabilizerRef&) = default;
};

struct Stabilizer {
  Coord at;
  std::vector<int> support;  // sorted qubit indices currently acted on
  bool enabled = true;
};

/// Smooth holes are made of plaquettes and hold an m anyon (logical |1>) or
/// vacuum (|0>). Rough holes are made of vertices and hold an e anyon (|->) or
/// vacuum (|+>).
enum class HoleKind : std::uint8_t { Rough, Smooth };
const char* to_string(HoleKind k);
inline StabilizerType region_type(HoleKind k) {
  return k == HoleKind::Smooth ? StabilizerType::Plaquette : StabilizerType::Vertex;
}

struct HoleRegion {
  HoleKind kind = HoleKind::Smooth;
  std::vector<int> disabled_stabilizers;  // indices of region_type(kind), sorted
  std::vector<int> emptied_stabilizers;   // opposite type, every support qubit removed
  std::vector<int> removed_qubits;        // sorted
  std::vector<int> perimeter;             // loop qubits in traversal order
  std::vector<int> logical_loop;          // sorted perimeter: product of the disabled stabilizers
  std::vector<int> logical_string;        // hole-to-edge string, sorted
};

/// Immutable geometry of a planar code, optionally with holes. Qubit and
/// stabilizer indices are row-major over their sites on the doubled grid and
/// never change when holes are carved; removed qubits simply drop out of every
/// support.
class CodeLayout {
 public:
  /// Hole-free distance-d code: d^2 + (d-1)^2 qubits, d(d-1) plaquettes and
  /// d(d-1) vertices. Throws std::invalid_argument for d < 2.
  static CodeLayout planar(int distance);

  /// Returns a copy with an additional hole. The region must be a connected
  /// set of enabled bulk stabilizers of the kind's type whose supports avoid
  /// the outer boundary and every existing hole.
  CodeLayout with_hole(HoleKind kind, const std::vector<StabilizerRef>& region) const;

  /// Hole-free layout of the same distance.
  CodeLayout without_holes() const { return planar(distance_); }

  int distance() const { return distance_; }
  int grid_size() const { return 2 * distance_ - 1; }
  int num_qubits() const { return static_cast<int>(qubit_coords_.size()); }
  int num_active_qubits() const;
  int num_stabilizers(StabilizerType t) const { return static_cast<int>(stabilizers(t).size()); }
  int num_enabled(StabilizerType t) const;

  const std::vector<Coord>& qubit_coords() const { return qubit_coords_; }
  const std::vector<Stabilizer>& plaquettes() const { return plaquettes_; }
  const std::vector<Stabilizer>& vertices() const { return vertices_; }
  const std::vector<Stabilizer>& stabilizers(StabilizerType t) const {
    return t == StabilizerType::Plaquette ? plaquettes_ : vertices_;
  }
  const Stabilizer& stabilizer(StabilizerRef s) const { return stabilizers(s.type).at(static_cast<std::size_t>(s.index)); }

  /// Index of the qubit / stabilizer at a site, or -1.
  int qubit_at(Coord c) const;
  int stabilizer_at(StabilizerType t, Coord c) const;

  /// Stabilizers of type t adjacent to qubit q in the hole-free lattice (1 or 2).
  const std::vector<int>& adjacent(StabilizerType t, int q) const {
    return t == StabilizerType::Plaquette ? qubit_plaquettes_[static_cast<std::size_t>(q)]
                                          : qubit_vertices_[static_cast<std::size_t>(q)];
  }
  /// Qubit lies on the outer boundary for anyons of type t (touches a single
  /// stabilizer of that type).
  bool is_boundary_qubit(StabilizerType t, int q) const { return adjacent(t, q).size() == 1; }

  bool is_removed(int q) const { return removed_[static_cast<std::size_t>(q)]; }

  /// sigma^z string down the left edge: measures the m occupancy of the
  /// smooth edges.
  const std::vector<int>& logical_z() const { return logical_z_; }
  /// sigma^x string along the top edge: measures the e occupancy of the rough edges.
  const std::vector<int>& logical_x() const { return logical_x_; }

  const std::vector<HoleRegion>& holes() const { return holes_; }
  bool has_holes() const { return !holes_.empty(); }

  /// Logical qubit count from the GF(2) rank of the enabled stabilizers.
  int num_logical_qubits() const;

  /// Minimal number of single-qubit Pauli moves between two stabilizers of the
  /// same type. Throws std::invalid_argument for mixed types, -1 if unreachable.
  int lattice_distance(StabilizerRef a, StabilizerRef b) const;
  /// Moves needed to take an anyon on `a` off the code through its matching edges.
  int boundary_distance(StabilizerRef a) const;

  /// Qubits of a shortest path realising the distances above.
  std::vector<int> shortest_path(StabilizerRef a, StabilizerRef b) const;
  std::vector<int> boundary_path(StabilizerRef a) const;

  nlohmann::json to_json() const;

 private:
  CodeLayout() = default;
  void finalize_holes();
  std::vector<Stabilizer>& stabilizers_mut(StabilizerType t);
  std::vector<int> bfs_path(StabilizerRef a, const StabilizerRef* b) const;

  int distance_ = 0;
  std::vector<Coord> qubit_coords_;
  std::vector<int> site_index_;  // grid_size^2, index of qubit or stabilizer at the site
  std::vector<Stabilizer> plaquettes_;
  std::vector<Stabilizer> vertices_;
  std::vector<std::vector<int>> qubit_plaquettes_;
  std::vector<std::vector<int>> qubit_vertices_;
  std::vector<bool> removed_;
  std::vector<int> logical_z_;
  std::vector<int> logical_x_;
  std::vector<HoleRegion> holes_;
};

}  // namespace planar
