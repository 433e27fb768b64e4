#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "planar/code_circuits.hpp"
#include "planar/layout.hpp"
#include "planar/tableau.hpp"

namespace planar {

struct LogicalPair {
  PauliString x;
  PauliString z;
};

/// Current X/Z representatives of every logical qubit: "edge" for the edge
/// encoding and "hole<i>" for each hole.
using LogicalRegister = std::map<std::string, LogicalPair>;

LogicalRegister logical_register(const CodeLayout& layout, int n);

/// Checks that every representative commutes with the enforced stabilizers
/// and that each pair anticommutes. Returns an empty string or a description
/// of the first violation.
std::string check_register(const LogicalRegister& reg, const CodeLayout& layout, int n);

/// Code state with dynamic holes, driven by measurements on a tableau.
///
/// Smooth holes remove qubits by measuring them in the X basis and rotating
/// them to |+>; rough holes use the Z basis and |0>. Reduced stabilizers of
/// the opposite type are then measured; any -1 outcomes ("spare anyons") are
/// paired with strings along the part of the hole's perimeter that is new,
/// so the hole's logical state is untouched. Contraction measures the
/// stabilizers that come back and moves their anyons into what is left of
/// the hole.
///
/// Every step is logged as one JSON object.
class HoleSimulator {
 public:
  /// Distance-d code in the vacuum, plus `ancillas` spare qubits at the end of
  /// the register.
  HoleSimulator(int distance, Rng rng, int ancillas = 0);

  const CodeLayout& layout() const { return layout_; }
  Tableau& tableau() { return tableau_; }
  const Tableau& tableau() const { return tableau_; }
  int num_qubits() const { return tableau_.num_qubits(); }
  Rng& rng() { return rng_; }

  /// Returns the new hole's index.
  int create_hole(HoleKind kind, const std::vector<StabilizerRef>& region);
  /// Adds stabilizers to hole `id`. Refused if the new perimeter keeps none of
  /// the old one.
  void expand_hole(int id, const std::vector<StabilizerRef>& added);
  /// Removes stabilizers from hole `id`; removing all of them closes the hole
  /// (its index stays reserved).
  void contract_hole(int id, const std::vector<StabilizerRef>& removed);
  /// Expand onto `target`, then contract off everything else.
  void move_hole(int id, const std::vector<StabilizerRef>& target);

  /// Every enforced stabilizer measures +1 deterministically.
  bool in_code_space() const;

  LogicalRegister logicals() const { return logical_register(layout_, num_qubits()); }
  int layout_hole_index(int id) const;
  const std::vector<StabilizerRef>& region(int id) const { return regions_.at(static_cast<std::size_t>(id)).cells; }

  const std::vector<nlohmann::json>& events() const { return events_; }

 private:
  struct Hole {
    HoleKind kind;
    std::vector<StabilizerRef> cells;
  };
  CodeLayout build(const std::vector<Hole>& holes) const;
  void remove_qubits(HoleKind kind, const std::vector<int>& qubits, nlohmann::json& ev);
  std::vector<int> measure_changed(const CodeLayout& before, StabilizerType t, nlohmann::json& ev);
  void pair_spares(StabilizerType t, std::vector<int> spares, const std::vector<int>& allowed, nlohmann::json& ev);
  void push_anyons_into_hole(StabilizerType t, const std::vector<int>& anyons, int layout_hole, nlohmann::json& ev);
  void apply_string(StabilizerType t, const std::vector<int>& qubits);

  int distance_;
  Rng rng_;
  std::vector<Hole> regions_;
  CodeLayout layout_;
  Tableau tableau_;
  std::vector<nlohmann::json> events_;
};

}  // namespace planar
