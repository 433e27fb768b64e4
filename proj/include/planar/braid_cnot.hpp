#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "planar/hole_simulator.hpp"

namespace planar {

struct ObservableCheck {
  std::string name;  // e.g. "Zc Xt"
  int code = 0;      // expectation in the hole code: +1, -1, or 0 if random
  int oracle = 0;    // same for CNOT on two bare qubits
};

struct CnotResult {
  char control = '0';
  char target = '+';
  std::vector<ObservableCheck> checks;
  bool matches = false;
  bool code_space_kept = false;  // every step ended with all stabilizers at +1
  std::vector<nlohmann::json> events;
};

/// Smooth hole (control) and rough hole (target) on a distance-d code. The
/// control is prepared in `control` and the target in `target` (each one of
/// '0', '1', '+', '-'), then the smooth hole is walked around the rough hole
/// one plaquette at a time. The eight observables Zc^a Xc^b Zt^c Xt^e (no
/// qubit carrying both Z and X) are compared with CNOT applied to the same
/// inputs on two bare qubits. With walk = false the smooth hole stays put
/// (a control run: the comparison then fails whenever CNOT changes an
/// observable). Throws std::invalid_argument for d < 8.
CnotResult braid_cnot_demo(int distance, char control, char target, Rng rng, bool walk = true);

}  // namespace planar
