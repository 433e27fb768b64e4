#include "planar/code_circuits.hpp"

#include <cstdlib>
#include <stdexcept>

namespace planar {

PauliString stabilizer_operator(const CodeLayout& layout, StabilizerRef s, int n) {
  return PauliString::on(n, layout.stabilizer(s).support, s.type == StabilizerType::Plaquette ? 'Z' : 'X');
}

PauliString frame_operator(const PauliFrame& frame, int n) {
  PauliString p(n);
  frame.x_part().for_each_set([&](std::size_t q) { p.x.set(q); });
  frame.z_part().for_each_set([&](std::size_t q) { p.z.set(q); });
  return p;
}

Tableau prepare_vacuum(const CodeLayout& layout, int ancillas, Rng& rng) {
  const int n = layout.num_qubits() + ancillas;
  Tableau t(n);
  const auto& vertices = layout.vertices();
  for (int s = 0; s < static_cast<int>(vertices.size()); ++s) {
    if (!vertices[static_cast<std::size_t>(s)].enabled) continue;
    const StabilizerRef ref{StabilizerType::Vertex, s};
    if (t.measure(stabilizer_operator(layout, ref, n), rng).outcome == -1) {
      for (int q : layout.boundary_path(ref)) t.z(q);
    }
  }
  return t;
}

Syndrome extract_syndrome_via_ancilla(Tableau& t, const CodeLayout& layout, int ancilla, Rng& rng) {
  Syndrome out;
  const auto& plaquettes = layout.plaquettes();
  for (int p = 0; p < static_cast<int>(plaquettes.size()); ++p) {
    const auto& st = plaquettes[static_cast<std::size_t>(p)];
    if (!st.enabled) continue;
    t.reset(ancilla, rng);
    for (int q : st.support) t.cx(q, ancilla);
    if (t.measure_z(ancilla, rng).outcome == -1) out.m_defects.push_back(p);
  }
  const auto& vertices = layout.vertices();
  for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
    const auto& st = vertices[static_cast<std::size_t>(v)];
    if (!st.enabled) continue;
    t.reset(ancilla, rng);
    for (int q : st.support) {
      t.h(q);
      t.cx(q, ancilla);
      t.h(q);
    }
    if (t.measure_z(ancilla, rng).outcome == -1) out.e_defects.push_back(v);
  }
  return out;
}

Circuit shor_encoder() {
  Circuit c{{Gate::CX, 0, 3}, {Gate::CX, 0, 6}};
  for (int b = 0; b < 9; b += 3) c.push_back({Gate::H, b});
  for (int b = 0; b < 9; b += 3) {
    c.push_back({Gate::CX, b, b + 1});
    c.push_back({Gate::CX, b, b + 2});
  }
  for (int q = 0; q < 9; ++q) c.push_back({Gate::H, q});
  return c;
}

std::vector<PauliString> shor_stabilizers() {
  std::vector<PauliString> out;
  for (int b = 0; b < 9; b += 3) {
    out.push_back(PauliString::on(9, {b, b + 1}, 'X'));
    out.push_back(PauliString::on(9, {b + 1, b + 2}, 'X'));
  }
  out.push_back(PauliString::on(9, {0, 1, 2, 3, 4, 5}, 'Z'));
  out.push_back(PauliString::on(9, {3, 4, 5, 6, 7, 8}, 'Z'));
  return out;
}

PauliString shor_logical_z() { return PauliString::on(9, {0, 1, 2}, 'Z'); }
PauliString shor_logical_x() { return PauliString::on(9, {0, 3, 6}, 'X'); }

namespace {

// (first, second) check pattern -> position 0, 1, 2 within a group of three.
int locate(bool first, bool second) {
  if (first && !second) return 0;
  if (first && second) return 1;
  if (!first && second) return 2;
  return -1;
}

}  // namespace

Circuit shor_correction(const std::array<bool, 8>& s) {
  Circuit c;
  for (int b = 0; b < 3; ++b) {
    const int k = locate(s[static_cast<std::size_t>(2 * b)], s[static_cast<std::size_t>(2 * b + 1)]);
    if (k >= 0) c.push_back({Gate::Z, 3 * b + k});
  }
  const int block = locate(s[6], s[7]);
  if (block >= 0) c.push_back({Gate::X, 3 * block});
  return c;
}

ShorRun shor_code_demo(char input, int qubit, char pauli, Rng& rng) {
  if (qubit < 0 || qubit >= 9) throw std::out_of_range("nine-qubit code has qubits 0..8");
  Tableau t(9);
  PauliString logical = shor_logical_z();
  int expected = 1;
  switch (input) {
    case '0':
      break;
    case '1':
      t.x(0);
      expected = -1;
      break;
    case '+':
      t.h(0);
      logical = shor_logical_x();
      break;
    default:
      throw std::invalid_argument("input must be '0', '1' or '+'");
  }
  run(t, shor_encoder());
  switch (pauli) {
    case 'I':
      break;
    case 'X':
      t.x(qubit);
      break;
    case 'Y':
      t.y(qubit);
      break;
    case 'Z':
      t.z(qubit);
      break;
    default:
      throw std::invalid_argument("error must be I, X, Y or Z");
  }
  ShorRun out;
  const auto stabs = shor_stabilizers();
  for (std::size_t i = 0; i < stabs.size(); ++i) out.syndrome[i] = t.measure(stabs[i], rng).outcome == -1;
  run(t, shor_correction(out.syndrome));
  out.recovered = t.expectation(logical) == expected;
  for (const auto& s : stabs) out.recovered = out.recovered && t.expectation(s) == 1;
  return out;
}

namespace {

Coord centre_site(int d, StabilizerType t) {
  const int g = d - 1;
  if (t == StabilizerType::Plaquette) return g % 2 == 0 ? Coord{g, g - 1} : Coord{g - 1, g};
  return g % 2 == 0 ? Coord{g - 1, g} : Coord{g, g - 1};
}

}  // namespace

BraidingResult braiding_phase_test(const CodeLayout& layout, const BraidingSetup& setup, Rng& rng) {
  if (layout.has_holes()) throw std::invalid_argument("braiding test needs a hole-free layout");
  if (setup.radius < 1) throw std::invalid_argument("loop radius must be at least 1");
  const int n = layout.num_qubits() + 1;
  const int ancilla = n - 1;
  Tableau t = prepare_vacuum(layout, 1, rng);

  const Coord centre = centre_site(layout.distance(), setup.fixed);
  const int a = layout.stabilizer_at(setup.fixed, centre);
  // The partner sits 3 steps away, outside the loop.
  const int reach = 2 * setup.radius + 4;
  const Coord far = setup.fixed == StabilizerType::Plaquette ? Coord{centre.row, centre.col + reach}
                                                             : Coord{centre.row + reach, centre.col};
  const int b = layout.stabilizer_at(setup.fixed, far);
  if (a < 0 || b < 0) throw std::invalid_argument("code is too small for the braiding test");
  if (setup.place_fixed) {
    const auto path = layout.shortest_path({setup.fixed, a}, {setup.fixed, b});
    for (int q : path) {
      if (setup.fixed == StabilizerType::Plaquette) {
        t.x(q);
      } else {
        t.z(q);
      }
    }
  }

  // A moved e traces a sigma^z loop, the product of the plaquettes inside it;
  // a moved m traces a sigma^x loop, the product of vertices.
  const StabilizerType loop_type = other(setup.moved);
  PauliString loop(n);
  const auto& stabs = layout.stabilizers(loop_type);
  for (int s = 0; s < static_cast<int>(stabs.size()); ++s) {
    const Coord c = stabs[static_cast<std::size_t>(s)].at;
    if (std::abs(c.row - centre.row) > 2 * setup.radius || std::abs(c.col - centre.col) > 2 * setup.radius) continue;
    if (stabs[static_cast<std::size_t>(s)].support.size() != 4) throw std::invalid_argument("loop touches the boundary");
    loop = loop * stabilizer_operator(layout, {loop_type, s}, n);
  }

  t.h(ancilla);
  for (std::size_t q = 0; q + 1 < static_cast<std::size_t>(n); ++q) {
    if (loop.x.get(q)) t.cx(ancilla, static_cast<int>(q));
    if (loop.z.get(q)) t.cz(ancilla, static_cast<int>(q));
  }
  t.h(ancilla);
  const auto m = t.measure_z(ancilla, rng);
  return {m.outcome, m.deterministic};
}

}  // namespace planar
