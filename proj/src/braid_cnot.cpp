#include "planar/braid_cnot.hpp"

#include <stdexcept>

namespace planar {

namespace {

// Fixed geometry: rough hole on the vertex at (7,6); the smooth hole starts on
// the plaquette at (10,3) and walks the ring of rows 4/10 and columns 3/9.
constexpr Coord kRough{7, 6};
constexpr Coord kStart{10, 3};

std::vector<Coord> ring() {
  return {{10, 5}, {10, 7}, {10, 9}, {8, 9}, {6, 9}, {4, 9}, {4, 7},
          {4, 5},  {4, 3},  {6, 3},  {8, 3}, {10, 3}};
}

void prepare_bare(Tableau& t, int q, char s) {
  switch (s) {
    case '0':
      break;
    case '1':
      t.x(q);
      break;
    case '+':
      t.h(q);
      break;
    case '-':
      t.x(q);
      t.h(q);
      break;
    default:
      throw std::invalid_argument("state must be one of 0, 1, +, -");
  }
}

// Puts the code into the eigenstate of `z` (for '0'/'1') or `x` (for '+'/'-')
// starting from the natural vacuum state of the hole.
void prepare_logical(HoleSimulator& sim, char s, bool smooth, const PauliString& x, const PauliString& z) {
  Tableau& t = sim.tableau();
  auto set_sign = [&](const PauliString& measured, const PauliString& flip, int want) {
    if (t.measure(measured, sim.rng()).outcome != want) t.apply(flip);
  };
  if (smooth) {
    // Vacuum is |0>.
    if (s == '1') t.apply(x);
    if (s == '+') set_sign(x, z, 1);
    if (s == '-') set_sign(x, z, -1);
  } else {
    // Vacuum is |+>.
    if (s == '-') t.apply(z);
    if (s == '0') set_sign(z, x, 1);
    if (s == '1') set_sign(z, x, -1);
  }
  if (s != '0' && s != '1' && s != '+' && s != '-') throw std::invalid_argument("state must be one of 0, 1, +, -");
}

}  // namespace

CnotResult braid_cnot_demo(int distance, char control, char target, Rng rng, bool walk) {
  if (distance < 8) throw std::invalid_argument("the hole braid needs d >= 8 to keep the holes apart");
  HoleSimulator sim(distance, std::move(rng));
  const CodeLayout& l0 = sim.layout();
  const int n = sim.num_qubits();
  const int v = l0.stabilizer_at(StabilizerType::Vertex, kRough);
  const int p = l0.stabilizer_at(StabilizerType::Plaquette, kStart);
  const int rough = sim.create_hole(HoleKind::Rough, {{StabilizerType::Vertex, v}});
  const int smooth = sim.create_hole(HoleKind::Smooth, {{StabilizerType::Plaquette, p}});

  const CodeLayout& l = sim.layout();
  auto qubits = [&](std::vector<Coord> cs) {
    std::vector<int> out;
    for (auto c : cs) out.push_back(l.qubit_at(c));
    return out;
  };
  // Control: Z is the hole's plaquette loop. Its X string runs left along row
  // 10 and is multiplied by the top-row edge operator so that it leaves the
  // edge qubit alone.
  const PauliString zc = PauliString::on(n, l.stabilizer({StabilizerType::Plaquette, p}).support, 'Z');
  PauliString xc = PauliString::on(n, qubits({{10, 2}, {10, 0}}), 'X') * PauliString::on(n, l.logical_x(), 'X');
  // Target: X is the vertex loop, Z a column string down to the bottom edge.
  const PauliString xt = PauliString::on(n, l.stabilizer({StabilizerType::Vertex, v}).support, 'X');
  std::vector<Coord> down;
  for (int r = kRough.row + 1; r < l.grid_size(); r += 2) down.push_back({r, kRough.col});
  const PauliString zt = PauliString::on(n, qubits(down), 'Z');

  prepare_logical(sim, control, true, xc, zc);
  prepare_logical(sim, target, false, xt, zt);

  CnotResult out;
  out.control = control;
  out.target = target;
  out.code_space_kept = sim.in_code_space();
  for (Coord c : walk ? ring() : std::vector<Coord>{}) {
    sim.move_hole(smooth, {{StabilizerType::Plaquette, l0.stabilizer_at(StabilizerType::Plaquette, c)}});
    out.code_space_kept = out.code_space_kept && sim.in_code_space();
  }
  (void)rough;

  Tableau bare(2);
  prepare_bare(bare, 0, control);
  prepare_bare(bare, 1, target);
  bare.cx(0, 1);

  const Tableau& t = sim.tableau();
  out.matches = true;
  const char* cname[] = {"", "Zc", "Xc"};
  const char* tname[] = {"", "Zt", "Xt"};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == 0 && b == 0) continue;
      PauliString code(n);
      PauliString two(2);
      if (a == 1) {
        code = code * zc;
        two = two * PauliString::parse("ZI");
      } else if (a == 2) {
        code = code * xc;
        two = two * PauliString::parse("XI");
      }
      if (b == 1) {
        code = code * zt;
        two = two * PauliString::parse("IZ");
      } else if (b == 2) {
        code = code * xt;
        two = two * PauliString::parse("IX");
      }
      std::string name = std::string(cname[a]) + (a && b ? " " : "") + tname[b];
      ObservableCheck c{name, t.expectation(code), bare.expectation(two)};
      out.matches = out.matches && c.code == c.oracle;
      out.checks.push_back(std::move(c));
    }
  }
  out.matches = out.matches && out.code_space_kept;
  out.events = sim.events();
  return out;
}

}  // namespace planar
