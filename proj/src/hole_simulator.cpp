#include "planar/hole_simulator.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace planar {

namespace {

nlohmann::json coord_json(Coord c) { return nlohmann::json::array({c.row, c.col}); }

std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

char mover(StabilizerType anyon) { return anyon == StabilizerType::Plaquette ? 'X' : 'Z'; }

}  // namespace

LogicalRegister logical_register(const CodeLayout& layout, int n) {
  LogicalRegister reg;
  reg["edge"] = {PauliString::on(n, layout.logical_x(), 'X'), PauliString::on(n, layout.logical_z(), 'Z')};
  for (std::size_t i = 0; i < layout.holes().size(); ++i) {
    const auto& h = layout.holes()[i];
    LogicalPair p;
    if (h.kind == HoleKind::Smooth) {
      p.z = PauliString::on(n, h.logical_loop, 'Z');
      p.x = PauliString::on(n, h.logical_string, 'X');
    } else {
      p.x = PauliString::on(n, h.logical_loop, 'X');
      p.z = PauliString::on(n, h.logical_string, 'Z');
    }
    reg["hole" + std::to_string(i)] = std::move(p);
  }
  return reg;
}

std::string check_register(const LogicalRegister& reg, const CodeLayout& layout, int n) {
  for (const auto& [label, pair] : reg) {
    if (pair.x.commutes_with(pair.z)) return label + ": X and Z commute";
    for (auto t : {StabilizerType::Plaquette, StabilizerType::Vertex}) {
      const auto& stabs = layout.stabilizers(t);
      for (int s = 0; s < static_cast<int>(stabs.size()); ++s) {
        if (!stabs[static_cast<std::size_t>(s)].enabled) continue;
        const auto op = stabilizer_operator(layout, {t, s}, n);
        if (!op.commutes_with(pair.x) || !op.commutes_with(pair.z)) {
          return label + ": representative anticommutes with " + std::string(to_string(t)) + " " + std::to_string(s);
        }
      }
    }
  }
  return {};
}

HoleSimulator::HoleSimulator(int distance, Rng rng, int ancillas)
    : distance_(distance),
      rng_(std::move(rng)),
      layout_(CodeLayout::planar(distance)),
      tableau_(prepare_vacuum(layout_, ancillas, rng_)) {}

CodeLayout HoleSimulator::build(const std::vector<Hole>& holes) const {
  CodeLayout l = CodeLayout::planar(distance_);
  for (const auto& h : holes)
    if (!h.cells.empty()) l = l.with_hole(h.kind, h.cells);
  return l;
}

int HoleSimulator::layout_hole_index(int id) const {
  if (id < 0 || id >= static_cast<int>(regions_.size())) throw std::out_of_range("no such hole");
  if (regions_[static_cast<std::size_t>(id)].cells.empty()) throw std::invalid_argument("hole is closed");
  int k = 0;
  for (int i = 0; i < id; ++i)
    if (!regions_[static_cast<std::size_t>(i)].cells.empty()) ++k;
  return k;
}

void HoleSimulator::apply_string(StabilizerType anyon, const std::vector<int>& qubits) {
  for (int q : qubits) {
    if (mover(anyon) == 'X') {
      tableau_.x(q);
    } else {
      tableau_.z(q);
    }
  }
}

void HoleSimulator::remove_qubits(HoleKind kind, const std::vector<int>& qubits, nlohmann::json& ev) {
  auto& log = ev["measured"];
  log = nlohmann::json::array();
  const int n = num_qubits();
  for (int q : qubits) {
    const char basis = kind == HoleKind::Smooth ? 'X' : 'Z';
    const auto m = tableau_.measure(PauliString::on(n, {q}, basis), rng_);
    // Rotate back to |+> or |0>.
    if (m.outcome == -1) {
      if (basis == 'X') {
        tableau_.z(q);
      } else {
        tableau_.x(q);
      }
    }
    log.push_back({{"qubit", q}, {"basis", std::string(1, basis)}, {"outcome", m.outcome}});
  }
}

std::vector<int> HoleSimulator::measure_changed(const CodeLayout& before, StabilizerType t, nlohmann::json& ev) {
  std::vector<int> minus;
  const int n = num_qubits();
  const auto& now = layout_.stabilizers(t);
  const auto& old = before.stabilizers(t);
  for (int s = 0; s < static_cast<int>(now.size()); ++s) {
    const auto& a = now[static_cast<std::size_t>(s)];
    const auto& b = old[static_cast<std::size_t>(s)];
    if (!a.enabled) continue;
    if (b.enabled && a.support == b.support) continue;
    const auto m = tableau_.measure(stabilizer_operator(layout_, {t, s}, n), rng_);
    ev["stabilizer_outcomes"].push_back(
        {{"type", to_string(t)}, {"at", coord_json(a.at)}, {"outcome", m.outcome}, {"deterministic", m.deterministic}});
    if (m.outcome == -1) minus.push_back(s);
  }
  return minus;
}

void HoleSimulator::pair_spares(StabilizerType t, std::vector<int> spares, const std::vector<int>& allowed,
                                nlohmann::json& ev) {
  const auto& stabs = layout_.stabilizers(t);
  std::set<int> ok(allowed.begin(), allowed.end());
  std::set<int> open(spares.begin(), spares.end());
  auto& log = ev["corrections"];
  if (log.is_null()) log = nlohmann::json::array();
  while (!open.empty()) {
    const int start = *open.begin();
    open.erase(open.begin());
    // Breadth-first search to the nearest other spare over allowed qubits.
    std::vector<int> parent(stabs.size(), -2);
    std::vector<int> via(stabs.size(), -1);
    std::deque<int> queue{start};
    parent[static_cast<std::size_t>(start)] = -1;
    int found = -1;
    while (!queue.empty() && found < 0) {
      const int s = queue.front();
      queue.pop_front();
      for (int q : stabs[static_cast<std::size_t>(s)].support) {
        if (!ok.count(q)) continue;
        const auto& adj = layout_.adjacent(t, q);
        if (adj.size() != 2) continue;
        const int nb = adj[0] == s ? adj[1] : adj[0];
        if (!stabs[static_cast<std::size_t>(nb)].enabled || parent[static_cast<std::size_t>(nb)] != -2) continue;
        parent[static_cast<std::size_t>(nb)] = s;
        via[static_cast<std::size_t>(nb)] = q;
        if (open.count(nb)) {
          found = nb;
          break;
        }
        queue.push_back(nb);
      }
    }
    if (found < 0) throw std::runtime_error("spare anyon cannot be paired along the new perimeter");
    open.erase(found);
    std::vector<int> path;
    for (int v = found; parent[static_cast<std::size_t>(v)] != -1; v = parent[static_cast<std::size_t>(v)])
      path.push_back(via[static_cast<std::size_t>(v)]);
    apply_string(t, path);
    std::sort(path.begin(), path.end());
    log.push_back({{"pauli", std::string(1, mover(t))},
                   {"qubits", path},
                   {"from", coord_json(stabs[static_cast<std::size_t>(start)].at)},
                   {"to", coord_json(stabs[static_cast<std::size_t>(found)].at)}});
  }
}

void HoleSimulator::push_anyons_into_hole(StabilizerType t, const std::vector<int>& anyons, int layout_hole,
                                          nlohmann::json& ev) {
  const auto& stabs = layout_.stabilizers(t);
  const auto& hole = layout_.holes()[static_cast<std::size_t>(layout_hole)];
  std::set<int> target(hole.disabled_stabilizers.begin(), hole.disabled_stabilizers.end());
  auto& log = ev["corrections"];
  if (log.is_null()) log = nlohmann::json::array();
  for (int a : anyons) {
    std::vector<int> parent(stabs.size(), -2);
    std::vector<int> via(stabs.size(), -1);
    std::deque<int> queue{a};
    parent[static_cast<std::size_t>(a)] = -1;
    int found = -1;
    while (!queue.empty() && found < 0) {
      const int s = queue.front();
      queue.pop_front();
      for (int q : stabs[static_cast<std::size_t>(s)].support) {
        if (layout_.is_removed(q)) continue;
        const auto& adj = layout_.adjacent(t, q);
        if (adj.size() != 2) continue;
        const int nb = adj[0] == s ? adj[1] : adj[0];
        if (parent[static_cast<std::size_t>(nb)] != -2) continue;
        const bool into_hole = target.count(nb) > 0;
        if (!into_hole && !stabs[static_cast<std::size_t>(nb)].enabled) continue;
        parent[static_cast<std::size_t>(nb)] = s;
        via[static_cast<std::size_t>(nb)] = q;
        if (into_hole) {
          found = nb;
          break;
        }
        queue.push_back(nb);
      }
    }
    if (found < 0) throw std::runtime_error("anyon cannot reach the hole");
    std::vector<int> path;
    for (int v = found; parent[static_cast<std::size_t>(v)] != -1; v = parent[static_cast<std::size_t>(v)])
      path.push_back(via[static_cast<std::size_t>(v)]);
    apply_string(t, path);
    std::sort(path.begin(), path.end());
    log.push_back({{"pauli", std::string(1, mover(t))},
                   {"qubits", path},
                   {"from", coord_json(stabs[static_cast<std::size_t>(a)].at)},
                   {"to", "hole"}});
  }
}

int HoleSimulator::create_hole(HoleKind kind, const std::vector<StabilizerRef>& region) {
  if (region.empty()) throw std::invalid_argument("hole region is empty");
  auto holes = regions_;
  holes.push_back({kind, region});
  CodeLayout next = build(holes);
  const CodeLayout before = layout_;
  const int id = static_cast<int>(regions_.size());
  nlohmann::json ev{{"step", events_.size()}, {"action", "create"}, {"hole", id}, {"kind", to_string(kind)}};
  for (const auto& r : region) ev["region"].push_back(coord_json(before.stabilizer(r).at));

  std::vector<int> removed;
  for (int q = 0; q < next.num_qubits(); ++q)
    if (next.is_removed(q) && !before.is_removed(q)) removed.push_back(q);
  regions_ = std::move(holes);
  layout_ = std::move(next);
  remove_qubits(kind, removed, ev);
  const StabilizerType o = other(region_type(kind));
  const auto spares = measure_changed(before, o, ev);
  ev["spare_anyons"] = spares.size();
  const auto& h = layout_.holes()[static_cast<std::size_t>(layout_hole_index(id))];
  pair_spares(o, spares, h.logical_loop, ev);
  events_.push_back(std::move(ev));
  return id;
}

void HoleSimulator::expand_hole(int id, const std::vector<StabilizerRef>& added_cells) {
  const std::vector<StabilizerRef> added = added_cells;
  const int before_index = layout_hole_index(id);
  auto holes = regions_;
  auto& cells = holes[static_cast<std::size_t>(id)].cells;
  for (const auto& r : added) {
    if (std::find(cells.begin(), cells.end(), r) != cells.end()) throw std::invalid_argument("stabilizer already in the hole");
    cells.push_back(r);
  }
  const HoleKind kind = holes[static_cast<std::size_t>(id)].kind;
  CodeLayout next = build(holes);
  const CodeLayout before = layout_;
  const auto& old_loop = before.holes()[static_cast<std::size_t>(before_index)].logical_loop;
  const auto& new_loop = next.holes()[static_cast<std::size_t>(before_index)].logical_loop;
  std::vector<int> kept;
  std::set_intersection(old_loop.begin(), old_loop.end(), new_loop.begin(), new_loop.end(), std::back_inserter(kept));
  if (kept.empty()) throw std::invalid_argument("expansion keeps none of the hole's boundary");

  nlohmann::json ev{{"step", events_.size()}, {"action", "expand"}, {"hole", id}, {"kind", to_string(kind)}};
  for (const auto& r : added) ev["added"].push_back(coord_json(before.stabilizer(r).at));
  std::vector<int> removed;
  for (int q = 0; q < next.num_qubits(); ++q)
    if (next.is_removed(q) && !before.is_removed(q)) removed.push_back(q);
  const auto fresh = set_difference(new_loop, old_loop);
  regions_ = std::move(holes);
  layout_ = std::move(next);
  remove_qubits(kind, removed, ev);
  const StabilizerType o = other(region_type(kind));
  const auto spares = measure_changed(before, o, ev);
  ev["spare_anyons"] = spares.size();
  pair_spares(o, spares, fresh, ev);
  events_.push_back(std::move(ev));
}

void HoleSimulator::contract_hole(int id, const std::vector<StabilizerRef>& removed) {
  layout_hole_index(id);
  // May alias region(id), which is replaced below.
  const std::vector<StabilizerRef> removed_cells = removed;
  auto holes = regions_;
  auto& cells = holes[static_cast<std::size_t>(id)].cells;
  for (const auto& r : removed_cells) {
    auto it = std::find(cells.begin(), cells.end(), r);
    if (it == cells.end()) throw std::invalid_argument("stabilizer is not part of the hole");
    cells.erase(it);
  }
  const HoleKind kind = holes[static_cast<std::size_t>(id)].kind;
  const bool closes = cells.empty();
  CodeLayout next = build(holes);
  const CodeLayout before = layout_;
  nlohmann::json ev{{"step", events_.size()}, {"action", closes ? "close" : "contract"}, {"hole", id}, {"kind", to_string(kind)}};
  for (const auto& r : removed_cells) ev["removed"].push_back(coord_json(before.stabilizer(r).at));
  std::vector<int> restored;
  for (int q = 0; q < next.num_qubits(); ++q)
    if (before.is_removed(q) && !next.is_removed(q)) restored.push_back(q);
  ev["restored_qubits"] = restored;
  regions_ = std::move(holes);
  layout_ = std::move(next);

  const StabilizerType t = region_type(kind);
  const StabilizerType o = other(t);
  // Grown-back stabilizers of the other type are fixed by the |+>/|0> qubits.
  const auto stray = measure_changed(before, o, ev);
  if (!stray.empty()) {
    std::vector<int> everywhere;
    for (int q = 0; q < layout_.num_qubits(); ++q)
      if (!layout_.is_removed(q)) everywhere.push_back(q);
    pair_spares(o, stray, everywhere, ev);
  }
  const auto anyons = measure_changed(before, t, ev);
  ev["anyons"] = anyons.size();
  if (!closes) {
    push_anyons_into_hole(t, anyons, layout_hole_index(id), ev);
  } else {
    // The hole is gone: pair what came back among itself, any odd one over the edge.
    std::vector<int> inside;
    for (const auto& r : removed_cells)
      for (int q : layout_.stabilizer(r).support) inside.push_back(q);
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    std::vector<int> even = anyons;
    if (even.size() % 2 == 1) {
      const int last = even.back();
      even.pop_back();
      const auto path = layout_.boundary_path({t, last});
      apply_string(t, path);
      ev["sent_to_edge"] = coord_json(layout_.stabilizer({t, last}).at);
    }
    pair_spares(t, even, inside, ev);
  }
  events_.push_back(std::move(ev));
}

void HoleSimulator::move_hole(int id, const std::vector<StabilizerRef>& target) {
  const auto cells = region(id);
  std::vector<StabilizerRef> add;
  std::vector<StabilizerRef> drop;
  for (const auto& r : target)
    if (std::find(cells.begin(), cells.end(), r) == cells.end()) add.push_back(r);
  for (const auto& r : cells)
    if (std::find(target.begin(), target.end(), r) == target.end()) drop.push_back(r);
  if (!add.empty()) expand_hole(id, add);
  if (!drop.empty()) contract_hole(id, drop);
}

bool HoleSimulator::in_code_space() const {
  const int n = num_qubits();
  for (auto t : {StabilizerType::Plaquette, StabilizerType::Vertex}) {
    const auto& stabs = layout_.stabilizers(t);
    for (int s = 0; s < static_cast<int>(stabs.size()); ++s) {
      if (!stabs[static_cast<std::size_t>(s)].enabled) continue;
      if (tableau_.expectation(stabilizer_operator(layout_, {t, s}, n)) != 1) return false;
    }
  }
  return true;
}

}  // namespace planar
