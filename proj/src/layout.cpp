#include "planar/layout.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "planar/gf2.hpp"

namespace planar {

const char* to_string(StabilizerType t) { return t == StabilizerType::Plaquette ? "plaquette" : "vertex"; }
const char* to_string(HoleKind k) { return k == HoleKind::Smooth ? "smooth" : "rough"; }

CodeLayout CodeLayout::planar(int distance) {
  if (distance < 2) throw std::invalid_argument("planar code distance must be at least 2");
  CodeLayout L;
  L.distance_ = distance;
  const int n = L.grid_size();
  L.site_index_.assign(static_cast<std::size_t>(n * n), -1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      int& slot = L.site_index_[static_cast<std::size_t>(r * n + c)];
      if ((r + c) % 2 == 0) {
        slot = static_cast<int>(L.qubit_coords_.size());
        L.qubit_coords_.push_back({r, c});
      } else if (r % 2 == 0) {
        slot = static_cast<int>(L.plaquettes_.size());
        L.plaquettes_.push_back({{r, c}, {}, true});
      } else {
        slot = static_cast<int>(L.vertices_.size());
        L.vertices_.push_back({{r, c}, {}, true});
      }
    }
  }
  const std::size_t nq = L.qubit_coords_.size();
  L.qubit_plaquettes_.assign(nq, {});
  L.qubit_vertices_.assign(nq, {});
  L.removed_.assign(nq, false);
  auto fill = [&](std::vector<Stabilizer>& stabs, std::vector<std::vector<int>>& adj) {
    for (std::size_t s = 0; s < stabs.size(); ++s) {
      const Coord at = stabs[s].at;
      static constexpr std::array<std::array<int, 2>, 4> kSteps{{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};
      for (auto [dr, dc] : kSteps) {
        const int q = L.qubit_at({at.row + dr, at.col + dc});
        if (q < 0) continue;
        stabs[s].support.push_back(q);
        adj[static_cast<std::size_t>(q)].push_back(static_cast<int>(s));
      }
      std::sort(stabs[s].support.begin(), stabs[s].support.end());
    }
  };
  fill(L.plaquettes_, L.qubit_plaquettes_);
  fill(L.vertices_, L.qubit_vertices_);
  for (int r = 0; r < n; r += 2) L.logical_z_.push_back(L.qubit_at({r, 0}));
  for (int c = 0; c < n; c += 2) L.logical_x_.push_back(L.qubit_at({0, c}));
  std::sort(L.logical_z_.begin(), L.logical_z_.end());
  std::sort(L.logical_x_.begin(), L.logical_x_.end());
  return L;
}

int CodeLayout::qubit_at(Coord c) const {
  const int n = grid_size();
  if (c.row < 0 || c.col < 0 || c.row >= n || c.col >= n) return -1;
  if ((c.row + c.col) % 2 != 0) return -1;
  return site_index_[static_cast<std::size_t>(c.row * n + c.col)];
}

int CodeLayout::stabilizer_at(StabilizerType t, Coord c) const {
  const int n = grid_size();
  if (c.row < 0 || c.col < 0 || c.row >= n || c.col >= n) return -1;
  const bool is_plaquette = c.row % 2 == 0 && c.col % 2 == 1;
  const bool is_vertex = c.row % 2 == 1 && c.col % 2 == 0;
  if ((t == StabilizerType::Plaquette && !is_plaquette) || (t == StabilizerType::Vertex && !is_vertex)) return -1;
  return site_index_[static_cast<std::size_t>(c.row * n + c.col)];
}

int CodeLayout::num_active_qubits() const {
  return static_cast<int>(std::count(removed_.begin(), removed_.end(), false));
}

int CodeLayout::num_enabled(StabilizerType t) const {
  const auto& s = stabilizers(t);
  return static_cast<int>(std::count_if(s.begin(), s.end(), [](const Stabilizer& x) { return x.enabled; }));
}

int CodeLayout::num_logical_qubits() const {
  int rank_total = 0;
  for (auto t : {StabilizerType::Plaquette, StabilizerType::Vertex}) {
    std::vector<BitVec> rows;
    for (const auto& s : stabilizers(t)) {
      if (!s.enabled) continue;
      rows.push_back(BitVec::from_indices(static_cast<std::size_t>(num_qubits()), s.support));
    }
    rank_total += gf2::rank(std::move(rows));
  }
  return num_active_qubits() - rank_total;
}

namespace {

// Original support of a stabilizer in the hole-free lattice.
std::vector<int> original_support(const CodeLayout& L, StabilizerRef s) {
  std::vector<int> out;
  const Coord at = L.stabilizer(s).at;
  for (auto [dr, dc] : {std::pair{-1, 0}, {0, -1}, {0, 1}, {1, 0}}) {
    const int q = L.qubit_at({at.row + dr, at.col + dc});
    if (q >= 0) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<int> footprint(const CodeLayout& L, const HoleRegion& h) {
  std::set<int> out;
  for (int s : h.disabled_stabilizers) {
    for (int q : original_support(L, {region_type(h.kind), s})) out.insert(q);
  }
  return out;
}

}  // namespace

CodeLayout CodeLayout::with_hole(HoleKind kind, const std::vector<StabilizerRef>& region) const {
  if (region.empty()) throw std::invalid_argument("hole region is empty");
  const StabilizerType t = region_type(kind);
  std::set<int> members;
  for (const auto& ref : region) {
    if (ref.type != t) {
      throw std::invalid_argument(std::string("a ") + to_string(kind) + " hole must be made of " + to_string(t) + "s");
    }
    if (ref.index < 0 || ref.index >= num_stabilizers(t)) throw std::out_of_range("hole stabilizer index out of range");
    if (!members.insert(ref.index).second) throw std::invalid_argument("hole region lists a stabilizer twice");
  }

  std::set<int> others;
  for (const auto& h : holes_) {
    auto fp = footprint(*this, h);
    others.insert(fp.begin(), fp.end());
  }
  for (int s : members) {
    const StabilizerRef ref{t, s};
    if (!stabilizer(ref).enabled) throw std::invalid_argument("hole region overlaps an existing hole");
    const auto support = original_support(*this, ref);
    if (support.size() != 4) throw std::invalid_argument("hole region touches the boundary");
    for (int q : support) {
      if (is_boundary_qubit(t, q)) throw std::invalid_argument("hole region touches the boundary");
      if (others.count(q)) throw std::invalid_argument("hole region touches another hole");
    }
  }

  // Connectivity through shared qubits.
  {
    std::set<int> seen{*members.begin()};
    std::deque<int> queue{*members.begin()};
    while (!queue.empty()) {
      const int s = queue.front();
      queue.pop_front();
      for (int q : original_support(*this, {t, s})) {
        for (int nb : adjacent(t, q)) {
          if (members.count(nb) && seen.insert(nb).second) queue.push_back(nb);
        }
      }
    }
    if (seen.size() != members.size()) throw std::invalid_argument("hole region is not connected");
  }

  CodeLayout out = *this;
  HoleRegion hole;
  hole.kind = kind;
  hole.disabled_stabilizers.assign(members.begin(), members.end());
  for (int s : members) out.stabilizers_mut(t)[static_cast<std::size_t>(s)].enabled = false;
  for (int q : footprint(out, hole)) {
    const auto& adj = adjacent(t, q);
    if (std::all_of(adj.begin(), adj.end(), [&](int s) { return members.count(s) > 0; })) {
      hole.removed_qubits.push_back(q);
      out.removed_[static_cast<std::size_t>(q)] = true;
    }
  }
  out.holes_.push_back(std::move(hole));
  out.finalize_holes();
  return out;
}

std::vector<Stabilizer>& CodeLayout::stabilizers_mut(StabilizerType t) {
  return t == StabilizerType::Plaquette ? plaquettes_ : vertices_;
}

void CodeLayout::finalize_holes() {
  // Supports: original minus removed; the opposite type empties out inside holes.
  for (auto t : {StabilizerType::Plaquette, StabilizerType::Vertex}) {
    auto& stabs = stabilizers_mut(t);
    for (std::size_t s = 0; s < stabs.size(); ++s) {
      auto support = original_support(*this, {t, static_cast<int>(s)});
      std::erase_if(support, [&](int q) { return removed_[static_cast<std::size_t>(q)]; });
      stabs[s].support = std::move(support);
    }
  }
  std::vector<std::set<int>> prints;
  for (const auto& h : holes_) prints.push_back(footprint(*this, h));

  for (std::size_t hi = 0; hi < holes_.size(); ++hi) {
    HoleRegion& h = holes_[hi];
    const StabilizerType t = region_type(h.kind);
    const StabilizerType dual = other(t);
    std::set<int> members(h.disabled_stabilizers.begin(), h.disabled_stabilizers.end());

    h.emptied_stabilizers.clear();
    auto& duals = stabilizers_mut(dual);
    for (std::size_t s = 0; s < duals.size(); ++s) {
      const auto orig = original_support(*this, {dual, static_cast<int>(s)});
      const bool all_removed = std::all_of(orig.begin(), orig.end(), [&](int q) {
        return std::binary_search(h.removed_qubits.begin(), h.removed_qubits.end(), q);
      });
      if (all_removed) {
        duals[s].enabled = false;
        h.emptied_stabilizers.push_back(static_cast<int>(s));
      }
    }

    // Loop: qubits touched by an odd number of region stabilizers.
    std::set<int> loop;
    for (int s : members) {
      for (int q : original_support(*this, {t, s})) {
        if (!loop.insert(q).second) loop.erase(q);
      }
    }
    h.logical_loop.assign(loop.begin(), loop.end());

    // Walk the loop: consecutive qubits share a dual stabilizer.
    h.perimeter.clear();
    std::set<int> remaining = loop;
    int cur = remaining.empty() ? -1 : *remaining.begin();
    while (cur >= 0) {
      h.perimeter.push_back(cur);
      remaining.erase(cur);
      int next = -1;
      for (int s : adjacent(dual, cur)) {
        for (int q : original_support(*this, {dual, s})) {
          if (remaining.count(q) && (next < 0 || q < next)) next = q;
        }
      }
      if (next < 0 && !remaining.empty()) next = *remaining.begin();
      cur = next;
    }

    // Hole-to-edge string. Smooth holes send their m sideways (rows), rough
    // holes send their e vertically (columns).
    std::set<int> blocked;
    for (std::size_t hj = 0; hj < holes_.size(); ++hj) blocked.insert(prints[hj].begin(), prints[hj].end());
    const int n = grid_size();
    std::vector<int> best;
    auto try_path = [&](Coord start, int dr, int dc) {
      std::vector<int> path;
      Coord at{start.row + dr, start.col + dc};
      const int first = qubit_at(at);
      if (first < 0 || !loop.count(first)) return;
      path.push_back(first);
      at = {at.row + 2 * dr, at.col + 2 * dc};
      while (at.row >= 0 && at.col >= 0 && at.row < n && at.col < n) {
        const int q = qubit_at(at);
        if (q < 0 || blocked.count(q)) return;
        path.push_back(q);
        at = {at.row + 2 * dr, at.col + 2 * dc};
      }
      if (best.empty() || path.size() < best.size()) best = path;
    };
    const auto& stabs = stabilizers(t);
    for (int s : members) {
      const Coord at = stabs[static_cast<std::size_t>(s)].at;
      if (t == StabilizerType::Plaquette) {
        try_path(at, 0, -1);
      } else {
        try_path(at, -1, 0);
      }
    }
    for (int s : members) {
      const Coord at = stabs[static_cast<std::size_t>(s)].at;
      if (t == StabilizerType::Plaquette) {
        try_path(at, 0, 1);
      } else {
        try_path(at, 1, 0);
      }
    }
    if (best.empty()) throw std::invalid_argument("no hole-to-edge string avoids the other holes");
    std::sort(best.begin(), best.end());
    h.logical_string = std::move(best);
  }
}

namespace {

int half_abs(int x) { return (x < 0 ? -x : x) / 2; }

}  // namespace

int CodeLayout::lattice_distance(StabilizerRef a, StabilizerRef b) const {
  if (a.type != b.type) throw std::invalid_argument("lattice distance between mixed defect types");
  if (!has_holes()) {
    const Coord x = stabilizer(a).at;
    const Coord y = stabilizer(b).at;
    return half_abs(x.row - y.row) + half_abs(x.col - y.col);
  }
  if (a == b) return 0;
  const auto path = bfs_path(a, &b);
  if (path.empty()) return -1;
  return static_cast<int>(path.size());
}

int CodeLayout::boundary_distance(StabilizerRef a) const {
  if (!has_holes()) {
    const Coord x = stabilizer(a).at;
    const int n = grid_size();
    // m anyons leave left/right, e anyons leave top/bottom.
    const int pos = a.type == StabilizerType::Plaquette ? x.col : x.row;
    return std::min((pos + 1) / 2, (n - pos) / 2);
  }
  const auto path = bfs_path(a, nullptr);
  if (path.empty()) return -1;
  return static_cast<int>(path.size());
}

std::vector<int> CodeLayout::shortest_path(StabilizerRef a, StabilizerRef b) const {
  if (a.type != b.type) throw std::invalid_argument("path between mixed defect types");
  if (a == b) return {};
  if (has_holes()) return bfs_path(a, &b);
  // Along the row of `a`, then along the column of `b`.
  std::vector<int> out;
  const Coord x = stabilizer(a).at;
  const Coord y = stabilizer(b).at;
  const int c0 = std::min(x.col, y.col);
  const int c1 = std::max(x.col, y.col);
  for (int c = c0 + 1; c < c1; c += 2) out.push_back(qubit_at({x.row, c}));
  const int r0 = std::min(x.row, y.row);
  const int r1 = std::max(x.row, y.row);
  for (int r = r0 + 1; r < r1; r += 2) out.push_back(qubit_at({r, y.col}));
  return out;
}

std::vector<int> CodeLayout::boundary_path(StabilizerRef a) const {
  if (has_holes()) return bfs_path(a, nullptr);
  std::vector<int> out;
  const Coord x = stabilizer(a).at;
  const int n = grid_size();
  if (a.type == StabilizerType::Plaquette) {
    if ((x.col + 1) / 2 <= (n - x.col) / 2) {
      for (int c = x.col - 1; c >= 0; c -= 2) out.push_back(qubit_at({x.row, c}));
    } else {
      for (int c = x.col + 1; c < n; c += 2) out.push_back(qubit_at({x.row, c}));
    }
  } else {
    if ((x.row + 1) / 2 <= (n - x.row) / 2) {
      for (int r = x.row - 1; r >= 0; r -= 2) out.push_back(qubit_at({r, x.col}));
    } else {
      for (int r = x.row + 1; r < n; r += 2) out.push_back(qubit_at({r, x.col}));
    }
  }
  return out;
}

// Breadth-first search over enabled stabilizers of one type. Active qubits
// joining two enabled stabilizers are edges; active outer-boundary qubits lead
// to the boundary; hole interiors are obstacles. `b == nullptr` targets the
// boundary. Returns the qubits of the path, or empty if unreachable.
std::vector<int> CodeLayout::bfs_path(StabilizerRef a, const StabilizerRef* b) const {
  const StabilizerType t = a.type;
  const auto& stabs = stabilizers(t);
  if (!stabs.at(static_cast<std::size_t>(a.index)).enabled) return {};
  const int boundary_node = static_cast<int>(stabs.size());
  const int target = b ? b->index : boundary_node;
  std::vector<int> parent_node(stabs.size() + 1, -2);
  std::vector<int> parent_qubit(stabs.size() + 1, -1);
  std::deque<int> queue{a.index};
  parent_node[static_cast<std::size_t>(a.index)] = -1;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    if (s == target) break;
    for (int q : stabs[static_cast<std::size_t>(s)].support) {
      const auto& adj = adjacent(t, q);
      int nb;
      if (adj.size() == 1) {
        nb = boundary_node;
      } else {
        nb = adj[0] == s ? adj[1] : adj[0];
        if (!stabs[static_cast<std::size_t>(nb)].enabled) continue;
      }
      if (parent_node[static_cast<std::size_t>(nb)] != -2) continue;
      parent_node[static_cast<std::size_t>(nb)] = s;
      parent_qubit[static_cast<std::size_t>(nb)] = q;
      if (nb != boundary_node) queue.push_back(nb);
    }
  }
  if (parent_node[static_cast<std::size_t>(target)] == -2) return {};
  std::vector<int> path;
  for (int v = target; parent_node[static_cast<std::size_t>(v)] != -1; v = parent_node[static_cast<std::size_t>(v)]) {
    path.push_back(parent_qubit[static_cast<std::size_t>(v)]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

nlohmann::json CodeLayout::to_json() const {
  using nlohmann::json;
  json j;
  j["distance"] = distance_;
  j["grid_size"] = grid_size();
  j["indexing"] =
      "row-major over a doubled grid of side 2d-1: qubits at (r+c) even, plaquettes at (even r, odd c), "
      "vertices at (odd r, even c)";
  j["boundaries"] = {{"left", "smooth"}, {"right", "smooth"}, {"top", "rough"}, {"bottom", "rough"}};
  json qubits = json::array();
  for (std::size_t q = 0; q < qubit_coords_.size(); ++q) {
    qubits.push_back({{"index", q},
                      {"row", qubit_coords_[q].row},
                      {"col", qubit_coords_[q].col},
                      {"removed", static_cast<bool>(removed_[q])}});
  }
  j["qubits"] = std::move(qubits);
  auto dump_stabs = [](const std::vector<Stabilizer>& stabs) {
    json arr = json::array();
    for (std::size_t s = 0; s < stabs.size(); ++s) {
      arr.push_back({{"index", s},
                     {"row", stabs[s].at.row},
                     {"col", stabs[s].at.col},
                     {"support", stabs[s].support},
                     {"enabled", stabs[s].enabled}});
    }
    return arr;
  };
  j["plaquettes"] = dump_stabs(plaquettes_);
  j["vertices"] = dump_stabs(vertices_);
  j["logical_z"] = logical_z_;
  j["logical_x"] = logical_x_;
  json holes = json::array();
  for (const auto& h : holes_) {
    holes.push_back({{"kind", to_string(h.kind)},
                     {"disabled_stabilizers", h.disabled_stabilizers},
                     {"emptied_stabilizers", h.emptied_stabilizers},
                     {"removed_qubits", h.removed_qubits},
                     {"perimeter", h.perimeter},
                     {"logical_loop", h.logical_loop},
                     {"logical_string", h.logical_string}});
  }
  j["holes"] = std::move(holes);
  j["num_logical_qubits"] = num_logical_qubits();
  return j;
}

}  // namespace planar
