#include "planar/blossom.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace planar {

namespace {

// Maximum-weight matching on a dense graph with strictly positive weights
// (weight 0 = no edge). Nodes are 1..n, blossoms n+1..2n. Dual variables are
// kept doubled so every slack stays an integer.
class DenseBlossom {
 public:
  explicit DenseBlossom(int n)
      : n_(n),
        size_(2 * n + 1),
        g_(static_cast<std::size_t>(size_ * size_)),
        lab_(static_cast<std::size_t>(size_), 0),
        match_(static_cast<std::size_t>(size_), 0),
        slack_(static_cast<std::size_t>(size_), 0),
        st_(static_cast<std::size_t>(size_), 0),
        pa_(static_cast<std::size_t>(size_), 0),
        s_(static_cast<std::size_t>(size_), 0),
        vis_(static_cast<std::size_t>(size_), 0),
        flower_from_(static_cast<std::size_t>(size_ * (n + 1)), 0),
        flower_(static_cast<std::size_t>(size_)) {
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) edge(u, v) = {u, v, 0};
  }

  void set_weight(int u, int v, std::int64_t w) {
    edge(u, v).w = w;
    edge(v, u).w = w;
  }

  std::vector<int> solve() {
    n_x_ = n_;
    for (int u = 0; u <= n_; ++u) {
      st_[idx(u)] = u;
      flower_[idx(u)].clear();
    }
    std::int64_t w_max = 0;
    for (int u = 1; u <= n_; ++u) {
      for (int v = 1; v <= n_; ++v) {
        from(u, v) = (u == v ? u : 0);
        w_max = std::max(w_max, edge(u, v).w);
      }
    }
    for (int u = 1; u <= n_; ++u) lab_[idx(u)] = w_max;
    while (augment_once()) {
    }
    std::vector<int> mate(static_cast<std::size_t>(n_), -1);
    for (int u = 1; u <= n_; ++u)
      if (match_[idx(u)]) mate[idx(u - 1)] = match_[idx(u)] - 1;
    return mate;
  }

 private:
  struct Edge {
    int u, v;
    std::int64_t w;
  };

  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }
  Edge& edge(int u, int v) { return g_[static_cast<std::size_t>(u * size_ + v)]; }
  int& from(int b, int x) { return flower_from_[static_cast<std::size_t>(b * (n_ + 1) + x)]; }
  std::int64_t dist(const Edge& e) const { return lab_[idx(e.u)] + lab_[idx(e.v)] - e.w * 2; }

  void update_slack(int u, int x) {
    if (!slack_[idx(x)] || dist(edge(u, x)) < dist(edge(slack_[idx(x)], x))) slack_[idx(x)] = u;
  }
  void set_slack(int x) {
    slack_[idx(x)] = 0;
    for (int u = 1; u <= n_; ++u)
      if (edge(u, x).w > 0 && st_[idx(u)] != x && s_[idx(st_[idx(u)])] == 0) update_slack(u, x);
  }
  void q_push(int x) {
    if (x <= n_) {
      q_.push(x);
    } else {
      for (int y : flower_[idx(x)]) q_push(y);
    }
  }
  void set_st(int x, int b) {
    st_[idx(x)] = b;
    if (x > n_)
      for (int y : flower_[idx(x)]) set_st(y, b);
  }
  int get_pr(int b, int xr) {
    auto& fl = flower_[idx(b)];
    const int pr = static_cast<int>(std::find(fl.begin(), fl.end(), xr) - fl.begin());
    if (pr % 2 == 1) {
      std::reverse(fl.begin() + 1, fl.end());
      return static_cast<int>(fl.size()) - pr;
    }
    return pr;
  }
  void set_match(int u, int v) {
    match_[idx(u)] = edge(u, v).v;
    if (u > n_) {
      const Edge e = edge(u, v);
      const int xr = from(u, e.u);
      const int pr = get_pr(u, xr);
      auto& fl = flower_[idx(u)];
      for (int i = 0; i < pr; ++i) set_match(fl[idx(i)], fl[idx(i ^ 1)]);
      set_match(xr, v);
      std::rotate(fl.begin(), fl.begin() + pr, fl.end());
    }
  }
  void augment(int u, int v) {
    for (;;) {
      const int xnv = st_[idx(match_[idx(u)])];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[idx(pa_[idx(xnv)])]);
      u = st_[idx(pa_[idx(xnv)])];
      v = xnv;
    }
  }
  int get_lca(int u, int v) {
    for (++stamp_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[idx(u)] == stamp_) return u;
      vis_[idx(u)] = stamp_;
      u = st_[idx(match_[idx(u)])];
      if (u) u = st_[idx(pa_[idx(u)])];
    }
    return 0;
  }
  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[idx(b)]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[idx(b)] = 0;
    s_[idx(b)] = 0;
    match_[idx(b)] = match_[idx(lca)];
    auto& fl = flower_[idx(b)];
    fl.clear();
    fl.push_back(lca);
    for (int x = u, y; x != lca; x = st_[idx(pa_[idx(y)])]) {
      fl.push_back(x);
      fl.push_back(y = st_[idx(match_[idx(x)])]);
      q_push(y);
    }
    std::reverse(fl.begin() + 1, fl.end());
    for (int x = v, y; x != lca; x = st_[idx(pa_[idx(y)])]) {
      fl.push_back(x);
      fl.push_back(y = st_[idx(match_[idx(x)])]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) {
      edge(b, x).w = 0;
      edge(x, b).w = 0;
    }
    for (int x = 1; x <= n_; ++x) from(b, x) = 0;
    for (int xs : fl) {
      for (int x = 1; x <= n_x_; ++x) {
        if (edge(b, x).w == 0 || dist(edge(xs, x)) < dist(edge(b, x))) {
          edge(b, x) = edge(xs, x);
          edge(x, b) = edge(x, xs);
        }
      }
      for (int x = 1; x <= n_; ++x)
        if (from(xs, x)) from(b, x) = xs;
    }
    set_slack(b);
  }
  void expand_blossom(int b) {
    for (int x : flower_[idx(b)]) set_st(x, x);
    const int xr = from(b, edge(b, pa_[idx(b)]).u);
    const int pr = get_pr(b, xr);
    auto& fl = flower_[idx(b)];
    for (int i = 0; i < pr; i += 2) {
      const int xs = fl[idx(i)];
      const int xns = fl[idx(i + 1)];
      pa_[idx(xs)] = edge(xns, xs).u;
      s_[idx(xs)] = 1;
      s_[idx(xns)] = 0;
      slack_[idx(xs)] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[idx(xr)] = 1;
    pa_[idx(xr)] = pa_[idx(b)];
    for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < fl.size(); ++i) {
      const int xs = fl[i];
      s_[idx(xs)] = -1;
      set_slack(xs);
    }
    st_[idx(b)] = 0;
  }
  bool on_found_edge(const Edge& e) {
    const int u = st_[idx(e.u)];
    const int v = st_[idx(e.v)];
    if (s_[idx(v)] == -1) {
      pa_[idx(v)] = e.u;
      s_[idx(v)] = 1;
      const int nu = st_[idx(match_[idx(v)])];
      slack_[idx(v)] = 0;
      slack_[idx(nu)] = 0;
      s_[idx(nu)] = 0;
      q_push(nu);
    } else if (s_[idx(v)] == 0) {
      const int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }
  bool augment_once() {
    std::fill(s_.begin() + 1, s_.begin() + 1 + n_x_, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + 1 + n_x_, 0);
    q_ = {};
    for (int x = 1; x <= n_x_; ++x) {
      if (st_[idx(x)] == x && !match_[idx(x)]) {
        pa_[idx(x)] = 0;
        s_[idx(x)] = 0;
        q_push(x);
      }
    }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        const int u = q_.front();
        q_.pop();
        if (s_[idx(st_[idx(u)])] == 1) continue;
        for (int v = 1; v <= n_; ++v) {
          if (edge(u, v).w > 0 && st_[idx(u)] != st_[idx(v)]) {
            if (dist(edge(u, v)) == 0) {
              if (on_found_edge(edge(u, v))) return true;
            } else {
              update_slack(u, st_[idx(v)]);
            }
          }
        }
      }
      std::int64_t d = std::numeric_limits<std::int64_t>::max();
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[idx(b)] == b && s_[idx(b)] == 1) d = std::min(d, lab_[idx(b)] / 2);
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[idx(x)] == x && slack_[idx(x)]) {
          if (s_[idx(x)] == -1) {
            d = std::min(d, dist(edge(slack_[idx(x)], x)));
          } else if (s_[idx(x)] == 0) {
            d = std::min(d, dist(edge(slack_[idx(x)], x)) / 2);
          }
        }
      }
      for (int u = 1; u <= n_; ++u) {
        const int su = s_[idx(st_[idx(u)])];
        if (su == 0) {
          if (lab_[idx(u)] <= d) return false;
          lab_[idx(u)] -= d;
        } else if (su == 1) {
          lab_[idx(u)] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[idx(b)] == b) {
          if (s_[idx(st_[idx(b)])] == 0) {
            lab_[idx(b)] += d * 2;
          } else if (s_[idx(st_[idx(b)])] == 1) {
            lab_[idx(b)] -= d * 2;
          }
        }
      }
      q_ = {};
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[idx(x)] == x && slack_[idx(x)] && st_[idx(slack_[idx(x)])] != x &&
            dist(edge(slack_[idx(x)], x)) == 0) {
          if (on_found_edge(edge(slack_[idx(x)], x))) return true;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[idx(b)] == b && s_[idx(b)] == 1 && lab_[idx(b)] == 0) expand_blossom(b);
    }
  }

  int n_;
  int size_;
  int n_x_ = 0;
  int stamp_ = 0;
  std::vector<Edge> g_;
  std::vector<std::int64_t> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<int> flower_from_;
  std::vector<std::vector<int>> flower_;
  std::queue<int> q_;
};

}  // namespace

std::vector<int> min_weight_perfect_matching(int num_nodes, const std::vector<WeightedEdge>& edges) {
  if (num_nodes < 0 || num_nodes % 2 != 0) throw std::invalid_argument("perfect matching needs an even node count");
  if (num_nodes == 0) return {};
  // Lightest weight per node pair.
  std::vector<std::int64_t> best(static_cast<std::size_t>(num_nodes) * static_cast<std::size_t>(num_nodes), -1);
  std::int64_t max_w = 0;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= num_nodes || e.v >= num_nodes) throw std::out_of_range("edge endpoint out of range");
    if (e.weight < 0) throw std::invalid_argument("negative edge weight");
    if (e.u == e.v) continue;
    auto& slot = best[static_cast<std::size_t>(e.u) * static_cast<std::size_t>(num_nodes) + static_cast<std::size_t>(e.v)];
    if (slot < 0 || e.weight < slot) {
      slot = e.weight;
      best[static_cast<std::size_t>(e.v) * static_cast<std::size_t>(num_nodes) + static_cast<std::size_t>(e.u)] = e.weight;
    }
    max_w = std::max(max_w, e.weight);
  }
  // Maximising sum(big - w) with big above any total weight difference forces
  // maximum cardinality first, then minimum weight among perfect matchings.
  const std::int64_t big = static_cast<std::int64_t>(num_nodes / 2) * max_w + 1;
  DenseBlossom solver(num_nodes);
  for (int u = 0; u < num_nodes; ++u) {
    for (int v = u + 1; v < num_nodes; ++v) {
      const std::int64_t w = best[static_cast<std::size_t>(u) * static_cast<std::size_t>(num_nodes) + static_cast<std::size_t>(v)];
      if (w >= 0) solver.set_weight(u + 1, v + 1, big - w);
    }
  }
  auto mate = solver.solve();
  for (int m : mate)
    if (m < 0) throw std::invalid_argument("graph has no perfect matching");
  return mate;
}

std::int64_t matching_weight(const std::vector<int>& mate, const std::vector<WeightedEdge>& edges) {
  const int n = static_cast<int>(mate.size());
  std::vector<std::int64_t> best(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    auto& a = best[static_cast<std::size_t>(e.u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(e.v)];
    auto& b = best[static_cast<std::size_t>(e.v) * static_cast<std::size_t>(n) + static_cast<std::size_t>(e.u)];
    if (a < 0 || e.weight < a) a = b = e.weight;
  }
  std::int64_t total = 0;
  for (int u = 0; u < n; ++u) {
    const int v = mate[static_cast<std::size_t>(u)];
    if (v > u) total += best[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)];
  }
  return total;
}

}  // namespace planar
