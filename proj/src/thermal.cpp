#include "planar/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace planar::thermal {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string describe(const SystemSpec& spec) {
  return std::visit(Overloaded{
                        [](const Ising1D& s) { return fmt::format("ising1d(L={}, J={}, {})", s.L, s.J, s.periodic ? "periodic" : "open"); },
                        [](const Ising2D& s) { return fmt::format("ising2d(L={}, J={}, {})", s.L, s.J, s.periodic ? "periodic" : "open"); },
                        [](const ToricCode& s) { return fmt::format("toric(L={}, J_s={}, J_p={})", s.L, s.J_s, s.J_p); },
                    },
                    spec);
}

int linear_size(const SystemSpec& spec) {
  return std::visit([](const auto& s) { return s.L; }, spec);
}

ClassicalSystem::ClassicalSystem(SystemSpec spec) : spec_(spec) {
  std::visit(Overloaded{
                 [&](const Ising1D& s) {
                   if (s.L < 2) throw std::invalid_argument("chain needs L >= 2");
                   neighbours_.resize(static_cast<std::size_t>(s.L));
                   for (int i = 0; i + 1 < s.L; ++i) {
                     neighbours_[static_cast<std::size_t>(i)].push_back(i + 1);
                     neighbours_[static_cast<std::size_t>(i + 1)].push_back(i);
                   }
                   if (s.periodic && s.L > 2) {
                     neighbours_[0].push_back(s.L - 1);
                     neighbours_[static_cast<std::size_t>(s.L - 1)].push_back(0);
                   }
                 },
                 [&](const Ising2D& s) {
                   if (s.L < 2) throw std::invalid_argument("lattice needs L >= 2");
                   const int L = s.L;
                   neighbours_.resize(static_cast<std::size_t>(L * L));
                   auto bond = [&](int a, int b) {
                     neighbours_[static_cast<std::size_t>(a)].push_back(b);
                     neighbours_[static_cast<std::size_t>(b)].push_back(a);
                   };
                   for (int r = 0; r < L; ++r) {
                     for (int c = 0; c < L; ++c) {
                       if (c + 1 < L) bond(r * L + c, r * L + c + 1);
                       else if (s.periodic && L > 2) bond(r * L + c, r * L);
                       if (r + 1 < L) bond(r * L + c, (r + 1) * L + c);
                       else if (s.periodic && L > 2) bond(r * L + c, c);
                     }
                   }
                 },
                 [&](const ToricCode& s) {
                   if (s.L < 2) throw std::invalid_argument("torus needs L >= 2");
                   const int L = s.L;
                   plaquette_edges_.resize(static_cast<std::size_t>(L * L));
                   edge_plaquettes_.assign(static_cast<std::size_t>(2 * L * L), {-1, -1});
                   for (int r = 0; r < L; ++r) {
                     for (int c = 0; c < L; ++c) {
                       const int p = r * L + c;
                       const std::array<int, 4> e{r * L + c, ((r + 1) % L) * L + c, L * L + r * L + c,
                                                  L * L + r * L + (c + 1) % L};
                       plaquette_edges_[static_cast<std::size_t>(p)] = e;
                       for (int edge : e) {
                         auto& slot = edge_plaquettes_[static_cast<std::size_t>(edge)];
                         (slot[0] < 0 ? slot[0] : slot[1]) = p;
                       }
                     }
                   }
                 },
             },
             spec_);

  const bool toric = std::holds_alternative<ToricCode>(spec_);
  const std::size_t n = toric ? edge_plaquettes_.size() : neighbours_.size();
  spins_.assign(n, 1);
  magnetization_ = static_cast<int>(n);
  affected_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = affected_[i];
    if (toric) {
      for (int p : edge_plaquettes_[i])
        for (int e : plaquette_edges_[static_cast<std::size_t>(p)])
          if (e != static_cast<int>(i)) a.push_back(e);
    } else {
      a = neighbours_[i];
    }
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

void ClassicalSystem::check(int i) const {
  if (i < 0 || i >= num_spins()) throw std::out_of_range("spin index out of range");
}

void ClassicalSystem::flip(int i) {
  check(i);
  auto& s = spins_[static_cast<std::size_t>(i)];
  s = static_cast<std::int8_t>(-s);
  magnetization_ += 2 * s;
}

double ClassicalSystem::coupling() const {
  return std::visit(Overloaded{
                        [](const Ising1D& s) { return s.J; },
                        [](const Ising2D& s) { return s.J; },
                        [](const ToricCode& s) { return s.J_p; },
                    },
                    spec_);
}

int ClassicalSystem::local_sum(int i) const {
  check(i);
  const int s = spins_[static_cast<std::size_t>(i)];
  int sum = 0;
  if (std::holds_alternative<ToricCode>(spec_)) {
    for (int p : edge_plaquettes_[static_cast<std::size_t>(i)]) {
      int b = 1;
      for (int e : plaquette_edges_[static_cast<std::size_t>(p)]) b *= spins_[static_cast<std::size_t>(e)];
      sum += b;
    }
    return sum;
  }
  for (int j : neighbours_[static_cast<std::size_t>(i)]) sum += spins_[static_cast<std::size_t>(j)];
  return s * sum;
}

double ClassicalSystem::delta_energy(int i) const { return 2.0 * coupling() * local_sum(i); }

double ClassicalSystem::energy() const {
  if (const auto* t = std::get_if<ToricCode>(&spec_)) {
    double e = -t->J_s * static_cast<double>(t->L * t->L);
    for (const auto& edges : plaquette_edges_) {
      int b = 1;
      for (int x : edges) b *= spins_[static_cast<std::size_t>(x)];
      e -= t->J_p * b;
    }
    return e;
  }
  long long bonds = 0;
  for (std::size_t i = 0; i < neighbours_.size(); ++i)
    for (int j : neighbours_[i])
      if (static_cast<std::size_t>(j) > i) bonds += spins_[i] * spins_[static_cast<std::size_t>(j)];
  return -coupling() * static_cast<double>(bonds);
}

double ClassicalSystem::ground_energy() const {
  if (const auto* t = std::get_if<ToricCode>(&spec_)) return -(t->J_s + t->J_p) * static_cast<double>(t->L * t->L);
  std::size_t bonds = 0;
  for (const auto& nb : neighbours_) bonds += nb.size();
  return -coupling() * static_cast<double>(bonds / 2);
}

std::vector<int> ClassicalSystem::defects() const {
  std::vector<int> out;
  for (std::size_t p = 0; p < plaquette_edges_.size(); ++p) {
    int b = 1;
    for (int e : plaquette_edges_[p]) b *= spins_[static_cast<std::size_t>(e)];
    if (b < 0) out.push_back(static_cast<int>(p));
  }
  return out;
}

double barrier(const SystemSpec& spec, const FlipPath& path) {
  ClassicalSystem sys(spec);
  const double ground = sys.energy();
  double e = ground;
  double worst = 0.0;
  for (int i : path) {
    e += sys.delta_energy(i);
    sys.flip(i);
    worst = std::max(worst, e - ground);
  }
  return worst;
}

FlipPath chain_sweep(const Ising1D& spec, int start) {
  if (start < 0 || start >= spec.L) throw std::out_of_range("sweep start out of range");
  FlipPath p;
  for (int i = start; i < spec.L; ++i) p.push_back(i);
  for (int i = start - 1; i >= 0; --i) p.push_back(i);
  return p;
}

FlipPath raster_path(const Ising2D& spec) {
  FlipPath p;
  for (int i = 0; i < spec.L * spec.L; ++i) p.push_back(i);
  return p;
}

FlipPath toric_logical_path(const ToricCode& spec) {
  FlipPath p;
  for (int r = 1; r < spec.L; ++r) p.push_back(r * spec.L);
  p.push_back(0);
  return p;
}

double metropolis_rate(double beta, double delta_energy) {
  return delta_energy <= 0.0 ? 1.0 : std::exp(-beta * delta_energy);
}

KineticMonteCarlo::KineticMonteCarlo(ClassicalSystem& system, double beta) : sys_(system) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  for (int k = -4; k <= 4; ++k) rates_[static_cast<std::size_t>(k + 4)] = metropolis_rate(beta, 2.0 * sys_.coupling() * k);
  const int n = sys_.num_spins();
  cls_.assign(static_cast<std::size_t>(n), 0);
  pos_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) place(i);
}

void KineticMonteCarlo::place(int i) {
  const int k = sys_.local_sum(i) + 4;
  auto& m = members_[static_cast<std::size_t>(k)];
  cls_[static_cast<std::size_t>(i)] = k;
  pos_[static_cast<std::size_t>(i)] = static_cast<int>(m.size());
  m.push_back(i);
}

void KineticMonteCarlo::unplace(int i) {
  auto& m = members_[static_cast<std::size_t>(cls_[static_cast<std::size_t>(i)])];
  const int at = pos_[static_cast<std::size_t>(i)];
  const int last = m.back();
  m[static_cast<std::size_t>(at)] = last;
  pos_[static_cast<std::size_t>(last)] = at;
  m.pop_back();
}

double KineticMonteCarlo::total_rate() const {
  double r = 0.0;
  for (std::size_t k = 0; k < 9; ++k) r += rates_[k] * static_cast<double>(members_[k].size());
  return r;
}

std::optional<KineticMonteCarlo::Event> KineticMonteCarlo::step(Rng& rng) {
  const double total = total_rate();
  if (!(total > 0.0)) return std::nullopt;
  Event ev;
  ev.dt = rng.exponential(total);
  double u = rng.uniform() * total;
  std::size_t k = 0;
  for (; k < 9; ++k) {
    const double w = rates_[k] * static_cast<double>(members_[k].size());
    if (u < w) break;
    u -= w;
  }
  if (k == 9) {
    // Rounding left u at the very top; take the last populated class.
    k = 8;
    while (members_[k].empty() || rates_[k] == 0.0) --k;
  }
  const auto& m = members_[k];
  ev.spin = m[static_cast<std::size_t>(rng.below(m.size()))];
  ev.delta_energy = sys_.delta_energy(ev.spin);
  unplace(ev.spin);
  for (int j : sys_.affected(ev.spin)) unplace(j);
  sys_.flip(ev.spin);
  place(ev.spin);
  for (int j : sys_.affected(ev.spin)) place(j);
  return ev;
}

bool metropolis_step(ClassicalSystem& system, double beta, Rng& rng, int* chosen) {
  const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(system.num_spins())));
  if (chosen) *chosen = i;
  if (rng.uniform() < metropolis_rate(beta, system.delta_energy(i))) {
    system.flip(i);
    return true;
  }
  return false;
}

LifetimeSample lifetime_trial(const SystemSpec& spec, const LifetimeOptions& opt, Rng& rng) {
  if (!(opt.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  ClassicalSystem sys(spec);
  KineticMonteCarlo kmc(sys, opt.beta);
  const bool toric = std::holds_alternative<ToricCode>(spec);
  if (toric && !(opt.first_checkpoint > 0.0 && opt.checkpoint_factor > 1.0)) {
    throw std::invalid_argument("checkpoints need a positive start and a factor above 1");
  }
  LifetimeSample out;
  double t = 0.0;
  double next = opt.first_checkpoint;
  for (;;) {
    auto ev = kmc.step(rng);
    const double t_next = ev ? t + ev->dt : opt.horizon;
    if (toric) {
      // The configuration is constant between events.
      while (next <= t_next && next < opt.horizon) {
        if (toric_readout_fails(sys)) {
          out.time = next;
          return out;
        }
        next *= opt.checkpoint_factor;
      }
    }
    if (!ev || t_next >= opt.horizon) {
      out.time = opt.horizon;
      out.censored = true;
      return out;
    }
    t = t_next;
    ++out.events;
    if (!toric && sys.magnetization() <= 0) {
      out.time = t;
      return out;
    }
  }
}

}  // namespace planar::thermal
