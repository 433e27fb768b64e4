#include "planar/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace planar {

namespace {

// Power of i picked up by multiplying Pauli rows (x1,z1)(x2,z2), summed over
// all qubits, mod 4.
int phase_exponent(const BitVec& x1, const BitVec& z1, const BitVec& x2, const BitVec& z2) {
  long long plus = 0;
  long long minus = 0;
  const auto& a = x1.words();
  const auto& b = z1.words();
  const auto& c = x2.words();
  const auto& d = z2.words();
  for (std::size_t w = 0; w < a.size(); ++w) {
    const std::uint64_t X = a[w] & ~b[w];
    const std::uint64_t Y = a[w] & b[w];
    const std::uint64_t Z = ~a[w] & b[w];
    const std::uint64_t p = (Y & d[w] & ~c[w]) | (X & d[w] & c[w]) | (Z & c[w] & ~d[w]);
    const std::uint64_t m = (Y & c[w] & ~d[w]) | (X & d[w] & ~c[w]) | (Z & c[w] & d[w]);
    plus += std::popcount(p);
    minus += std::popcount(m);
  }
  return static_cast<int>(((plus - minus) % 4 + 4) % 4);
}

}  // namespace

PauliString PauliString::on(int n, const std::vector<int>& qubits, char pauli) {
  PauliString p(n);
  for (int q : qubits) {
    const auto i = static_cast<std::size_t>(q);
    if (q < 0 || q >= n) throw std::out_of_range("Pauli qubit out of range");
    if (pauli == 'X' || pauli == 'Y') p.x.flip(i);
    if (pauli == 'Z' || pauli == 'Y') p.z.flip(i);
    if (pauli != 'X' && pauli != 'Y' && pauli != 'Z') throw std::invalid_argument("Pauli must be X, Y or Z");
  }
  return p;
}

PauliString PauliString::parse(const std::string& text) {
  std::size_t start = 0;
  bool neg = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    neg = text[0] == '-';
    start = 1;
  }
  PauliString p(static_cast<int>(text.size() - start));
  p.negative = neg;
  for (std::size_t i = start; i < text.size(); ++i) {
    const std::size_t q = i - start;
    switch (text[i]) {
      case 'I':
      case '_':
        break;
      case 'X':
        p.x.set(q);
        break;
      case 'Y':
        p.x.set(q);
        p.z.set(q);
        break;
      case 'Z':
        p.z.set(q);
        break;
      default:
        throw std::invalid_argument("bad Pauli character");
    }
  }
  return p;
}

std::string PauliString::str() const {
  std::string s(1, negative ? '-' : '+');
  for (std::size_t q = 0; q < x.size(); ++q) {
    const bool a = x.get(q);
    const bool b = z.get(q);
    s.push_back(a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I'));
  }
  return s;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (!a.commutes_with(b)) throw std::invalid_argument("product of anticommuting Paulis is not Hermitian");
  PauliString out = a;
  out.x ^= b.x;
  out.z ^= b.z;
  const int e = phase_exponent(a.x, a.z, b.x, b.z);
  out.negative = a.negative ^ b.negative ^ (e == 2);
  return out;
}

Tableau::Tableau(int n) : n_(n), r_(static_cast<std::size_t>(2 * n), 0) {
  if (n < 1) throw std::invalid_argument("tableau needs at least one qubit");
  xs_.assign(static_cast<std::size_t>(2 * n), BitVec(static_cast<std::size_t>(n)));
  zs_.assign(static_cast<std::size_t>(2 * n), BitVec(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    xs_[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(i));
    zs_[static_cast<std::size_t>(n + i)].set(static_cast<std::size_t>(i));
  }
}

void Tableau::h(int q) {
  const auto b = static_cast<std::size_t>(q);
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const bool x = xs_[i].get(b);
    const bool z = zs_[i].get(b);
    r_[i] ^= static_cast<std::uint8_t>(x && z);
    xs_[i].set(b, z);
    zs_[i].set(b, x);
  }
}

void Tableau::s(int q) {
  const auto b = static_cast<std::size_t>(q);
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const bool x = xs_[i].get(b);
    const bool z = zs_[i].get(b);
    r_[i] ^= static_cast<std::uint8_t>(x && z);
    zs_[i].set(b, z != x);
  }
}

void Tableau::x(int q) {
  const auto b = static_cast<std::size_t>(q);
  for (std::size_t i = 0; i < r_.size(); ++i) r_[i] ^= static_cast<std::uint8_t>(zs_[i].get(b));
}

void Tableau::z(int q) {
  const auto b = static_cast<std::size_t>(q);
  for (std::size_t i = 0; i < r_.size(); ++i) r_[i] ^= static_cast<std::uint8_t>(xs_[i].get(b));
}

void Tableau::y(int q) {
  const auto b = static_cast<std::size_t>(q);
  for (std::size_t i = 0; i < r_.size(); ++i) r_[i] ^= static_cast<std::uint8_t>(xs_[i].get(b) != zs_[i].get(b));
}

void Tableau::cx(int control, int target) {
  if (control == target) throw std::invalid_argument("CNOT needs distinct qubits");
  const auto a = static_cast<std::size_t>(control);
  const auto b = static_cast<std::size_t>(target);
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const bool xa = xs_[i].get(a);
    const bool za = zs_[i].get(a);
    const bool xb = xs_[i].get(b);
    const bool zb = zs_[i].get(b);
    r_[i] ^= static_cast<std::uint8_t>(xa && zb && (xb == za));
    xs_[i].set(b, xb != xa);
    zs_[i].set(a, za != zb);
  }
}

void Tableau::cz(int a, int b) {
  h(b);
  cx(a, b);
  h(b);
}

void Tableau::apply(const PauliString& p) {
  // X flips rows containing Z there, Z flips rows containing X.
  for (std::size_t i = 0; i < r_.size(); ++i) r_[i] ^= static_cast<std::uint8_t>(xs_[i].dot(p.z) != zs_[i].dot(p.x));
}

bool Tableau::anticommutes(int row, const PauliString& p) const {
  const auto i = static_cast<std::size_t>(row);
  return xs_[i].dot(p.z) != zs_[i].dot(p.x);
}

void Tableau::rowsum(int h, int i) {
  const auto a = static_cast<std::size_t>(h);
  const auto b = static_cast<std::size_t>(i);
  const int e = phase_exponent(xs_[b], zs_[b], xs_[a], zs_[a]);
  r_[a] = static_cast<std::uint8_t>(((2 * r_[a] + 2 * r_[b] + e) % 4) != 0);
  xs_[a] ^= xs_[b];
  zs_[a] ^= zs_[b];
}

Measurement Tableau::measure(const PauliString& p, Rng& rng, std::optional<int> forced) {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli length does not match tableau");
  if (p.is_identity()) return {p.negative ? -1 : 1, true};
  int pivot = -1;
  for (int i = n_; i < 2 * n_; ++i) {
    if (anticommutes(i, p)) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) return {expectation(p), true};

  for (int i = 0; i < 2 * n_; ++i)
    if (i != pivot && anticommutes(i, p)) rowsum(i, pivot);
  const auto d = static_cast<std::size_t>(pivot - n_);
  const auto s = static_cast<std::size_t>(pivot);
  xs_[d] = xs_[s];
  zs_[d] = zs_[s];
  r_[d] = r_[s];
  int outcome;
  if (forced) {
    if (*forced != 1 && *forced != -1) throw std::invalid_argument("forced outcome must be +1 or -1");
    outcome = *forced;
  } else {
    outcome = rng.bernoulli(0.5) ? -1 : 1;
  }
  xs_[s] = p.x;
  zs_[s] = p.z;
  // Stabilizer row holds (-1)^r P_unsigned with eigenvalue outcome for the signed P.
  r_[s] = static_cast<std::uint8_t>((outcome == -1) != p.negative);
  return {outcome, false};
}

void Tableau::reset(int q, Rng& rng) {
  if (measure_z(q, rng).outcome == -1) x(q);
}

int Tableau::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli length does not match tableau");
  for (int i = n_; i < 2 * n_; ++i)
    if (anticommutes(i, p)) return 0;
  // p is (up to sign) the product of the stabilizers paired with the
  // destabilizers it anticommutes with.
  BitVec sx(static_cast<std::size_t>(n_));
  BitVec sz(static_cast<std::size_t>(n_));
  int r = 0;
  for (int i = 0; i < n_; ++i) {
    if (!anticommutes(i, p)) continue;
    const auto b = static_cast<std::size_t>(n_ + i);
    const int e = phase_exponent(xs_[b], zs_[b], sx, sz);
    r = (2 * r + 2 * r_[b] + e) % 4 != 0;
    sx ^= xs_[b];
    sz ^= zs_[b];
  }
  const bool negative = (r != 0) != p.negative;
  return negative ? -1 : 1;
}

std::vector<PauliString> Tableau::stabilizers() const {
  std::vector<PauliString> out;
  for (int i = n_; i < 2 * n_; ++i) {
    PauliString p;
    p.x = xs_[static_cast<std::size_t>(i)];
    p.z = zs_[static_cast<std::size_t>(i)];
    p.negative = r_[static_cast<std::size_t>(i)] != 0;
    out.push_back(std::move(p));
  }
  return out;
}

void run(Tableau& t, const Circuit& c) {
  for (const auto& g : c) {
    switch (g.kind) {
      case Gate::H:
        t.h(g.a);
        break;
      case Gate::S:
        t.s(g.a);
        break;
      case Gate::X:
        t.x(g.a);
        break;
      case Gate::Y:
        t.y(g.a);
        break;
      case Gate::Z:
        t.z(g.a);
        break;
      case Gate::CX:
        t.cx(g.a, g.b);
        break;
      case Gate::CZ:
        t.cz(g.a, g.b);
        break;
    }
  }
}

}  // namespace planar
