#include "planar/pauli_frame.hpp"

#include <stdexcept>

namespace planar {

PauliFrame::PauliFrame(BitVec x, BitVec z) : x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size()) throw std::invalid_argument("frame parts differ in length");
}

PauliFrame PauliFrame::x_on(int num_qubits, const std::vector<int>& qubits) {
  PauliFrame f(num_qubits);
  for (int q : qubits) f.x_.flip(static_cast<std::size_t>(q));
  return f;
}

PauliFrame PauliFrame::z_on(int num_qubits, const std::vector<int>& qubits) {
  PauliFrame f(num_qubits);
  for (int q : qubits) f.z_.flip(static_cast<std::size_t>(q));
  return f;
}

std::size_t PauliFrame::weight() const {
  BitVec either = x_;
  for (std::size_t i = 0; i < z_.size(); ++i)
    if (z_.get(i)) either.set(i);
  return either.count();
}

PauliFrame& PauliFrame::operator^=(const PauliFrame& other) {
  if (other.num_qubits() != num_qubits()) throw std::invalid_argument("frame length mismatch");
  x_ ^= other.x_;
  z_ ^= other.z_;
  return *this;
}

std::string PauliFrame::to_hex() const { return x_.to_hex() + ":" + z_.to_hex(); }

PauliFrame PauliFrame::from_hex(int num_qubits, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("frame hex must be '<x>:<z>'");
  const auto n = static_cast<std::size_t>(num_qubits);
  return PauliFrame(BitVec::from_hex(n, text.substr(0, colon)), BitVec::from_hex(n, text.substr(colon + 1)));
}

namespace {

BitVec defects_for(const BitVec& part, const CodeLayout& layout, StabilizerType t) {
  if (part.size() != static_cast<std::size_t>(layout.num_qubits())) {
    throw std::invalid_argument("frame length does not match layout");
  }
  const auto& stabs = layout.stabilizers(t);
  BitVec out(stabs.size());
  part.for_each_set([&](std::size_t q) {
    if (layout.is_removed(static_cast<int>(q))) return;
    for (int s : layout.adjacent(t, static_cast<int>(q))) out.flip(static_cast<std::size_t>(s));
  });
  if (layout.has_holes()) {
    for (std::size_t s = 0; s < stabs.size(); ++s)
      if (!stabs[s].enabled) out.set(s, false);
  }
  return out;
}

}  // namespace

BitVec plaquette_defects(const BitVec& x_part, const CodeLayout& layout) {
  return defects_for(x_part, layout, StabilizerType::Plaquette);
}

BitVec vertex_defects(const BitVec& z_part, const CodeLayout& layout) {
  return defects_for(z_part, layout, StabilizerType::Vertex);
}

Syndrome syndrome_of(const PauliFrame& frame, const CodeLayout& layout) {
  Syndrome s;
  s.m_defects = plaquette_defects(frame.x_part(), layout).indices();
  s.e_defects = vertex_defects(frame.z_part(), layout).indices();
  return s;
}

LogicalEffect logical_effect(const PauliFrame& frame, const CodeLayout& layout) {
  if (plaquette_defects(frame.x_part(), layout).any() || vertex_defects(frame.z_part(), layout).any()) {
    throw std::invalid_argument("logical effect requested for a frame with a residual syndrome");
  }
  LogicalEffect e;
  for (int q : layout.logical_z()) e.flips_logical_z ^= frame.x_part().get(static_cast<std::size_t>(q));
  for (int q : layout.logical_x()) e.flips_logical_x ^= frame.z_part().get(static_cast<std::size_t>(q));
  return e;
}

}  // namespace planar
