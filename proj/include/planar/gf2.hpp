#pragma once

#include <optional>
#include <vector>

#include "planar/bitvec.hpp"

namespace planar::gf2 {

/// Rank of a set of row vectors over GF(2).
int rank(std::vector<BitVec> rows);

/// Solves sum_i c_i rows[i] = target. Returns the coefficient vector if the
/// target lies in the row span.
std::optional<BitVec> solve(const std::vector<BitVec>& rows, const BitVec& target);

}  // namespace planar::gf2
