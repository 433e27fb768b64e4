#include "planar/gf2.hpp"

#include <utility>

namespace planar::gf2 {

int rank(std::vector<BitVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int r = 0;
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (rows[static_cast<std::size_t>(i)].get(c)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(pivot)]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i != r && rows[static_cast<std::size_t>(i)].get(c)) rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(r)];
    }
    ++r;
  }
  return r;
}

std::optional<BitVec> solve(const std::vector<BitVec>& rows, const BitVec& target) {
  const std::size_t m = rows.size();
  const std::size_t cols = target.size();
  std::vector<BitVec> work = rows;
  std::vector<BitVec> combo(m, BitVec(m));
  for (std::size_t i = 0; i < m; ++i) combo[i].set(i);

  BitVec residual = target;
  BitVec coeffs(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    std::size_t pivot = m;
    for (std::size_t i = r; i < m; ++i) {
      if (work[i].get(c)) {
        pivot = i;
        break;
      }
    }
    if (pivot == m) continue;
    std::swap(work[r], work[pivot]);
    std::swap(combo[r], combo[pivot]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != r && work[i].get(c)) {
        work[i] ^= work[r];
        combo[i] ^= combo[r];
      }
    }
    if (residual.get(c)) {
      residual ^= work[r];
      coeffs ^= combo[r];
    }
    ++r;
  }
  if (residual.any()) return std::nullopt;
  return coeffs;
}

}  // namespace planar::gf2
