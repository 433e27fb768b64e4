#include "planar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace planar {

Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("Wilson interval needs at least one trial");
  if (failures > trials) throw std::invalid_argument("more failures than trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Crossing estimate_crossing(const std::map<int, std::vector<std::pair<double, double>>>& curves) {
  if (curves.size() < 2) throw std::invalid_argument("crossing needs at least two distances");
  const auto& first = curves.begin()->second;
  if (first.size() < 3) throw std::invalid_argument("crossing needs at least three p points");
  for (const auto& [d, pts] : curves) {
    if (pts.size() != first.size()) throw std::invalid_argument("curves are on different p grids");
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i].first != first[i].first) throw std::invalid_argument("curves are on different p grids");
  }
  Crossing out;
  for (auto it = curves.begin(); std::next(it) != curves.end(); ++it) {
    const auto& lo = it->second;
    const auto& hi = std::next(it)->second;
    bool found = false;
    for (std::size_t i = 0; i + 1 < lo.size(); ++i) {
      const double g0 = hi[i].second - lo[i].second;
      const double g1 = hi[i + 1].second - lo[i + 1].second;
      if (g0 <= 0.0 && g1 > 0.0) {
        const double p0 = lo[i].first;
        const double p1 = lo[i + 1].first;
        out.pairwise.push_back(p0 + (p1 - p0) * (-g0) / (g1 - g0));
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument(
          fmt::format("curves for d={} and d={} do not cross in the sampled range", it->first, std::next(it)->first));
    }
  }
  out.p_c = median(out.pairwise);
  const auto [mn, mx] = std::minmax_element(out.pairwise.begin(), out.pairwise.end());
  out.spread = (*mx - *mn) / 2;
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of nothing");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace planar
