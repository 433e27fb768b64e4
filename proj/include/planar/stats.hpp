#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace planar {

struct Interval {
  double low = 0.0;
  double high = 1.0;
  bool overlaps(const Interval& o) const { return low <= o.high && o.low <= high; }
};

/// Wilson score interval for a binomial proportion; z = 1.96 gives 95%.
/// Throws std::invalid_argument if failures > trials or trials == 0.
Interval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z = 1.959963984540054);

struct Crossing {
  double p_c = 0.0;
  double spread = 0.0;          // half the range of the pairwise estimates
  std::vector<double> pairwise;  // one per adjacent distance pair
};

/// curves[d] = (p, failure rate) points, all distances on the same p grid.
/// For each adjacent pair of distances the first point where the larger
/// code's curve moves from below to above the smaller one's is located by
/// linear interpolation; the median over pairs is returned. Throws
/// std::invalid_argument with fewer than 2 distances or 3 points, or if some
/// pair does not cross inside the grid.
Crossing estimate_crossing(const std::map<int, std::vector<std::pair<double, double>>>& curves);

double median(std::vector<double> v);
double mean(const std::vector<double>& v);

}  // namespace planar
