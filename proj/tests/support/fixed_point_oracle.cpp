#include "fixed_point_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

FixedPointResult fixed_point_distribution(
    const std::function<double(double, double)>& f, double lead, double defer,
    double c0, double upper, int points, int iterations) {
  const auto n = static_cast<std::size_t>(points);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = upper * static_cast<double>(i + 1) / static_cast<double>(n);
  std::size_t home = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i] - c0) < std::abs(x[home] - c0)) home = i;
  x[home] = c0;

  const double tie = lead * defer / (lead + defer);
  std::vector<double> w(n, 0.0), value(n);
  std::vector<std::size_t> hull;
  hull.reserve(n);
  w[home] = 1.0;

  for (int t = 1; t <= iterations; ++t) {
    double below = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double above = 1.0 - below - w[i];
      value[i] = f(x[i], below * lead + w[i] * tie + above * defer);
      below += w[i];
    }
    hull.clear();
    for (std::size_t i = 0; i < n; ++i) {
      while (hull.size() >= 2) {
        const std::size_t a = hull[hull.size() - 2], b = hull.back();
        if ((value[b] - value[a]) * (x[i] - x[a]) <=
            (value[i] - value[a]) * (x[b] - x[a]))
          hull.pop_back();
        else
          break;
      }
      hull.push_back(i);
    }
    const auto k = static_cast<std::size_t>(
        std::lower_bound(hull.begin(), hull.end(), home) - hull.begin());
    const double step = 1.0 / (t + 1.0);
    for (double& v : w) v *= 1.0 - step;
    if (hull[k] == home) {
      w[home] += step;
    } else {
      const std::size_t lo = hull[k - 1], hi = hull[k];
      const double p = (x[hi] - c0) / (x[hi] - x[lo]);
      w[lo] += step * p;
      w[hi] += step * (1.0 - p);
    }
  }

  FixedPointResult out;
  out.grid = x;
  out.cdf.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += w[i];
    out.cdf[i] = acc;
    out.mean += w[i] * x[i];
  }
  return out;
}

double kolmogorov_distance(const FixedPointResult& oracle,
                           const std::function<double(double)>& cdf) {
  double worst = 0.0;
  double left = 0.0;
  for (std::size_t i = 0; i < oracle.grid.size(); ++i) {
    const double exact = cdf(oracle.grid[i]);
    worst = std::max({worst, std::abs(oracle.cdf[i] - exact), std::abs(left - exact)});
    left = oracle.cdf[i];
  }
  return worst;
}

}  // namespace oracle
