#include "statuspref/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "statuspref/error.hpp"

namespace statuspref::numeric {

namespace {

GaussLegendreRule compute_rule(std::size_t order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on the Legendre recurrence.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(order) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 0; j < order; ++j) {
        const double p3 = p2;
        p2 = p1;
        const auto jd = static_cast<double>(j);
        p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
      }
      dp = static_cast<double>(order) * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[order - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(std::size_t order) {
  require(order >= 1, "quadrature order must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& fn, double lo, double hi,
                 std::size_t order) {
  if (hi <= lo) return 0.0;
  const auto& rule = gauss_legendre(order);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * sum;
}

double integrate_piecewise(const std::function<double(double)>& fn, double lo,
                           double hi, std::span<const double> breaks,
                           std::size_t order) {
  if (hi <= lo) return 0.0;
  std::vector<double> cuts{lo, hi};
  for (double b : breaks)
    if (b > lo && b < hi) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(fn, cuts[i], cuts[i + 1], order);
  return total;
}

RootResult find_root(const std::function<double(double)>& fn, double lo,
                     double hi, const RootOptions& options) {
  double a = lo;
  double b = hi;
  double fa = fn(a);
  double fb = fn(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "root not bracketed on [" << lo << ", " << hi << "] (f = " << fa
        << ", " << fb << ")";
    fail(ErrorCode::kNumerical, msg.str());
  }
  // Illinois false position; every third step is a plain bisection so the
  // bracket is guaranteed to shrink geometrically.
  int side = 0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    double x;
    if (iter % 3 == 0) {
      x = 0.5 * (a + b);
    } else {
      x = (a * fb - b * fa) / (fb - fa);
      if (!(x > std::min(a, b) && x < std::max(a, b))) x = 0.5 * (a + b);
    }
    const double fx = fn(x);
    if (fx == 0.0 || std::abs(fx) < options.f_tolerance) return {x, fx, iter};
    if ((fx > 0.0) == (fb > 0.0)) {
      b = x;
      fb = fx;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    const double scale = std::max(1.0, std::abs(x));
    if (std::abs(b - a) <= options.x_tolerance * scale) {
      const double root = 0.5 * (a + b);
      return {root, fn(root), iter};
    }
  }
  fail(ErrorCode::kNumerical, "root finder hit its iteration cap");
}

double derivative(const std::function<double(double)>& fn, double x) {
  double h = 1e-6 * std::max(1.0, std::abs(x));
  if (x > 0.0) h = std::min(h, 0.5 * x);
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

double second_derivative(const std::function<double(double)>& fn, double x) {
  double h = 1e-4 * std::max(1.0, std::abs(x));
  if (x > 0.0) h = std::min(h, 0.5 * x);
  return (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h);
}

}  // namespace statuspref::numeric
