#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace statuspref::numeric {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are computed once per order and cached; the returned reference stays
// valid for the lifetime of the program.
const GaussLegendreRule& gauss_legendre(std::size_t order);

inline constexpr std::size_t kDefaultQuadratureOrder = 64;

// Integrates `fn` over [lo, hi] with one Gauss-Legendre panel.
double integrate(const std::function<double(double)>& fn, double lo, double hi,
                 std::size_t order = kDefaultQuadratureOrder);

// Integrates over [lo, hi] with one panel between each consecutive pair of
// `breaks` (breaks outside the interval are ignored).
double integrate_piecewise(const std::function<double(double)>& fn, double lo,
                           double hi, std::span<const double> breaks,
                           std::size_t order = kDefaultQuadratureOrder);

struct RootOptions {
  double x_tolerance = 1e-14;
  double f_tolerance = 0.0;
  int max_iterations = 1000;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Bisection/secant hybrid on a sign-changing bracket [lo, hi]. Throws
// Error(kNumerical) if the bracket does not change sign or the iteration cap
// is hit before the bracket shrinks below tolerance.
RootResult find_root(const std::function<double(double)>& fn, double lo,
                     double hi, const RootOptions& options = {});

// Central difference with step h = 1e-6 * max(1, x), shrunk to x/2 near zero
// so the stencil stays inside the positive half-line.
double derivative(const std::function<double(double)>& fn, double x);
double second_derivative(const std::function<double(double)>& fn, double x);

}  // namespace statuspref::numeric
