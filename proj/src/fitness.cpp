#include "statuspref/fitness.hpp"

#include <cmath>
#include <sstream>

#include "statuspref/error.hpp"
#include "statuspref/numeric.hpp"

namespace statuspref {

FitnessSpec FitnessSpec::power(double alpha, double beta) {
  require(alpha > 0.0 && alpha < 1.0, "power fitness needs alpha in (0, 1)");
  require(beta > 0.0, "power fitness needs beta > 0");
  FitnessSpec f;
  std::ostringstream name;
  name << "c^" << alpha << "*(1+s)^" << beta;
  f.name_ = name.str();
  f.family_ = "power";
  f.alpha_ = alpha;
  f.beta_ = beta;
  f.value_ = [alpha, beta](double c, double s) {
    return std::pow(c, alpha) * std::pow(1.0 + s, beta);
  };
  f.dc_ = [alpha, beta](double c, double s) {
    return alpha * std::pow(c, alpha - 1.0) * std::pow(1.0 + s, beta);
  };
  f.dcc_ = [alpha, beta](double c, double s) {
    return alpha * (alpha - 1.0) * std::pow(c, alpha - 2.0) *
           std::pow(1.0 + s, beta);
  };
  return f;
}

FitnessSpec FitnessSpec::additive(double alpha, double gamma) {
  require(alpha > 0.0 && alpha < 1.0, "additive fitness needs alpha in (0, 1)");
  require(gamma > 0.0, "additive fitness needs gamma > 0");
  FitnessSpec f;
  std::ostringstream name;
  name << "c^" << alpha << "+" << gamma << "*s";
  f.name_ = name.str();
  f.family_ = "additive";
  f.alpha_ = alpha;
  f.gamma_ = gamma;
  f.value_ = [alpha, gamma](double c, double s) {
    return std::pow(c, alpha) + gamma * s;
  };
  f.dc_ = [alpha](double c, double) {
    return alpha * std::pow(c, alpha - 1.0);
  };
  f.dcc_ = [alpha](double c, double) {
    return alpha * (alpha - 1.0) * std::pow(c, alpha - 2.0);
  };
  return f;
}

FitnessSpec FitnessSpec::custom(std::string name, Fn value, Fn dc, Fn dcc) {
  require(static_cast<bool>(value), "custom fitness needs a function");
  FitnessSpec f;
  f.name_ = std::move(name);
  f.family_ = "custom";
  f.value_ = std::move(value);
  f.dc_ = std::move(dc);
  f.dcc_ = std::move(dcc);
  return f;
}

double FitnessSpec::dc(double c, double s) const {
  if (dc_) return dc_(c, s);
  return numeric::derivative([&](double x) { return value_(x, s); }, c);
}

double FitnessSpec::dcc(double c, double s) const {
  if (dcc_) return dcc_(c, s);
  return numeric::second_derivative([&](double x) { return value_(x, s); }, c);
}

double FitnessSpec::invert_social(double c, double target, double s_lo,
                                  double s_hi) const {
  const auto gap = [&](double s) { return value_(c, s) - target; };
  if (gap(s_lo) >= 0.0) return s_lo;
  if (gap(s_hi) <= 0.0) return s_hi;
  return numeric::find_root(gap, s_lo, s_hi, {.x_tolerance = 1e-15}).root;
}

ValidationGrid ValidationGrid::standard(double s_max) {
  ValidationGrid grid;
  for (int i = 0; i <= 60; ++i)
    grid.consumption.push_back(std::pow(10.0, -3.0 + 0.1 * i));
  for (int j = 0; j <= 20; ++j) grid.social.push_back(s_max * j / 20.0);
  return grid;
}

FitnessReport validate(const FitnessSpec& f, const ValidationGrid& grid) {
  require(!grid.consumption.empty() && !grid.social.empty(),
          "validation grid must be nonempty");
  for (double c : grid.consumption)
    require(c > 0.0, "validation grid consumption must be > 0");

  FitnessReport report;
  auto flag = [](CheckResult& check, double c, double s) {
    if (check.pass) {
      check.pass = false;
      check.first_violation = GridSample{c, s};
    }
  };

  const auto& cs = grid.consumption;
  const auto& ss = grid.social;
  for (double s : ss) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const double c = cs[i];
      if (i + 1 < cs.size()) {
        const double lo = f(c, s);
        const double hi = f(cs[i + 1], s);
        if (!(hi > lo)) flag(report.increasing_in_c, c, s);
        // Strict concavity: negative curvature and a strictly positive
        // midpoint gap over the grid cell.
        const double mid = f(0.5 * (c + cs[i + 1]), s);
        const double gap = mid - 0.5 * (lo + hi);
        const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
        if (!(gap > 1e-12 * scale) || !(f.dcc(c, s) < 0.0))
          flag(report.concave_in_c, c, s);
      }
    }
    if (!(f.dc(1e-8, s) > 1e3)) flag(report.marginal_diverges_at_zero, 1e-8, s);
    if (!(f.dc(1e8, s) < 1e-3))
      flag(report.marginal_vanishes_at_infinity, 1e8, s);
  }
  for (double c : cs)
    for (std::size_t j = 0; j + 1 < ss.size(); ++j)
      if (!(f(c, ss[j + 1]) > f(c, ss[j])))
        flag(report.increasing_in_s, c, ss[j]);
  return report;
}

double rank_utility(const FitnessSpec& fitness, const PayoffMatrix& game,
                    double c, double r) {
  require(r >= 0.0 && r <= 1.0, "rank must lie in [0, 1]");
  return fitness(c, game.defer() + r * (game.lead() - game.defer()));
}

double integrate_against(const MixedDistribution& dist,
                         const std::function<double(double)>& integrand,
                         const std::vector<double>& breaks) {
  double total = 0.0;
  for (const Atom& a : dist.atoms()) total += a.mass * integrand(a.value);
  for (const Segment& s : dist.segments())
    total += s.density() *
             numeric::integrate_piecewise(integrand, s.lo, s.hi, breaks);
  return total;
}

double expected_fitness(const FitnessSpec& fitness, const PayoffMatrix& game,
                        const MixedDistribution& lottery_law,
                        const MixedDistribution& population) {
  const auto breaks = population.breakpoints();
  return integrate_against(
      lottery_law,
      [&](double x) { return fitness(x, social_good(population, x, game)); },
      breaks);
}

}  // namespace statuspref
