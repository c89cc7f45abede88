#include "statuspref/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "statuspref/error.hpp"
#include "statuspref/numeric.hpp"

namespace statuspref {

namespace {

constexpr int kBracketSteps = 200;
constexpr std::size_t kMeanPanels = 8;

// One shot of the boundary-value problem for a trial lower support end m:
// the affine utility line is tangent to f(., defer) at m, the upper end is
// where the line meets f(., lead), and the CDF in between solves
// f(c, defer + G (lead - defer)) = A + B c.
struct Shot {
  double c_min = 0.0;
  double c_max = 0.0;
  double intercept = 0.0;
  double slope = 0.0;
  double mean = 0.0;
};

class Shooter {
 public:
  Shooter(const FitnessSpec& fitness, const PayoffMatrix& game)
      : f_(fitness), lead_(game.lead()), defer_(game.defer()) {}

  double cdf(double c, double c_min, double c_max, double intercept,
             double slope) const {
    if (c <= c_min) return 0.0;
    if (c >= c_max) return 1.0;
    const double s = f_.invert_social(c, intercept + slope * c, defer_, lead_);
    return std::clamp((s - defer_) / (lead_ - defer_), 0.0, 1.0);
  }

  Shot shoot(double c_min) const {
    Shot shot;
    shot.c_min = c_min;
    shot.slope = f_.dc(c_min, defer_);
    shot.intercept = f_(c_min, defer_) - shot.slope * c_min;

    const auto above_line = [&](double c) {
      return f_(c, lead_) - shot.intercept - shot.slope * c;
    };
    double hi = 2.0 * c_min;
    int steps = 0;
    while (above_line(hi) > 0.0) {
      hi *= 2.0;
      if (++steps > kBracketSteps)
        fail(ErrorCode::kNumerical,
             "upper support end not found: utility line never crosses "
             "f(c, lead)");
    }
    shot.c_max =
        numeric::find_root(above_line, c_min, hi, {.x_tolerance = 1e-15}).root;

    const auto g = [&](double c) {
      return cdf(c, shot.c_min, shot.c_max, shot.intercept, shot.slope);
    };
    double area = 0.0;
    const double width = (shot.c_max - c_min) / kMeanPanels;
    for (std::size_t k = 0; k < kMeanPanels; ++k)
      area += numeric::integrate(g, c_min + width * static_cast<double>(k),
                                 c_min + width * static_cast<double>(k + 1));
    // E[c] = c_max - integral of G over the support.
    shot.mean = shot.c_max - area;
    return shot;
  }

 private:
  const FitnessSpec& f_;
  double lead_;
  double defer_;
};

}  // namespace

EquilibriumSolution::EquilibriumSolution(double c0, double c_min, double c_max,
                                         double intercept, double slope,
                                         FitnessSpec fitness, PayoffMatrix game,
                                         MixedDistribution discretized,
                                         EquilibriumResiduals residuals)
    : c0_(c0),
      c_min_(c_min),
      c_max_(c_max),
      intercept_(intercept),
      slope_(slope),
      fitness_(std::move(fitness)),
      game_(game),
      discretized_(std::move(discretized)),
      residuals_(residuals) {}

double EquilibriumSolution::cdf(double c) const {
  return Shooter(fitness_, game_).cdf(c, c_min_, c_max_, intercept_, slope_);
}

EquilibriumSolution solve_stable_distribution(double c0,
                                              const FitnessSpec& fitness,
                                              const PayoffMatrix& game,
                                              const SolverOptions& options) {
  require(c0 > 0.0, "endowment must be > 0");
  require(options.segments >= 1, "discretization needs at least one segment");
  require(options.check_points >= 2, "residual grid needs >= 2 points");
  if (game.lead() == game.defer())
    fail(ErrorCode::kNoDispersionIncentive,
         "no dispersion incentive: lead and defer payoffs are equal, so rank "
         "carries no value");

  const Shooter shooter(fitness, game);
  const auto excess_mean = [&](double m) { return shooter.shoot(m).mean - c0; };

  // Bracket the lower support end in (0, c0]: at m = c0 the mean exceeds c0.
  double guess = options.initial_c_min.value_or(0.5 * c0);
  require(guess > 0.0 && guess <= c0, "initial c_min must lie in (0, c0]");
  double lo = guess;
  double hi = c0;
  if (excess_mean(guess) >= 0.0) {
    hi = guess;
    int steps = 0;
    while (excess_mean(lo) >= 0.0) {
      hi = lo;
      lo *= 0.5;
      if (++steps > kBracketSteps)
        fail(ErrorCode::kNumerical, "could not bracket the lower support end");
    }
  }

  const auto root = numeric::find_root(
      excess_mean, lo, hi,
      {.x_tolerance = 1e-15, .max_iterations = options.max_iterations});
  const Shot shot = shooter.shoot(root.root);

  EquilibriumResiduals residuals;
  residuals.iterations = root.iterations;
  residuals.mean = shot.mean - c0;
  residuals.boundary_low = fitness(shot.c_min, game.defer()) -
                           (shot.intercept + shot.slope * shot.c_min);
  residuals.boundary_high = fitness(shot.c_max, game.lead()) -
                            (shot.intercept + shot.slope * shot.c_max);
  residuals.tangency = fitness.dc(shot.c_min, game.defer()) - shot.slope;
  if (!(std::abs(residuals.mean) <= options.tolerance)) {
    std::ostringstream msg;
    msg << "stable distribution did not converge: mean residual "
        << residuals.mean;
    fail(ErrorCode::kNumerical, msg.str());
  }

  const auto exact_cdf = [&](double c) {
    return shooter.cdf(c, shot.c_min, shot.c_max, shot.intercept, shot.slope);
  };
  const double width = shot.c_max - shot.c_min;

  std::vector<Segment> pieces;
  pieces.reserve(options.segments);
  double prev_c = shot.c_min;
  double prev_g = 0.0;
  for (std::size_t i = 1; i <= options.segments; ++i) {
    const double c =
        i == options.segments
            ? shot.c_max
            : shot.c_min + width * static_cast<double>(i) /
                               static_cast<double>(options.segments);
    const double g = i == options.segments ? 1.0 : exact_cdf(c);
    if (g > prev_g) {
      pieces.push_back({prev_c, c, g - prev_g});
      prev_c = c;
      prev_g = g;
    }
  }
  MixedDistribution discretized({}, std::move(pieces));

  for (std::size_t i = 0; i < options.check_points; ++i) {
    const double c = shot.c_min + width * static_cast<double>(i) /
                                      static_cast<double>(options.check_points - 1);
    const double line = shot.intercept + shot.slope * c;
    residuals.affinity =
        std::max(residuals.affinity,
                 std::abs(rank_utility(fitness, game, c, exact_cdf(c)) - line));
    residuals.affinity_discretized = std::max(
        residuals.affinity_discretized,
        std::abs(rank_utility(fitness, game, c, discretized.cdf(c)) - line));
  }
  residuals.mean_discretized = discretized.mean() - c0;

  return EquilibriumSolution(c0, shot.c_min, shot.c_max, shot.intercept,
                             shot.slope, fitness, game, std::move(discretized),
                             residuals);
}

Lottery stable_lottery(const EquilibriumSolution& solution) {
  const MixedDistribution& law = solution.discretized();
  return make_just_affordable(Lottery(law, law.mean()), solution.endowment());
}

double aggregate_fitness(const MixedDistribution& dist,
                         const FitnessSpec& fitness, const PayoffMatrix& game) {
  return expected_fitness(fitness, game, dist, dist);
}

CorollaryReport corollary_check(const EquilibriumSolution& solution,
                                const FitnessSpec& fitness,
                                const PayoffMatrix& game) {
  CorollaryReport report;
  // Every support point earns A + B c, so aggregate fitness is the line at
  // the mean.
  report.rank_society =
      solution.intercept() + solution.slope() * solution.endowment();
  report.no_lottery_society = fitness(solution.endowment(), nash_payoff(game));
  return report;
}

CorollaryReport corollary_check(double c0, const FitnessSpec& fitness,
                                const PayoffMatrix& game,
                                const SolverOptions& options) {
  return corollary_check(solve_stable_distribution(c0, fitness, game, options),
                         fitness, game);
}

}  // namespace statuspref
