#pragma once

#include <optional>

#include "statuspref/distribution.hpp"
#include "statuspref/fitness.hpp"
#include "statuspref/game.hpp"
#include "statuspref/lottery.hpp"

namespace statuspref {

struct SolverOptions {
  double tolerance = 1e-10;   // on constraint residuals
  int max_iterations = 1000;
  // Starting guess for the lower support end; defaults to c0 / 2.
  std::optional<double> initial_c_min;
  std::size_t segments = 1000;  // pieces in the discretized CDF
  std::size_t check_points = 1000;
};

struct EquilibriumResiduals {
  double affinity = 0.0;        // max |v(c, G(c)) - A - B c| on the support
  double affinity_discretized = 0.0;  // same, with the piecewise CDF
  double mean = 0.0;            // E[c] - c0 from the exact CDF
  double mean_discretized = 0.0;
  double boundary_low = 0.0;    // f(c_min, defer) - (A + B c_min)
  double boundary_high = 0.0;   // f(c_max, lead) - (A + B c_max)
  double tangency = 0.0;        // df/dc(c_min, defer) - B
  int iterations = 0;
  bool operator==(const EquilibriumResiduals&) const = default;
};

// Stable consumption distribution: an atom-free CDF on [c_min, c_max] along
// which rank utility is affine, v(c, G(c)) = intercept + slope * c, with mean
// equal to the endowment.
class EquilibriumSolution {
 public:
  EquilibriumSolution(double c0, double c_min, double c_max, double intercept,
                      double slope, FitnessSpec fitness, PayoffMatrix game,
                      MixedDistribution discretized,
                      EquilibriumResiduals residuals);

  double endowment() const { return c0_; }
  double c_min() const { return c_min_; }
  double c_max() const { return c_max_; }
  double intercept() const { return intercept_; }
  double slope() const { return slope_; }
  const MixedDistribution& discretized() const { return discretized_; }
  const EquilibriumResiduals& residuals() const { return residuals_; }

  // Exact CDF, by inverting f in its social-good argument.
  double cdf(double c) const;
  const FitnessSpec& fitness() const { return fitness_; }
  const PayoffMatrix& game() const { return game_; }

  bool operator==(const EquilibriumSolution& other) const {
    return c0_ == other.c0_ && c_min_ == other.c_min_ &&
           c_max_ == other.c_max_ && intercept_ == other.intercept_ &&
           slope_ == other.slope_ && fitness_ == other.fitness_ &&
           game_ == other.game_ && discretized_ == other.discretized_ &&
           residuals_ == other.residuals_;
  }

 private:
  double c0_, c_min_, c_max_, intercept_, slope_;
  FitnessSpec fitness_;
  PayoffMatrix game_;
  MixedDistribution discretized_;
  EquilibriumResiduals residuals_;
};

// Throws Error(kNoDispersionIncentive) when lead == defer and
// Error(kNumerical) if the shooting iteration fails to converge.
EquilibriumSolution solve_stable_distribution(double c0,
                                              const FitnessSpec& fitness,
                                              const PayoffMatrix& game,
                                              const SolverOptions& options = {});

// Integral of f(c, S(c)) against dist.
// The discretized CDF as a just-affordable lottery at the endowment. The
// discretization's tiny mean error is removed by a rigid shift.
Lottery stable_lottery(const EquilibriumSolution& solution);

double aggregate_fitness(const MixedDistribution& dist,
                         const FitnessSpec& fitness, const PayoffMatrix& game);

struct CorollaryReport {
  double rank_society = 0.0;     // aggregate fitness under the stable CDF
  double no_lottery_society = 0.0;  // f(c0, nash payoff)
  double difference() const { return rank_society - no_lottery_society; }
  bool holds() const { return difference() > 0.0; }
  bool operator==(const CorollaryReport&) const = default;
};

CorollaryReport corollary_check(const EquilibriumSolution& solution,
                                const FitnessSpec& fitness,
                                const PayoffMatrix& game);
CorollaryReport corollary_check(double c0, const FitnessSpec& fitness,
                                const PayoffMatrix& game,
                                const SolverOptions& options = {});

}  // namespace statuspref
