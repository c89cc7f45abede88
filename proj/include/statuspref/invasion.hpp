#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "statuspref/abm.hpp"

namespace statuspref {

// Expected per-match payoff of a `focal` agent at consumption `c` when
// opponents are drawn from `genes` with weights `shares`. Genes must use
// trivial or fixed lotteries. Uses the signal source, misperception and game
// from `config`.
double expected_social_good(std::size_t focal, double c,
                            const std::vector<Gene>& genes,
                            const std::vector<double>& shares,
                            const SimConfig& config);

// Large-population expected fitness of each gene in the mixture.
std::vector<double> analytic_fitness(const std::vector<Gene>& genes,
                                     const std::vector<double>& shares,
                                     const SimConfig& config);

struct InvasionOptions {
  std::vector<double> eps_grid{0.001, 0.01, 0.1};
  std::size_t simulation_seeds = 0;  // 0 skips the simulation cross-check
};

struct SimulatedFitness {
  double mutant_mean = 0.0;
  double incumbent_mean = 0.0;
  double difference_stderr = 0.0;  // across seeds
  std::size_t seeds = 0;
  double difference() const { return mutant_mean - incumbent_mean; }
  bool operator==(const SimulatedFitness&) const = default;
};

struct InvasionPoint {
  double eps = 0.0;
  double mutant_fitness = 0.0;
  double incumbent_fitness = 0.0;
  // f(c0, (1-eps) S_G(c0) + eps * nash): a follow+trivial mutant among
  // followers who use lottery law G.
  std::optional<double> trivial_mutant_closed_form;
  std::optional<SimulatedFitness> simulated;

  bool mutant_loses() const { return mutant_fitness < incumbent_fitness; }
  // True when the simulated difference has the analytic sign or sits within
  // three standard errors of the analytic difference.
  std::optional<bool> simulation_agrees() const;
  bool operator==(const InvasionPoint&) const = default;
};

struct InvasionReport {
  std::vector<InvasionPoint> points;  // sorted by eps
  // Largest grid eps such that the mutant loses at it and at every smaller
  // grid eps; empty when it wins at the smallest.
  std::optional<double> barrier;
  bool resists_all() const;
  bool operator==(const InvasionReport&) const = default;
};

// Incumbents hold share 1 - eps and mutants eps. Simulations run one
// generation per seed (seeds config.seed, config.seed + 1, ...) and compare
// gene mean fitness before resampling.
InvasionReport invasion_test(const Gene& incumbent, const Gene& mutant,
                             const SimConfig& config,
                             const InvasionOptions& options = {});

// Atom payoff bound for a follow+G^n mutant entering an ignore+trivial
// population, f(c0 - delta, (1 - eps/(2n)) nash + eps/(2n) s_), against the
// incumbents' f(c0, nash).
struct DispersionComparison {
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t n = 0;
  double mutant_atom = 0.0;
  double incumbent = 0.0;
  double margin() const { return mutant_atom - incumbent; }
  bool operator==(const DispersionComparison&) const = default;
};
DispersionComparison compare_dispersion(double c0, double eps, double delta,
                                        std::uint64_t n,
                                        const FitnessSpec& fitness,
                                        const PayoffMatrix& game);

// Scans delta = 10^-1, 10^-2, ... 10^-max_exponent, pairing each with the
// smallest n from find_nstar, and returns the first profitable comparison.
std::optional<DispersionComparison> find_profitable_dispersion(
    double c0, double eps, const FitnessSpec& fitness, const PayoffMatrix& game,
    int max_exponent = 8);

}  // namespace statuspref
