#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statuspref/distribution.hpp"
#include "statuspref/fitness.hpp"
#include "statuspref/game.hpp"
#include "statuspref/lottery.hpp"

namespace statuspref {

struct LotteryPolicy {
  enum class Kind { kTrivial, kFixed, kMenu };

  Kind kind = Kind::kTrivial;
  std::optional<Lottery> fixed;
  // Menu agents pick the item with the highest expected fitness against the
  // previous generation's consumption distribution.
  std::vector<Lottery> menu;

  static LotteryPolicy trivial() { return {}; }
  static LotteryPolicy fixed_lottery(Lottery lottery) {
    return {Kind::kFixed, std::move(lottery), {}};
  }
  static LotteryPolicy menu_of(std::vector<Lottery> items) {
    return {Kind::kMenu, std::nullopt, std::move(items)};
  }
};

struct Gene {
  std::string name;
  SignalPolicy signal;
  LotteryPolicy lottery;
};

enum class SignalSource {
  kConsumption,  // higher realized consumption is told "hawk"; ties get none
  kExogenous,    // correlated recommendations drawn from `theta`
};

struct SimConfig {
  std::size_t agents = 1000;
  std::size_t interactions = 200;  // matches per agent per generation
  std::size_t generations = 100;
  double mutation_rate = 0.0;
  PayoffMatrix game = PayoffMatrix::normalized(2.0, 1.0);
  FitnessSpec fitness = FitnessSpec::power(0.5, 1.0);
  double endowment = 1.0;
  SignalSource signals = SignalSource::kConsumption;
  SignalStructure theta;       // exogenous source only
  double misperception = 0.0;  // consumption source: per-agent flip prob.
  std::vector<Gene> genes;
  std::vector<double> initial_shares;
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument) naming the first violated constraint.
  void validate() const;
};

struct Agent {
  std::uint32_t gene = 0;
  double consumption = 0.0;
  double social_good = 0.0;
  double fitness = 0.0;
};

struct PopulationState {
  std::vector<Agent> agents;
  std::uint64_t generation = 0;
  std::uint64_t seed = 0;
  // Realized consumption of the previous generation; empty before the first.
  std::vector<double> previous_consumption;
};

struct GenerationStats {
  std::uint64_t generation = 0;
  std::vector<std::size_t> gene_counts;
  double mean_consumption = 0.0;
  double var_consumption = 0.0;
  double mean_social_good = 0.0;
  double var_social_good = 0.0;
  double mean_fitness = 0.0;
  // NaN for genes absent from the generation.
  std::vector<double> gene_mean_fitness;
  std::vector<double> gene_mean_social_good;
};

struct GenerationOutcome {
  PopulationState played;  // agents with realized consumption and payoffs
  PopulationState next;    // offspring, consumption reset to the endowment
  GenerationStats stats;
};

// Fixed-size population split by `initial_shares` (largest remainder).
PopulationState initial_population(const SimConfig& config);

// One lifecycle: lottery draws, K random pairwise matches per agent,
// fitness-proportional resampling of N offspring, then mutation.
GenerationOutcome run_generation(const PopulationState& state,
                                 const SimConfig& config);

struct SimulationResult {
  std::vector<GenerationStats> history;
  PopulationState final_state;
  std::vector<double> final_shares() const;
};

SimulationResult simulate(const SimConfig& config);

// Standardized drift of one generation's means: consumption away from the
// endowment, and social good above the best symmetric average payoff.
struct ConservationCheck {
  double consumption_z = 0.0;  // |mean c - c0| / standard error
  double social_good_z = 0.0;  // max(0, mean s - bound) / standard error
  bool holds(double z_limit = 4.0) const {
    return consumption_z <= z_limit && social_good_z <= z_limit;
  }
  bool operator==(const ConservationCheck&) const = default;
};
ConservationCheck conservation(const GenerationStats& stats,
                               const SimConfig& config);

// Probability of each (own, opponent) recommendation pair implied by theta
// under a symmetric joint law; index 0 = hawk.
struct JointSignalLaw {
  double hawk_dove = 0.0;
  double dove_hawk = 0.0;
  double hawk_hawk = 0.0;
  double dove_dove = 0.0;
};
JointSignalLaw joint_signal_law(const SignalStructure& theta);

}  // namespace statuspref
