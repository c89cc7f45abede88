#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statuspref/abm.hpp"
#include "statuspref/config.hpp"
#include "statuspref/error.hpp"
#include "statuspref/json_io.hpp"

namespace statuspref {

// Builders from config keys. Each names the offending key on failure.
PayoffMatrix read_game(const KeyValueConfig& cfg);
FitnessSpec read_fitness(const KeyValueConfig& cfg);
SignalStructure read_theta(const KeyValueConfig& cfg);
SolverOptions read_solver(const KeyValueConfig& cfg);

// Resolves gene strings such as "follow+trivial", "ignore+gstar",
// "follow:0.9+gn:0.1:3", "always_h+two_point:0.5:1.5" or "follow+menu".
class GeneFactory {
 public:
  GeneFactory(const KeyValueConfig& cfg, const PayoffMatrix& game,
              const FitnessSpec& fitness, double endowment);
  Gene parse(const std::string& spec);
  // The stable distribution, solved on first use.
  const EquilibriumSolution& stable();

 private:
  Lottery parse_lottery(const std::string& spec);

  const KeyValueConfig& cfg_;
  PayoffMatrix game_;
  FitnessSpec fitness_;
  double endowment_;
  std::optional<EquilibriumSolution> stable_;
  std::optional<std::vector<Lottery>> menu_;
};

// Reads sim.* keys. `seed_override` replaces sim.seed; one of them is
// required when `need_seed` is set.
SimConfig read_sim_config(const KeyValueConfig& cfg, GeneFactory& genes,
                          std::optional<std::uint64_t> seed_override,
                          bool need_seed);

// Report values written by the commands; each round-trips through JSON.
struct EssCheckReport {
  PayoffMatrix game = PayoffMatrix::normalized(2.0, 1.0);
  SignalStructure theta;
  EssVerdict verdict;
  ConditionalPayoffs following;  // follower among followers
  ConditionalPayoffs deviating;  // plays against the recommendation
  double nash = 0.0;
  bool operator==(const EssCheckReport&) const = default;
};

struct SolveReport {
  EquilibriumSolution solution;
  std::optional<CorollaryReport> corollary;
  bool operator==(const SolveReport&) const = default;
};

struct SimulationSummary {
  std::uint64_t seed = 0;
  std::size_t agents = 0;
  std::size_t interactions = 0;
  std::size_t generations = 0;
  double mutation_rate = 0.0;
  std::vector<std::string> genes;
  std::vector<double> initial_shares;
  std::vector<double> final_shares;
  double max_consumption_z = 0.0;
  double max_social_good_z = 0.0;
  bool conservation_holds = true;
  bool operator==(const SimulationSummary&) const = default;
};

struct InvasionRun {
  std::string incumbent;
  std::string mutant;
  InvasionReport report;
  // Per eps: the first profitable (delta, n) in the atom-payoff comparison.
  std::vector<std::optional<DispersionComparison>> dispersion;
  bool operator==(const InvasionRun&) const = default;
};

struct NstarReport {
  double endowment = 0.0;
  double delta = 0.0;
  std::uint64_t n_max = 0;
  NstarResult result;
  bool operator==(const NstarReport&) const = default;
};

Json to_json(const EssCheckReport& r);
Json to_json(const SolveReport& r);
Json to_json(const SimulationSummary& r);
Json to_json(const InvasionRun& r);
Json to_json(const NstarReport& r);
EssCheckReport ess_check_from_json(const Json& j);
SolveReport solve_from_json(const Json& j);
SimulationSummary simulation_summary_from_json(const Json& j);
InvasionRun invasion_from_json(const Json& j);
NstarReport nstar_from_json(const Json& j);

enum class OutputFormat { kJson, kCsv };

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool compare = false;
  OutputFormat format = OutputFormat::kJson;
};

struct CommandOutcome {
  int exit_code = 0;  // 0 success, 1 ESS-false (ess-check only)
  Json report;
  std::vector<std::string> files;
};

// Runs one of: ess-check, solve, simulate, invasion, lottery-nstar. Unknown
// config keys are rejected before any output is written.
CommandOutcome run_command(const std::string& command, const KeyValueConfig& cfg,
                           const CommandOptions& options);

// 2 for config/argument/io failures, 3 for numerical ones.
int exit_code_for(ErrorCode code);

}  // namespace statuspref
