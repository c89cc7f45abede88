#include "statuspref/abm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "statuspref/error.hpp"
#include "statuspref/rng.hpp"

namespace statuspref {

namespace {

enum StreamPurpose : std::uint64_t {
  kLotteryDraw = 1,
  kMatching = 2,
  kReproduction = 3,
  kMutation = 4,
};

constexpr int kHawk = 0;
constexpr int kDove = 1;

using OutcomeCounts = std::array<std::uint32_t, 4>;  // own * 2 + opponent

MixedDistribution empirical(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  std::vector<Atom> atoms;
  double assigned = 0.0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    atoms.push_back({values[i], static_cast<double>(j - i) / n});
    assigned += atoms.back().mass;
    i = j;
  }
  // Absorb summation drift into the last atom.
  atoms.back().mass += 1.0 - assigned;
  return MixedDistribution(std::move(atoms), {});
}

std::vector<const Lottery*> choose_lotteries(const PopulationState& state,
                                             const SimConfig& config,
                                             const std::vector<Lottery>& trivial) {
  std::vector<const Lottery*> chosen(config.genes.size(), nullptr);
  std::optional<MixedDistribution> population;
  for (std::size_t g = 0; g < config.genes.size(); ++g) {
    const LotteryPolicy& policy = config.genes[g].lottery;
    switch (policy.kind) {
      case LotteryPolicy::Kind::kTrivial:
        chosen[g] = &trivial.front();
        break;
      case LotteryPolicy::Kind::kFixed:
        chosen[g] = &*policy.fixed;
        break;
      case LotteryPolicy::Kind::kMenu: {
        if (!population)
          population = state.previous_consumption.empty()
                           ? MixedDistribution::degenerate(config.endowment)
                           : empirical(state.previous_consumption);
        double best = -std::numeric_limits<double>::infinity();
        for (const Lottery& item : policy.menu) {
          const double value = expected_fitness(config.fitness, config.game,
                                                item.law(), *population);
          if (value > best) {
            best = value;
            chosen[g] = &item;
          }
        }
        break;
      }
    }
  }
  return chosen;
}

void validate_lottery(const Lottery& lottery, double endowment,
                      const std::string& gene) {
  require(is_fair(lottery), "gene '" + gene + "' uses an unfair lottery");
  require(std::abs(lottery.cost() - endowment) <= 1e-12,
          "gene '" + gene + "' uses a lottery that is not just affordable");
}

}  // namespace

JointSignalLaw joint_signal_law(const SignalStructure& theta) {
  theta.validate();
  require(theta.dove_given_hawk > 0.0 && theta.hawk_given_dove > 0.0,
          "exogenous recommendations need both theta components > 0");
  JointSignalLaw law;
  const double p = theta.dove_given_hawk * theta.hawk_given_dove /
                   (theta.dove_given_hawk + theta.hawk_given_dove);
  law.hawk_dove = p;
  law.dove_hawk = p;
  law.hawk_hawk = p * (1.0 / theta.dove_given_hawk - 1.0);
  law.dove_dove = p * (1.0 / theta.hawk_given_dove - 1.0);
  return law;
}

void SimConfig::validate() const {
  require(agents >= 2 && agents % 2 == 0,
          "sim.agents must be an even number >= 2");
  require(agents <= std::numeric_limits<std::uint32_t>::max(),
          "sim.agents is too large");
  require(interactions >= 1, "sim.interactions must be >= 1");
  require(mutation_rate >= 0.0 && mutation_rate <= 1.0,
          "sim.mutation_rate must lie in [0, 1]");
  require(endowment > 0.0, "endowment must be > 0");
  require(misperception >= 0.0 && misperception <= 1.0,
          "sim.misperception must lie in [0, 1]");
  require(!genes.empty(), "at least one gene is required");
  require(initial_shares.size() == genes.size(),
          "initial shares must match the gene list");
  double total = 0.0;
  for (double s : initial_shares) {
    require(s >= 0.0, "initial shares must be nonnegative");
    total += s;
  }
  require(std::abs(total - 1.0) <= 1e-9, "initial shares must sum to 1");
  if (signals == SignalSource::kExogenous) (void)joint_signal_law(theta);
  for (const Gene& gene : genes) {
    switch (gene.lottery.kind) {
      case LotteryPolicy::Kind::kTrivial:
        break;
      case LotteryPolicy::Kind::kFixed:
        require(gene.lottery.fixed.has_value(),
                "gene '" + gene.name + "' has no fixed lottery");
        validate_lottery(*gene.lottery.fixed, endowment, gene.name);
        break;
      case LotteryPolicy::Kind::kMenu:
        require(!gene.lottery.menu.empty(),
                "gene '" + gene.name + "' has an empty lottery menu");
        for (const Lottery& item : gene.lottery.menu)
          validate_lottery(item, endowment, gene.name);
        break;
    }
  }
}

PopulationState initial_population(const SimConfig& config) {
  config.validate();
  const std::size_t n = config.agents;
  std::vector<std::size_t> counts(config.genes.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    const double exact = config.initial_shares[g] * static_cast<double>(n);
    counts[g] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[g];
    remainders.emplace_back(exact - std::floor(exact), g);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned)
    ++counts[remainders[k % remainders.size()].second];

  PopulationState state;
  state.seed = config.seed;
  state.agents.reserve(n);
  for (std::size_t g = 0; g < counts.size(); ++g)
    for (std::size_t k = 0; k < counts[g]; ++k)
      state.agents.push_back({static_cast<std::uint32_t>(g), config.endowment,
                              0.0, 0.0});
  return state;
}

GenerationOutcome run_generation(const PopulationState& state,
                                 const SimConfig& config) {
  const std::size_t n = state.agents.size();
  require(n == config.agents, "population size does not match the config");
  const std::uint64_t gen = state.generation;
  const std::uint64_t seed = state.seed;
  const PayoffMatrix& game = config.game;
  const double sigma_star = interior_ess(game).hawk_probability();

  GenerationOutcome out;
  out.played = state;
  std::vector<Agent>& agents = out.played.agents;

  // Endowment, then each agent draws from its gene's lottery.
  const std::vector<Lottery> trivial{Lottery::trivial(config.endowment)};
  const auto lotteries = choose_lotteries(state, config, trivial);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const Lottery& lottery = *lotteries[agents[i].gene];
    if (lottery.is_trivial()) {
      agents[i].consumption = lottery.law().atoms().front().value;
    } else {
      rng::CounterStream stream(seed, {gen, kLotteryDraw, i});
      agents[i].consumption = lottery.law().quantile(stream.uniform());
    }
  }

  // K rounds of uniformly random perfect matching.
  std::vector<OutcomeCounts> counts(n, OutcomeCounts{});
  const JointSignalLaw joint = config.signals == SignalSource::kExogenous
                                   ? joint_signal_law(config.theta)
                                   : JointSignalLaw{};
  const auto rounds = static_cast<std::int64_t>(config.interactions);
#pragma omp parallel
  {
    std::vector<OutcomeCounts> local(n, OutcomeCounts{});
    std::vector<std::uint32_t> order(n);
#pragma omp for schedule(static)
    for (std::int64_t round = 0; round < rounds; ++round) {
      rng::CounterStream stream(
          seed, {gen, kMatching, static_cast<std::uint64_t>(round)});
      std::iota(order.begin(), order.end(), 0u);
      for (std::size_t i = n - 1; i > 0; --i)
        std::swap(order[i], order[stream.below(i + 1)]);

      for (std::size_t p = 0; p < n; p += 2) {
        const std::uint32_t a = order[p];
        const std::uint32_t b = order[p + 1];
        double hawk_a;
        double hawk_b;
        if (config.signals == SignalSource::kExogenous) {
          const double u = stream.uniform();
          Action sig_a;
          Action sig_b;
          if (u < joint.hawk_dove) {
            sig_a = Action::kHawk;
            sig_b = Action::kDove;
          } else if (u < joint.hawk_dove + joint.dove_hawk) {
            sig_a = Action::kDove;
            sig_b = Action::kHawk;
          } else if (u < joint.hawk_dove + joint.dove_hawk + joint.hawk_hawk) {
            sig_a = sig_b = Action::kHawk;
          } else {
            sig_a = sig_b = Action::kDove;
          }
          hawk_a = config.genes[agents[a].gene].signal.respond(sig_a).hawk_probability();
          hawk_b = config.genes[agents[b].gene].signal.respond(sig_b).hawk_probability();
        } else if (agents[a].consumption == agents[b].consumption) {
          // No ordering information: both play the interior equilibrium.
          hawk_a = hawk_b = sigma_star;
        } else {
          const bool a_higher = agents[a].consumption > agents[b].consumption;
          Action sig_a = a_higher ? Action::kHawk : Action::kDove;
          Action sig_b = a_higher ? Action::kDove : Action::kHawk;
          if (config.misperception > 0.0) {
            if (stream.bernoulli(config.misperception))
              sig_a = sig_a == Action::kHawk ? Action::kDove : Action::kHawk;
            if (stream.bernoulli(config.misperception))
              sig_b = sig_b == Action::kHawk ? Action::kDove : Action::kHawk;
          }
          hawk_a = config.genes[agents[a].gene].signal.respond(sig_a).hawk_probability();
          hawk_b = config.genes[agents[b].gene].signal.respond(sig_b).hawk_probability();
        }
        const int act_a = stream.bernoulli(hawk_a) ? kHawk : kDove;
        const int act_b = stream.bernoulli(hawk_b) ? kHawk : kDove;
        ++local[a][act_a * 2 + act_b];
        ++local[b][act_b * 2 + act_a];
      }
    }
#pragma omp critical
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < 4; ++k) counts[i][k] += local[i][k];
  }

  const std::array<double, 4> payoff{game.s1(), game.s2(), game.s3(), game.s4()};
  const auto k_matches = static_cast<double>(config.interactions);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (int k = 0; k < 4; ++k) total += counts[i][k] * payoff[k];
    agents[i].social_good = total / k_matches;
    agents[i].fitness =
        config.fitness(agents[i].consumption, agents[i].social_good);
  }

  // Statistics of the generation just played.
  GenerationStats& stats = out.stats;
  stats.generation = gen;
  const std::size_t gene_count = config.genes.size();
  stats.gene_counts.assign(gene_count, 0);
  std::vector<double> fit_sum(gene_count, 0.0);
  std::vector<double> social_sum(gene_count, 0.0);
  double sum_c = 0.0, sum_s = 0.0, sum_f = 0.0;
  for (const Agent& agent : agents) {
    ++stats.gene_counts[agent.gene];
    fit_sum[agent.gene] += agent.fitness;
    social_sum[agent.gene] += agent.social_good;
    sum_c += agent.consumption;
    sum_s += agent.social_good;
    sum_f += agent.fitness;
  }
  const auto nd = static_cast<double>(n);
  stats.mean_consumption = sum_c / nd;
  stats.mean_social_good = sum_s / nd;
  stats.mean_fitness = sum_f / nd;
  double ss_c = 0.0, ss_s = 0.0;
  for (const Agent& agent : agents) {
    ss_c += (agent.consumption - stats.mean_consumption) *
            (agent.consumption - stats.mean_consumption);
    ss_s += (agent.social_good - stats.mean_social_good) *
            (agent.social_good - stats.mean_social_good);
  }
  stats.var_consumption = ss_c / nd;
  stats.var_social_good = ss_s / nd;
  stats.gene_mean_fitness.assign(gene_count,
                                 std::numeric_limits<double>::quiet_NaN());
  stats.gene_mean_social_good = stats.gene_mean_fitness;
  for (std::size_t g = 0; g < gene_count; ++g) {
    if (stats.gene_counts[g] == 0) continue;
    const auto count = static_cast<double>(stats.gene_counts[g]);
    stats.gene_mean_fitness[g] = fit_sum[g] / count;
    stats.gene_mean_social_good[g] = social_sum[g] / count;
  }

  // Fitness-proportional resampling, then mutation.
  std::vector<double> cumulative(n);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) cumulative[i] = running += agents[i].fitness;
  const double total_fitness = cumulative.back();
  require(total_fitness > 0.0, "population has zero total fitness");

  PopulationState& next = out.next;
  next.generation = gen + 1;
  next.seed = seed;
  next.agents.resize(n);
  next.previous_consumption.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    next.previous_consumption[i] = agents[i].consumption;

  rng::CounterStream reproduce(seed, {gen, kReproduction});
  rng::CounterStream mutate(seed, {gen, kMutation});
  for (std::size_t k = 0; k < n; ++k) {
    const double target = reproduce.uniform() * total_fitness;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    std::uint32_t gene = agents[static_cast<std::size_t>(it - cumulative.begin())].gene;
    if (mutate.uniform() < config.mutation_rate)
      gene = static_cast<std::uint32_t>(mutate.below(gene_count));
    next.agents[k] = {gene, config.endowment, 0.0, 0.0};
  }
  return out;
}

std::vector<double> SimulationResult::final_shares() const {
  std::vector<double> shares;
  for (const Agent& agent : final_state.agents) {
    if (agent.gene >= shares.size()) shares.resize(agent.gene + 1, 0.0);
    shares[agent.gene] += 1.0;
  }
  for (double& s : shares) s /= static_cast<double>(final_state.agents.size());
  return shares;
}

SimulationResult simulate(const SimConfig& config) {
  SimulationResult result;
  PopulationState state = initial_population(config);
  result.history.reserve(config.generations);
  for (std::size_t g = 0; g < config.generations; ++g) {
    GenerationOutcome outcome = run_generation(state, config);
    result.history.push_back(std::move(outcome.stats));
    state = std::move(outcome.next);
  }
  result.final_state = std::move(state);
  return result;
}

ConservationCheck conservation(const GenerationStats& stats,
                               const SimConfig& config) {
  const auto n = static_cast<double>(config.agents);
  auto z = [](double excess, double variance, double count) {
    const double se = std::sqrt(variance / count);
    if (se > 0.0) return excess / se;
    return excess > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  const PayoffMatrix& g = config.game;
  const double bound = std::max({g.s1(), g.s4(), 0.5 * (g.s2() + g.s3())});
  ConservationCheck out;
  out.consumption_z =
      z(std::abs(stats.mean_consumption - config.endowment), stats.var_consumption, n);
  out.social_good_z =
      z(std::max(0.0, stats.mean_social_good - bound), stats.var_social_good, n);
  return out;
}

}  // namespace statuspref
