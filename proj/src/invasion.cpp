#include "statuspref/invasion.hpp"

#include <algorithm>
#include <cmath>

#include "statuspref/error.hpp"
#include "statuspref/numeric.hpp"

namespace statuspref {

namespace {

MixedDistribution lottery_law(const Gene& gene, double endowment) {
  switch (gene.lottery.kind) {
    case LotteryPolicy::Kind::kTrivial:
      return MixedDistribution::degenerate(endowment);
    case LotteryPolicy::Kind::kFixed:
      return gene.lottery.fixed->law();
    case LotteryPolicy::Kind::kMenu:
      break;
  }
  fail(ErrorCode::kInvalidArgument,
       "gene '" + gene.name + "': analytic fitness needs a fixed lottery");
}

// Hawk probability after a recommendation that is flipped with probability q.
double noisy_response(const SignalPolicy& policy, Action sent, double q) {
  const Action other = sent == Action::kHawk ? Action::kDove : Action::kHawk;
  return (1.0 - q) * policy.respond(sent).hawk_probability() +
         q * policy.respond(other).hawk_probability();
}

struct Mixture {
  std::vector<MixedDistribution> laws;
  std::vector<double> breaks;
};

Mixture mixture_laws(const std::vector<Gene>& genes, const SimConfig& config) {
  Mixture m;
  for (const Gene& gene : genes) {
    m.laws.push_back(lottery_law(gene, config.endowment));
    const auto b = m.laws.back().breakpoints();
    m.breaks.insert(m.breaks.end(), b.begin(), b.end());
  }
  std::sort(m.breaks.begin(), m.breaks.end());
  m.breaks.erase(std::unique(m.breaks.begin(), m.breaks.end()), m.breaks.end());
  return m;
}

double social_good_in(std::size_t focal, double c, const std::vector<Gene>& genes,
                      const std::vector<double>& shares,
                      const std::vector<MixedDistribution>& laws,
                      const SimConfig& config) {
  const PayoffMatrix& game = config.game;
  const SignalPolicy& own = genes[focal].signal;
  double total = 0.0;
  if (config.signals == SignalSource::kExogenous) {
    const JointSignalLaw joint = joint_signal_law(config.theta);
    for (std::size_t u = 0; u < genes.size(); ++u) {
      const SignalPolicy& opp = genes[u].signal;
      auto term = [&](Action mine, Action theirs) {
        return game.mixed_payoff(own.respond(mine).hawk_probability(),
                                 opp.respond(theirs).hawk_probability());
      };
      total += shares[u] * (joint.hawk_dove * term(Action::kHawk, Action::kDove) +
                            joint.dove_hawk * term(Action::kDove, Action::kHawk) +
                            joint.hawk_hawk * term(Action::kHawk, Action::kHawk) +
                            joint.dove_dove * term(Action::kDove, Action::kDove));
    }
    return total;
  }
  const double q = config.misperception;
  const double tie = nash_payoff(game);
  const double lead_hawk = noisy_response(own, Action::kHawk, q);
  const double defer_hawk = noisy_response(own, Action::kDove, q);
  for (std::size_t u = 0; u < genes.size(); ++u) {
    if (shares[u] == 0.0) continue;
    const SignalPolicy& opp = genes[u].signal;
    const double below = laws[u].cdf_left(c);
    const double at = laws[u].atom_mass(c);
    const double above = 1.0 - below - at;
    total += shares[u] *
             (below * game.mixed_payoff(lead_hawk,
                                        noisy_response(opp, Action::kDove, q)) +
              above * game.mixed_payoff(defer_hawk,
                                        noisy_response(opp, Action::kHawk, q)) +
              at * tie);
  }
  return total;
}

void check_mixture(const std::vector<Gene>& genes,
                   const std::vector<double>& shares) {
  require(!genes.empty() && genes.size() == shares.size(),
          "gene and share lists must be nonempty and of equal length");
  double sum = 0.0;
  for (double s : shares) {
    require(s >= 0.0, "shares must be nonnegative");
    sum += s;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "shares must sum to 1");
}

}  // namespace

double expected_social_good(std::size_t focal, double c,
                            const std::vector<Gene>& genes,
                            const std::vector<double>& shares,
                            const SimConfig& config) {
  check_mixture(genes, shares);
  require(focal < genes.size(), "focal gene index out of range");
  const Mixture m = mixture_laws(genes, config);
  return social_good_in(focal, c, genes, shares, m.laws, config);
}

std::vector<double> analytic_fitness(const std::vector<Gene>& genes,
                                     const std::vector<double>& shares,
                                     const SimConfig& config) {
  check_mixture(genes, shares);
  const Mixture m = mixture_laws(genes, config);
  std::vector<double> out;
  for (std::size_t t = 0; t < genes.size(); ++t) {
    out.push_back(integrate_against(
        m.laws[t],
        [&](double x) {
          return config.fitness(
              x, social_good_in(t, x, genes, shares, m.laws, config));
        },
        m.breaks));
  }
  return out;
}

std::optional<bool> InvasionPoint::simulation_agrees() const {
  if (!simulated) return std::nullopt;
  const double analytic = mutant_fitness - incumbent_fitness;
  const double sim = simulated->difference();
  if ((analytic < 0.0) == (sim < 0.0)) return true;
  return std::abs(sim - analytic) <= 3.0 * simulated->difference_stderr;
}

bool InvasionReport::resists_all() const {
  return std::all_of(points.begin(), points.end(),
                     [](const InvasionPoint& p) { return p.mutant_loses(); });
}

InvasionReport invasion_test(const Gene& incumbent, const Gene& mutant,
                             const SimConfig& config,
                             const InvasionOptions& options) {
  require(!options.eps_grid.empty(), "eps grid must be nonempty");
  std::vector<double> grid = options.eps_grid;
  for (double eps : grid)
    require(eps > 0.0 && eps < 1.0, "eps values must lie in (0, 1)");
  std::sort(grid.begin(), grid.end());

  const std::vector<Gene> genes{incumbent, mutant};
  const bool closed_form_applies =
      config.signals == SignalSource::kConsumption &&
      config.misperception == 0.0 &&
      incumbent.signal == SignalPolicy::following() &&
      mutant.signal == SignalPolicy::following() &&
      mutant.lottery.kind == LotteryPolicy::Kind::kTrivial &&
      incumbent.lottery.kind != LotteryPolicy::Kind::kMenu;

  InvasionReport report;
  for (double eps : grid) {
    InvasionPoint point;
    point.eps = eps;
    const auto fit = analytic_fitness(genes, {1.0 - eps, eps}, config);
    point.incumbent_fitness = fit[0];
    point.mutant_fitness = fit[1];
    if (closed_form_applies) {
      const MixedDistribution law = lottery_law(incumbent, config.endowment);
      const double c0 = config.endowment;
      point.trivial_mutant_closed_form =
          config.fitness(c0, (1.0 - eps) * social_good(law, c0, config.game) +
                                 eps * nash_payoff(config.game));
    }
    if (options.simulation_seeds > 0) {
      SimConfig sim = config;
      sim.genes = genes;
      sim.initial_shares = {1.0 - eps, eps};
      sim.generations = 1;
      sim.mutation_rate = 0.0;
      std::vector<double> diffs;
      SimulatedFitness s;
      for (std::size_t k = 0; k < options.simulation_seeds; ++k) {
        sim.seed = config.seed + k;
        const GenerationOutcome out = run_generation(initial_population(sim), sim);
        const double inc = out.stats.gene_mean_fitness[0];
        const double mut = out.stats.gene_mean_fitness[1];
        require(!std::isnan(mut) && !std::isnan(inc),
                "population too small to hold both genes at this eps");
        s.incumbent_mean += inc;
        s.mutant_mean += mut;
        diffs.push_back(mut - inc);
      }
      const auto count = static_cast<double>(diffs.size());
      s.seeds = diffs.size();
      s.incumbent_mean /= count;
      s.mutant_mean /= count;
      if (diffs.size() > 1) {
        const double mean = s.mutant_mean - s.incumbent_mean;
        double ss = 0.0;
        for (double d : diffs) ss += (d - mean) * (d - mean);
        s.difference_stderr = std::sqrt(ss / (count - 1.0) / count);
      }
      point.simulated = s;
    }
    report.points.push_back(point);
  }
  for (const InvasionPoint& p : report.points) {
    if (!p.mutant_loses()) break;
    report.barrier = p.eps;
  }
  return report;
}

DispersionComparison compare_dispersion(double c0, double eps, double delta,
                                        std::uint64_t n,
                                        const FitnessSpec& fitness,
                                        const PayoffMatrix& game) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require(delta > 0.0 && delta < c0, "delta must lie in (0, c0)");
  require(n >= 1, "n must be >= 1");
  DispersionComparison out;
  out.eps = eps;
  out.delta = delta;
  out.n = n;
  const double nash = nash_payoff(game);
  const double w = eps / (2.0 * static_cast<double>(n));
  out.mutant_atom = fitness(c0 - delta, (1.0 - w) * nash + w * game.defer());
  out.incumbent = fitness(c0, nash);
  return out;
}

std::optional<DispersionComparison> find_profitable_dispersion(
    double c0, double eps, const FitnessSpec& fitness, const PayoffMatrix& game,
    int max_exponent) {
  double delta = 1.0;
  for (int k = 1; k <= max_exponent; ++k) {
    delta /= 10.0;
    if (delta >= c0) continue;
    const NstarResult nstar = find_nstar(c0, delta, fitness, game);
    const DispersionComparison cmp =
        compare_dispersion(c0, eps, delta, nstar.nstar, fitness, game);
    if (cmp.margin() > 0.0) return cmp;
  }
  return std::nullopt;
}

}  // namespace statuspref
