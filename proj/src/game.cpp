#include "statuspref/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "statuspref/error.hpp"

namespace statuspref {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

double odds(double p) {
  return p >= 1.0 ? std::numeric_limits<double>::infinity() : p / (1.0 - p);
}

}  // namespace

PayoffMatrix PayoffMatrix::general(double s1, double s2, double s3,
                                   double s4) {
  for (double s : {s1, s2, s3, s4})
    require(std::isfinite(s), "payoff entries must be finite");
  const double diagonal = std::max(s1, s4);
  if (!(s2 > diagonal && s3 > diagonal)) {
    std::ostringstream msg;
    msg << "not an anti-coordination game: off-diagonal payoffs (" << s2
        << ", " << s3 << ") must exceed max(s1, s4) = " << diagonal;
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
  return PayoffMatrix(s1, s2, s3, s4);
}

PayoffMatrix PayoffMatrix::normalized(double lead, double defer) {
  require(std::isfinite(lead) && std::isfinite(defer),
          "payoff entries must be finite");
  require(defer > 0.0, "normalized game needs defer payoff > 0");
  require(lead >= defer, "normalized game needs lead payoff >= defer payoff");
  return PayoffMatrix(0.0, lead, defer, 0.0);
}

double PayoffMatrix::payoff(Action own, Action opponent) const {
  if (own == Action::kHawk) return opponent == Action::kHawk ? s1_ : s2_;
  return opponent == Action::kHawk ? s3_ : s4_;
}

double PayoffMatrix::mixed_payoff(double own_hawk, double opponent_hawk) const {
  const double own_dove = 1.0 - own_hawk;
  const double opp_dove = 1.0 - opponent_hawk;
  return own_hawk * (opponent_hawk * s1_ + opp_dove * s2_) +
         own_dove * (opponent_hawk * s3_ + opp_dove * s4_);
}

double PayoffMatrix::lead() const {
  require(is_normalized(), "operation requires the normalized payoff matrix");
  return s2_;
}

double PayoffMatrix::defer() const {
  require(is_normalized(), "operation requires the normalized payoff matrix");
  return s3_;
}

MixedStrategy::MixedStrategy(double hawk) : hawk_(hawk) {
  require(is_probability(hawk), "hawk probability must lie in [0, 1]");
}

void SignalStructure::validate() const {
  require(is_probability(dove_given_hawk),
          "theta dove|hawk must lie in [0, 1]");
  require(is_probability(hawk_given_dove),
          "theta hawk|dove must lie in [0, 1]");
}

SignalPolicy SignalPolicy::following(double follow) {
  return {MixedStrategy(follow), MixedStrategy(1.0 - follow)};
}

SignalPolicy SignalPolicy::ignoring(MixedStrategy play) { return {play, play}; }

SignalPolicy SignalPolicy::constant(Action action) {
  const auto play = action == Action::kHawk ? MixedStrategy::hawk()
                                            : MixedStrategy::dove();
  return {play, play};
}

bool SignalPolicy::follows_recommendations() const {
  const double h = on_hawk.hawk_probability();
  const double d = on_dove.hawk_probability();
  return (h == 1.0 && d == 0.0) || (h == 0.0 && d == 1.0);
}

double stage_payoff(Action own, Action opponent, const PayoffMatrix& game) {
  return game.payoff(own, opponent);
}

MixedStrategy interior_ess(const PayoffMatrix& game) {
  // Hawk and dove earn the same against a population hawkish w.p. sigma.
  const double lead_gain = game.s2() - game.s4();
  const double defer_gain = game.s3() - game.s1();
  return MixedStrategy(lead_gain / (lead_gain + defer_gain));
}

double nash_payoff(const PayoffMatrix& game) {
  const double sigma = interior_ess(game).hawk_probability();
  return game.mixed_payoff(sigma, sigma);
}

double population_payoff(const MixedStrategy& own, const StrategyMixture& pop,
                         const PayoffMatrix& game) {
  double total_weight = 0.0;
  double value = 0.0;
  for (const auto& [strategy, weight] : pop) {
    require(weight >= 0.0, "mixture weights must be nonnegative");
    total_weight += weight;
    value += weight * game.mixed_payoff(own.hawk_probability(),
                                        strategy.hawk_probability());
  }
  require(std::abs(total_weight - 1.0) <= 1e-12,
          "mixture weights must sum to one");
  return value;
}

ConditionalPayoffs signal_payoffs(double mutant, double incumbent,
                                  const SignalStructure& theta,
                                  const PayoffMatrix& game) {
  require(is_probability(mutant) && is_probability(incumbent),
          "follow probabilities must lie in [0, 1]");
  theta.validate();
  // An opponent told "hawk" plays hawk w.p. incumbent; told "dove", w.p.
  // 1 - incumbent.
  const double opp_hawk_if_told_hawk = incumbent;
  const double opp_hawk_if_told_dove = 1.0 - incumbent;

  ConditionalPayoffs out;
  {
    const double own_hawk = 1.0 - mutant;
    out.given_dove =
        theta.hawk_given_dove * game.mixed_payoff(own_hawk, opp_hawk_if_told_hawk) +
        (1.0 - theta.hawk_given_dove) *
            game.mixed_payoff(own_hawk, opp_hawk_if_told_dove);
  }
  {
    const double own_hawk = mutant;
    out.given_hawk =
        theta.dove_given_hawk * game.mixed_payoff(own_hawk, opp_hawk_if_told_dove) +
        (1.0 - theta.dove_given_hawk) *
            game.mixed_payoff(own_hawk, opp_hawk_if_told_hawk);
  }
  return out;
}

EssVerdict following_is_ess(const SignalStructure& theta,
                            const PayoffMatrix& game) {
  theta.validate();
  const double lead = game.lead();
  const double defer = game.defer();
  EssVerdict verdict;
  verdict.lead_margin = odds(theta.dove_given_hawk) - defer / lead;
  verdict.defer_margin = odds(theta.hawk_given_dove) - lead / defer;
  verdict.is_ess = verdict.lead_margin > 0.0 && verdict.defer_margin > 0.0;
  return verdict;
}

std::vector<double> replicator_trajectory(const PayoffMatrix& game,
                                          double hawk0, int steps, double dt) {
  require(hawk0 > 0.0 && hawk0 < 1.0, "initial hawk share must lie in (0, 1)");
  require(steps >= 0, "step count must be nonnegative");
  require(dt > 0.0, "time step must be positive");
  std::vector<double> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  double sigma = hawk0;
  path.push_back(sigma);
  for (int t = 0; t < steps; ++t) {
    const double hawk_fit = game.mixed_payoff(1.0, sigma);
    const double dove_fit = game.mixed_payoff(0.0, sigma);
    sigma += dt * sigma * (1.0 - sigma) * (hawk_fit - dove_fit);
    sigma = std::clamp(sigma, 0.0, 1.0);
    path.push_back(sigma);
  }
  return path;
}

}  // namespace statuspref
