#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "statuspref/error.hpp"
#include "statuspref/game.hpp"

using namespace statuspref;
using doctest::Approx;

namespace {

const PayoffMatrix kGame = PayoffMatrix::normalized(2.0, 1.0);

// Simulates the recommendation-then-play process directly: draw the joint
// recommendation from the symmetric law implied by theta, let the focal
// player follow with prob `a` and the opponent with prob `b`.
struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

McEstimate mc_conditional(double a, double b, const SignalStructure& theta,
                          const PayoffMatrix& game, Action own_signal, int draws,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double opp_other = own_signal == Action::kHawk ? theta.dove_given_hawk
                                                       : theta.hawk_given_dove;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const Action opp_signal =
        u(rng) < opp_other
            ? (own_signal == Action::kHawk ? Action::kDove : Action::kHawk)
            : own_signal;
    auto flip = [](Action x) { return x == Action::kHawk ? Action::kDove : Action::kHawk; };
    const Action mine = u(rng) < a ? own_signal : flip(own_signal);
    const Action theirs = u(rng) < b ? opp_signal : flip(opp_signal);
    const double p = game.payoff(mine, theirs);
    sum += p;
    sum_sq += p * p;
  }
  const double mean = sum / draws;
  return {mean, std::sqrt((sum_sq / draws - mean * mean) / draws)};
}

}  // namespace

TEST_CASE("stage payoffs") {
  CHECK(stage_payoff(Action::kHawk, Action::kDove, kGame) == 2.0);
  CHECK(stage_payoff(Action::kHawk, Action::kHawk, kGame) == 0.0);
  CHECK(stage_payoff(Action::kDove, Action::kHawk, kGame) == 1.0);
  CHECK(stage_payoff(Action::kDove, Action::kDove, kGame) == 0.0);
}

TEST_CASE("game construction errors") {
  CHECK_THROWS_AS(PayoffMatrix::normalized(1.0, 2.0), Error);
  CHECK_THROWS_AS(PayoffMatrix::normalized(1.0, 0.0), Error);
  CHECK_THROWS_AS(PayoffMatrix::general(1.0, 2.0, 0.5, 0.0), Error);
  CHECK_THROWS_AS(MixedStrategy(1.5), Error);
  CHECK_THROWS_AS(PayoffMatrix::general(0.2, 2.0, 1.0, 0.0).lead(), Error);
  CHECK_NOTHROW(PayoffMatrix::normalized(1.0, 1.0));
}

TEST_CASE("interior ESS") {
  CHECK(interior_ess(kGame).hawk_probability() == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(interior_ess(PayoffMatrix::normalized(1, 1)).hawk_probability() == 0.5);
}

TEST_CASE("interior ESS of a general matrix matches a best-response grid search") {
  const auto game = PayoffMatrix::general(0.2, 2.0, 1.0, 0.0);
  const double sigma = interior_ess(game).hawk_probability();
  // The ESS is the opponent mix at which hawk and dove earn the same; scan a
  // 1e-4 grid for the sign change of the hawk advantage.
  double found = -1.0;
  double prev = game.mixed_payoff(1.0, 0.0) - game.mixed_payoff(0.0, 0.0);
  for (int i = 1; i <= 10000; ++i) {
    const double q = i * 1e-4;
    const double adv = game.mixed_payoff(1.0, q) - game.mixed_payoff(0.0, q);
    if (prev > 0.0 && adv <= 0.0) {
      found = q;
      break;
    }
    prev = adv;
  }
  REQUIRE(found > 0.0);
  CHECK(std::abs(sigma - found) <= 1e-4);
  // And it is not invadable by any pure strategy at the grid resolution.
  for (double m : {0.0, 0.25, 0.5, 0.75, 1.0})
    CHECK(game.mixed_payoff(m, sigma) <= game.mixed_payoff(sigma, sigma) + 1e-12);
}

TEST_CASE("nash payoff") {
  CHECK(nash_payoff(kGame) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(nash_payoff(PayoffMatrix::normalized(1, 1)) == Approx(0.5).epsilon(1e-15));
  const auto g = PayoffMatrix::normalized(3, 1);
  CHECK(nash_payoff(g) == Approx(0.75).epsilon(1e-15));
  const double s = 0.75;
  CHECK(s * (1 - s) * (3 + 1) == Approx(nash_payoff(g)).epsilon(1e-15));
}

TEST_CASE("population payoff") {
  CHECK(population_payoff(MixedStrategy::hawk(), {{MixedStrategy::dove(), 1.0}}, kGame) == 2.0);
  const MixedStrategy ess(2.0 / 3.0);
  CHECK(population_payoff(ess, {{ess, 1.0}}, kGame) == Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(population_payoff(MixedStrategy::hawk(),
                          {{MixedStrategy::dove(), 0.5}, {MixedStrategy::hawk(), 0.5}},
                          kGame) == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(population_payoff(ess, {{ess, 0.5}}, kGame), Error);
}

TEST_CASE("signal payoffs") {
  auto perfect_dove = signal_payoffs(1, 1, {0.3, 1.0}, kGame);
  CHECK(perfect_dove.given_dove == Approx(1.0).epsilon(1e-15));
  auto perfect_hawk = signal_payoffs(1, 1, {1.0, 0.3}, kGame);
  CHECK(perfect_hawk.given_hawk == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("signal payoffs agree with a Monte-Carlo simulation of play") {
  const SignalStructure theta{0.9, 0.9};
  const auto exact = signal_payoffs(1.0, 0.8, theta, kGame);
  const auto dove = mc_conditional(1.0, 0.8, theta, kGame, Action::kDove, 1'000'000, 11);
  const auto hawk = mc_conditional(1.0, 0.8, theta, kGame, Action::kHawk, 1'000'000, 12);
  CHECK(std::abs(dove.mean - exact.given_dove) <= 3 * dove.stderr_);
  CHECK(std::abs(hawk.mean - exact.given_hawk) <= 3 * hawk.stderr_);
}

TEST_CASE("following is ESS examples") {
  const auto v = following_is_ess({0.5, 0.8}, kGame);
  CHECK(v.is_ess);
  CHECK(v.lead_margin == Approx(1.0 - 0.5));
  CHECK(v.defer_margin == Approx(4.0 - 2.0));
  for (int i = 0; i < 20; ++i) {
    gen::Source src(100 + i);
    CHECK(following_is_ess({1.0, 1.0}, src.normalized_game()).is_ess);
  }
  const auto boundary = following_is_ess({0.5, 2.0 / 3.0}, kGame);
  CHECK_FALSE(boundary.is_ess);
  CHECK(std::abs(signal_payoffs(1, 1, {0.5, 2.0 / 3.0}, kGame).given_dove -
                 nash_payoff(kGame)) <= 1e-12);
  CHECK_FALSE(following_is_ess({0.33, 0.8}, kGame).is_ess);
  CHECK_THROWS_AS(following_is_ess({1.2, 0.5}, kGame), Error);
}

TEST_CASE("replicator dynamics") {
  auto path = replicator_trajectory(kGame, 0.1, 20000, 0.05);
  CHECK(std::abs(path.back() - 2.0 / 3.0) < 1e-6);
  path = replicator_trajectory(kGame, 2.0 / 3.0, 100, 0.05);
  for (double x : path) CHECK(std::abs(x - 2.0 / 3.0) < 1e-14);
  path = replicator_trajectory(PayoffMatrix::normalized(1, 1), 0.3, 20000, 0.05);
  CHECK(std::abs(path.back() - 0.5) < 1e-6);
  CHECK_THROWS_AS(replicator_trajectory(kGame, 0.0, 10, 0.05), Error);
}

TEST_CASE("property: interior ESS against itself earns the nash payoff, below defer") {
  gen::Source src(7);
  for (int i = 0; i < 500; ++i) {
    const auto game = src.normalized_game();
    const auto ess = interior_ess(game);
    CHECK(population_payoff(ess, {{ess, 1.0}}, game) ==
          Approx(nash_payoff(game)).epsilon(1e-12));
    CHECK(nash_payoff(game) < game.defer());
    CHECK(game.defer() < (game.lead() + game.defer()) / 2.0);
  }
}

TEST_CASE("property: the ESS verdict is monotone in both conditionals") {
  gen::Source src(8);
  for (int i = 0; i < 500; ++i) {
    const auto game = src.normalized_game();
    const auto t = src.theta();
    if (!following_is_ess(t, game).is_ess) continue;
    const SignalStructure up1{src.uniform(t.dove_given_hawk, 1.0), t.hawk_given_dove};
    const SignalStructure up2{t.dove_given_hawk, src.uniform(t.hawk_given_dove, 1.0)};
    CHECK(following_is_ess(up1, game).is_ess);
    CHECK(following_is_ess(up2, game).is_ess);
  }
}

TEST_CASE("property: on a threshold the follower earns the nash payoff") {
  gen::Source src(9);
  for (int i = 0; i < 300; ++i) {
    const auto game = src.normalized_game();
    const double lead = game.lead(), defer = game.defer();
    const double on_lead = defer / (lead + defer);  // dove_given_hawk threshold
    const double on_defer = lead / (lead + defer);  // hawk_given_dove threshold
    const double nash = nash_payoff(game);
    CHECK(std::abs(signal_payoffs(1, 1, {on_lead, src.uniform(0, 1)}, game).given_hawk -
                   nash) <= 1e-9);
    CHECK(std::abs(signal_payoffs(1, 1, {src.uniform(0, 1), on_defer}, game).given_dove -
                   nash) <= 1e-9);
  }
}

TEST_CASE("property: an ESS strictly dominates partial following") {
  gen::Source src(10);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 100; ++i) {
    const auto game = src.normalized_game();
    const auto t = src.theta();
    if (!following_is_ess(t, game).is_ess) continue;
    ++checked;
    const auto full = signal_payoffs(1, 1, t, game);
    for (int k = 0; k <= 9; ++k) {
      const auto partial = signal_payoffs(k / 10.0, 1, t, game);
      CHECK(partial.given_dove < full.given_dove);
      CHECK(partial.given_hawk < full.given_hawk);
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("property: relabeling recommendations leaves payoffs unchanged") {
  gen::Source src(11);
  for (int i = 0; i < 300; ++i) {
    const auto game = src.normalized_game();
    const auto t = src.theta();
    const double a = src.uniform(0, 1), b = src.uniform(0, 1);
    // Overturning every recommendation under theta is following under the
    // swapped labels: "hawk" now arrives where "dove" did.
    const auto orig = signal_payoffs(1 - a, 1 - b, t, game);
    const auto mirrored = signal_payoffs(a, b, {t.hawk_given_dove, t.dove_given_hawk}, game);
    CHECK(orig.given_dove == Approx(mirrored.given_hawk).epsilon(1e-12));
    CHECK(orig.given_hawk == Approx(mirrored.given_dove).epsilon(1e-12));
  }
}
