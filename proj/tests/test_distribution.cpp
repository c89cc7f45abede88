#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "statuspref/distribution.hpp"
#include "statuspref/error.hpp"
#include "statuspref/json_io.hpp"

using namespace statuspref;
using doctest::Approx;

namespace {

const PayoffMatrix kGame = PayoffMatrix::normalized(2.0, 1.0);

MixedDistribution atom_plus_segment() {
  return MixedDistribution({{1.0, 0.5}}, {{2.0, 3.0, 0.5}});
}

// Pairwise payoff of meeting: lead if strictly above, defer if below, nash
// on a tie.
double meeting(double mine, double theirs, const PayoffMatrix& game) {
  if (mine > theirs) return game.lead();
  if (mine < theirs) return game.defer();
  return nash_payoff(game);
}

}  // namespace

TEST_CASE("cdf and left limit") {
  const auto d = MixedDistribution::degenerate(1.0);
  CHECK(d.cdf(1.0) == 1.0);
  CHECK(d.cdf(0.999) == 0.0);
  CHECK(d.cdf_left(1.0) == 0.0);
  const auto u = MixedDistribution::uniform(1.0, 2.0);
  CHECK(u.cdf(1.5) == Approx(0.5).epsilon(1e-15));
  CHECK(u.cdf_left(1.5) == Approx(0.5).epsilon(1e-15));
  CHECK(atom_plus_segment().cdf_left(2.5) == Approx(0.75).epsilon(1e-15));
}

TEST_CASE("rank") {
  CHECK(rank(MixedDistribution::degenerate(1.0), 1.0) == 0.5);
  const auto u = MixedDistribution::uniform(1.0, 2.0);
  for (double lambda : {0.0, 0.3, 1.0})
    CHECK(rank(u, 1.7, {lambda}) == Approx(u.cdf(1.7)).epsilon(1e-15));
  CHECK(rank(atom_plus_segment(), 1.0, {0.0}) == 0.5);
}

TEST_CASE("social good") {
  CHECK(social_good(MixedDistribution::degenerate(1.0), 1.0, kGame) ==
        Approx(2.0 / 3.0).epsilon(1e-15));
  const auto u = MixedDistribution::uniform(1.0, 2.0);
  CHECK(social_good(u, 1.5, kGame) == Approx(1.5).epsilon(1e-15));
  CHECK(social_good(u, 0.5, kGame) == 1.0);
  CHECK(social_good(u, 2.5, kGame) == 2.0);
}

TEST_CASE("aggregate social good") {
  CHECK(aggregate_social_good(MixedDistribution::uniform(1, 2), kGame) ==
        Approx(1.5).epsilon(1e-15));
  CHECK(aggregate_social_good(MixedDistribution::degenerate(1), kGame) ==
        Approx(2.0 / 3.0).epsilon(1e-15));
  // Two equal atoms: the low one ties half the time and defers otherwise,
  // the high one ties or leads. 0.5(0.5*1 + 0.5*2/3) + 0.5(0.5*2 + 0.5*2/3).
  const MixedDistribution two({{1, 0.5}, {2, 0.5}}, {});
  const double expected = 0.5 * (0.5 * 1 + 0.5 * 2.0 / 3) + 0.5 * (0.5 * 2 + 0.5 * 2.0 / 3);
  CHECK(expected == Approx(13.0 / 12.0).epsilon(1e-15));
  CHECK(aggregate_social_good(two, kGame) == Approx(expected).epsilon(1e-14));
}

TEST_CASE("canonical form") {
  const MixedDistribution a({{1, 0.25}, {1, 0.25}}, {{2, 3, 0.25}, {2, 3, 0.25}});
  const MixedDistribution b({{1, 0.5}}, {{2, 3, 0.5}});
  CHECK(a == b);
  // Split segments of equal density merge back.
  const MixedDistribution c({}, {{0, 1, 0.5}, {1, 2, 0.5}});
  CHECK(c == MixedDistribution::uniform(0, 2));
  // An interior atom cuts the segment.
  const MixedDistribution d({{1, 0.5}}, {{0, 2, 0.5}});
  CHECK(d.segments().size() == 2);
  CHECK(d.cdf(1.0) == Approx(0.75));
  CHECK(d.cdf_left(1.0) == Approx(0.25));
  CHECK_THROWS_AS(MixedDistribution({{1, 0.5}}, {}), Error);
  CHECK_THROWS_AS(MixedDistribution({{-1, 1.0}}, {}), Error);
  CHECK_THROWS_AS(MixedDistribution({}, {{2, 1, 1.0}}), Error);
}

TEST_CASE("quantile inverts the cdf") {
  const auto d = atom_plus_segment();
  CHECK(d.quantile(0.0) == 1.0);
  CHECK(d.quantile(0.49) == 1.0);
  CHECK(d.quantile(0.75) == Approx(2.5));
  CHECK(d.mean() == Approx(0.5 * 1 + 0.5 * 2.5));
  CHECK(d.shifted(1.0).mean() == Approx(d.mean() + 1.0));
  CHECK(d.shifted(1.0).variance() == Approx(d.variance()));
}

TEST_CASE("property: cdf monotone, right-continuous, left limit below") {
  gen::Source src(21);
  for (int i = 0; i < 200; ++i) {
    const auto d = src.distribution();
    double prev = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double c = k * 0.03;
      const double v = d.cdf(c);
      CHECK(v >= prev - 1e-15);
      CHECK(d.cdf_left(c) <= v + 1e-15);
      CHECK(v - d.cdf_left(c) == Approx(d.atom_mass(c)).epsilon(1e-12));
      CHECK(std::abs(d.cdf(c + 1e-12) - v) < 1e-9);
      prev = v;
    }
    CHECK(d.cdf(11.0) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("property: social good is monotone and bounded") {
  gen::Source src(22);
  for (int i = 0; i < 200; ++i) {
    const auto game = src.normalized_game();
    const auto d = src.distribution();
    const double lo = std::min(game.defer(), nash_payoff(game));
    double prev = -1.0;
    for (int k = 0; k <= 200; ++k) {
      const double s = social_good(d, k * 0.06, game);
      CHECK(s >= prev - 1e-12);
      CHECK(s >= lo - 1e-12);
      CHECK(s <= game.lead() + 1e-12);
      prev = s;
    }
  }
}

TEST_CASE("property: aggregate social good bound and exact atom penalty") {
  gen::Source src(23);
  for (int i = 0; i < 300; ++i) {
    const auto game = src.normalized_game();
    const auto d = src.distribution();
    const double efficient = (game.lead() + game.defer()) / 2.0;
    // Non-tied meetings average the efficient value; ties, with probability
    // sum m_i^2, earn the nash payoff.
    double tie = 0.0;
    for (const auto& a : d.atoms()) tie += a.mass * a.mass;
    const double penalty = tie * (efficient - nash_payoff(game));
    const double agg = aggregate_social_good(d, game);
    CHECK(efficient - agg == Approx(penalty).epsilon(1e-10).scale(1.0));
    CHECK(agg <= efficient + 1e-12);
    if (!d.has_atoms()) CHECK(agg == Approx(efficient).epsilon(1e-12));
    else CHECK(agg < efficient);
  }
}

TEST_CASE("atom penalty agrees with Monte-Carlo pairing") {
  const MixedDistribution d({{1.5, 0.3}}, {{1.0, 2.0, 0.7}});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  const int pairs = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const double p = meeting(d.quantile(u(rng)), d.quantile(u(rng)), kGame);
    sum += p;
    sum_sq += p * p;
  }
  const double mean = sum / pairs;
  const double se = std::sqrt((sum_sq / pairs - mean * mean) / pairs);
  CHECK(std::abs(mean - aggregate_social_good(d, kGame)) <= 3 * se);
  CHECK(aggregate_social_good(d, kGame) ==
        Approx(1.5 - 0.09 * (1.5 - 2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("property: rank with equal weights equals the cdf on smooth laws") {
  gen::Source src(24);
  for (int i = 0; i < 100; ++i) {
    const auto d = src.distribution(false, true);
    for (int k = 0; k < 50; ++k) {
      const double c = src.uniform(0, 11);
      CHECK(rank(d, c) == Approx(d.cdf(c)).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: distributions round-trip through json") {
  gen::Source src(25);
  for (int i = 0; i < 100; ++i) {
    const auto d = src.distribution();
    const auto back = Json::parse(Json(d).dump()).get<MixedDistribution>();
    CHECK(back == d);
  }
}
