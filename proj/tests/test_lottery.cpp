#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "statuspref/error.hpp"
#include "statuspref/lottery.hpp"

using namespace statuspref;
using doctest::Approx;

namespace {

const PayoffMatrix kGame = PayoffMatrix::normalized(2.0, 1.0);
const FitnessSpec kPower = FitnessSpec::power(0.5, 1.0);
const FitnessSpec kAdditive = FitnessSpec::additive(0.5, 1.0);

// Both sides of the lower-bound inequality for corrected G^n, written out
// by hand: on the band [c0, c0 + delta/n] the rank is the atom mass plus the
// uniform share below c; composite Simpson with `panels` panels.
struct Sides {
  double lower_bound;
  double trivial;
};

Sides oracle_sides(double c0, double delta, std::uint64_t n, const FitnessSpec& f,
                   const PayoffMatrix& game, int panels) {
  const double atom = 1.0 / (2.0 * n);
  const double width = delta / n;
  auto s_at = [&](double c) {
    const double g = atom + (1.0 - atom) * (c - c0) / width;
    return game.defer() + g * (game.lead() - game.defer());
  };
  double sum = 0.0;
  const double h = width / panels;
  for (int i = 0; i <= panels; ++i) {
    const double c = c0 + i * h;
    const double w = (i == 0 || i == panels) ? 1 : (i % 2 ? 4 : 2);
    sum += w * f(c, s_at(c));
  }
  const double mean_band = sum * h / 3.0 / width;
  return {(1.0 - atom) * mean_band, f(c0, s_at(c0))};
}

std::uint64_t oracle_nstar(double c0, double delta, const FitnessSpec& f,
                           const PayoffMatrix& game) {
  for (std::uint64_t n = 1; n < 100000; ++n) {
    const auto s = oracle_sides(c0, delta, n, f, game, 640);
    if (s.lower_bound > s.trivial) return n;
  }
  return 0;
}

}  // namespace

TEST_CASE("fairness") {
  CHECK(is_fair(Lottery::trivial(1.0)));
  CHECK(is_fair(Lottery(MixedDistribution({{0.5, 0.5}, {1.5, 0.5}}, {}), 1.0)));
  CHECK_FALSE(is_fair(Lottery(MixedDistribution({{0.5, 0.5}, {1.6, 0.5}}, {}), 1.0)));
  CHECK_THROWS_AS(Lottery(MixedDistribution::degenerate(0.0), 0.0), Error);
}

TEST_CASE("making a lottery just affordable") {
  const Lottery l(MixedDistribution({{0.5, 0.5}, {1.5, 0.5}}, {}), 1.0);
  const Lottery up = make_just_affordable(l, 2.0);
  CHECK(up.cost() == 2.0);
  CHECK(up.law() == MixedDistribution({{1.5, 0.5}, {2.5, 0.5}}, {}));
  CHECK(make_just_affordable(l, 1.0) == l);
  const Lottery low(MixedDistribution({{0.2, 0.5}, {1.8, 0.5}}, {}), 1.0);
  CHECK_THROWS_AS(make_just_affordable(low, 0.5), Error);
}

TEST_CASE("G^n construction") {
  const Lottery verbatim = construct_gn(1.0, 0.1, 2, FairnessCorrection::kVerbatim);
  REQUIRE(verbatim.law().atoms().size() == 1);
  CHECK(verbatim.law().atoms()[0].value == Approx(0.9).epsilon(1e-15));
  CHECK(verbatim.law().atoms()[0].mass == 0.25);
  REQUIRE(verbatim.law().segments().size() == 1);
  CHECK(verbatim.law().segments()[0].lo == 1.0);
  CHECK(verbatim.law().segments()[0].hi == Approx(1.05).epsilon(1e-15));
  CHECK(verbatim.law().mean() == Approx(0.99375).epsilon(1e-14));
  CHECK_FALSE(is_fair(verbatim));

  const Lottery corrected = construct_gn(1.0, 0.1, 2);
  CHECK(corrected.law().atoms()[0].value == Approx(0.925).epsilon(1e-15));
  CHECK(corrected.law().mean() == Approx(1.0).epsilon(1e-15));
  CHECK(is_fair(corrected));

  const Lottery big = construct_gn(1.0, 0.1, 100000);
  CHECK(big.law().atoms()[0].mass == Approx(5e-6));
  CHECK(big.law().support_max() - 1.0 < 1e-5);

  CHECK_THROWS_AS(construct_gn(0.1, 0.1, 2), Error);
  CHECK_THROWS_AS(construct_gn(1.0, 0.1, 0), Error);
}

TEST_CASE("N* for the additive family matches a fine Simpson oracle") {
  const auto r = find_nstar(1.0, 0.1, kAdditive, kGame);
  const auto expect = oracle_nstar(1.0, 0.1, kAdditive, kGame);
  REQUIRE(expect > 0);
  CHECK(r.nstar == expect);
  const auto sides = oracle_sides(1.0, 0.1, r.nstar, kAdditive, kGame, 6400);
  CHECK(r.at_nstar.lower_bound == Approx(sides.lower_bound).epsilon(1e-10));
  CHECK(r.at_nstar.trivial_fitness == Approx(sides.trivial).epsilon(1e-14));
  CHECK(r.checks_hold());
  CHECK(r.nstar_dominance <= r.nstar);

  const auto small = find_nstar(1.0, 0.001, kAdditive, kGame);
  CHECK(small.nstar == oracle_nstar(1.0, 0.001, kAdditive, kGame));
  CHECK(small.nstar >= 1);
}

TEST_CASE("N* for the power family") {
  const auto r = find_nstar(1.0, 0.1, kPower, kGame);
  CHECK(r.nstar == oracle_nstar(1.0, 0.1, kPower, kGame));
  CHECK(r.checks.size() == 3);
  CHECK(r.checks_hold());
}

TEST_CASE("no N* without signal value") {
  const auto flat = PayoffMatrix::normalized(1.0, 1.0);
  CHECK_THROWS_WITH_AS(find_nstar(1.0, 0.1, kAdditive, flat, 200),
                       doctest::Contains("n_max"), Error);
  try {
    find_nstar(1.0, 0.1, kAdditive, flat, 50);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSearchExhausted);
  }
}

TEST_CASE("property: corrected G^n is fair, positive and bounded") {
  gen::Source src(41);
  for (int i = 0; i < 500; ++i) {
    const double c0 = src.uniform(0.1, 10.0);
    const double delta = src.uniform(0.001, 0.99) * c0;
    const auto n = src.integer(1, 10000);
    const Lottery l = construct_gn(c0, delta, n);
    CHECK(is_fair(l));
    CHECK(l.law().support_min() > 0.0);
    CHECK(l.law().support_max() <= c0 + delta / n + 1e-15);
    const Lottery v = construct_gn(c0, delta, n, FairnessCorrection::kVerbatim);
    CHECK(std::abs((c0 - v.law().mean()) - delta / (4.0 * n * n)) <= 1e-12);
  }
}

TEST_CASE("property: beyond N* the full expectation beats the trivial lottery") {
  gen::Source src(42);
  for (int i = 0; i < 6; ++i) {
    const auto game = src.normalized_game();
    const auto& f = src.coin() ? kPower : kAdditive;
    const double delta = src.uniform(0.01, 0.3);
    const auto r = find_nstar(1.0, delta, f, game);
    for (const auto& p : r.checks) {
      CHECK(p.lower_bound_holds());
      CHECK(p.dominates());
    }
  }
}

TEST_CASE("property: shifting preserves fairness and spread") {
  gen::Source src(43);
  for (int i = 0; i < 200; ++i) {
    const auto law = src.distribution();
    const Lottery l(law, law.mean());
    const double target = law.mean() + src.uniform(-law.support_min() * 0.9, 5.0);
    const Lottery moved = make_just_affordable(l, target);
    CHECK(is_fair(moved));
    CHECK(moved.cost() == target);
    CHECK(moved.law().variance() == Approx(law.variance()).epsilon(1e-9));
  }
}
