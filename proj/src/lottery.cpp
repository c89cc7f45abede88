#include "statuspref/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "statuspref/error.hpp"
#include "statuspref/numeric.hpp"

namespace statuspref {

Lottery::Lottery(MixedDistribution law, double cost)
    : law_(std::move(law)), cost_(cost) {
  require(std::isfinite(cost) && cost > 0.0, "lottery cost must be > 0");
  if (!(law_.support_min() > 0.0)) {
    std::ostringstream msg;
    msg << "lottery support must be bounded away from 0 (min outcome "
        << law_.support_min() << ")";
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
}

bool is_fair(const Lottery& lottery) {
  return std::abs(lottery.law().mean() - lottery.cost()) <= kFairnessTolerance;
}

Lottery make_just_affordable(const Lottery& lottery, double endowment) {
  require(is_fair(lottery), "only fair lotteries can be made just affordable");
  require(endowment > 0.0, "endowment must be > 0");
  const double offset = endowment - lottery.cost();
  if (offset == 0.0) return lottery;
  if (!(lottery.law().support_min() + offset > 0.0)) {
    std::ostringstream msg;
    msg << "shifting by " << offset << " pushes the minimum outcome to "
        << lottery.law().support_min() + offset
        << "; outcomes must stay bounded away from 0";
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
  return Lottery(lottery.law().shifted(offset), endowment);
}

Lottery construct_gn(double c0, double delta, std::uint64_t n,
                     FairnessCorrection mode) {
  require(delta > 0.0, "G^n needs delta > 0");
  require(c0 > delta, "G^n needs c0 > delta");
  require(n >= 1, "G^n needs n >= 1");
  const double nd = static_cast<double>(n);
  const double atom_mass = 1.0 / (2.0 * nd);
  const double atom_value = mode == FairnessCorrection::kCorrected
                                ? c0 - delta * (2.0 * nd - 1.0) / (2.0 * nd)
                                : c0 - delta;
  MixedDistribution law({{atom_value, atom_mass}},
                        {{c0, c0 + delta / nd, 1.0 - atom_mass}});
  return Lottery(std::move(law), c0);
}

NstarProbe probe_gn(double c0, double delta, std::uint64_t n,
                    const FitnessSpec& fitness, const PayoffMatrix& game,
                    std::size_t quadrature_order) {
  const Lottery gn = construct_gn(c0, delta, n);
  const MixedDistribution& g = gn.law();
  const Segment& band = g.segments().front();
  const Atom& low = g.atoms().front();

  const auto payoff = [&](double c) {
    return fitness(c, social_good(g, c, game));
  };
  NstarProbe probe;
  probe.n = n;
  probe.lower_bound =
      band.density() *
      numeric::integrate(payoff, band.lo, band.hi, quadrature_order);
  probe.full_expected = probe.lower_bound + low.mass * payoff(low.value);
  probe.trivial_fitness = payoff(c0);
  return probe;
}

bool NstarResult::checks_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const NstarProbe& p) {
    return p.lower_bound_holds() && p.dominates();
  });
}

NstarResult find_nstar(double c0, double delta, const FitnessSpec& fitness,
                       const PayoffMatrix& game, std::uint64_t n_max) {
  require(n_max >= 1, "n_max must be >= 1");
  NstarResult result;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const NstarProbe probe = probe_gn(c0, delta, n, fitness, game);
    if (result.nstar_dominance == 0 && probe.dominates())
      result.nstar_dominance = n;
    if (probe.lower_bound_holds()) {
      result.nstar = n;
      result.at_nstar = probe;
      break;
    }
  }
  if (result.nstar == 0) {
    std::ostringstream msg;
    msg << "no n <= " << n_max
        << " satisfies the lottery lower-bound inequality; raise n_max or "
           "lower delta";
    fail(ErrorCode::kSearchExhausted, msg.str());
  }
  const std::uint64_t n = result.nstar;
  std::vector<std::uint64_t> probes{n + 1, 2 * n, 10 * n};
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  for (std::uint64_t m : probes)
    result.checks.push_back(probe_gn(c0, delta, m, fitness, game));
  return result;
}

}  // namespace statuspref
