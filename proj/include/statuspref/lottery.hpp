#pragma once

#include <cstdint>
#include <vector>

#include "statuspref/distribution.hpp"
#include "statuspref/fitness.hpp"
#include "statuspref/game.hpp"

namespace statuspref {

// A consumption lottery: an outcome law bought at `cost`. Fairness (mean
// equal to cost) is checked by is_fair() rather than enforced, so the
// verbatim proof construction can be represented; a strictly positive,
// bounded support is enforced.
class Lottery {
 public:
  Lottery(MixedDistribution law, double cost);

  static Lottery trivial(double c) {
    return Lottery(MixedDistribution::degenerate(c), c);
  }

  const MixedDistribution& law() const { return law_; }
  double cost() const { return cost_; }
  bool is_trivial() const {
    return law_.segments().empty() && law_.atoms().size() == 1;
  }

  bool operator==(const Lottery&) const = default;

 private:
  MixedDistribution law_;
  double cost_;
};

inline constexpr double kFairnessTolerance = 1e-10;

bool is_fair(const Lottery& lottery);

// Shifts every outcome and the cost by (endowment - cost).
Lottery make_just_affordable(const Lottery& lottery, double endowment);

enum class FairnessCorrection { kVerbatim, kCorrected };

// Atom of mass 1/(2n) below c0 plus mass 1 - 1/(2n) uniform on
// [c0, c0 + delta/n]. Verbatim puts the atom at c0 - delta (mean falls short
// of c0 by delta/(4n^2)); corrected moves it to c0 - delta (2n-1)/(2n),
// which makes the lottery exactly fair.
Lottery construct_gn(double c0, double delta, std::uint64_t n,
                     FairnessCorrection mode = FairnessCorrection::kCorrected);

struct NstarProbe {
  std::uint64_t n = 0;
  double lower_bound = 0.0;     // (1 - 1/(2n)) E_uniform[f(c, S(c))]
  double full_expected = 0.0;   // adds the atom's contribution
  double trivial_fitness = 0.0; // f(c0, S(c0))
  bool lower_bound_holds() const { return lower_bound > trivial_fitness; }
  bool dominates() const { return full_expected > trivial_fitness; }
  bool operator==(const NstarProbe&) const = default;
};

// Evaluates both sides of the lottery-versus-trivial comparison for G^n.
NstarProbe probe_gn(double c0, double delta, std::uint64_t n,
                    const FitnessSpec& fitness, const PayoffMatrix& game,
                    std::size_t quadrature_order = 64);

struct NstarResult {
  std::uint64_t nstar = 0;
  NstarProbe at_nstar;
  // Smallest n whose full expected fitness beats the trivial lottery.
  std::uint64_t nstar_dominance = 0;
  // Probes at N*+1, 2N*, 10N*.
  std::vector<NstarProbe> checks;
  bool checks_hold() const;
  bool operator==(const NstarResult&) const = default;
};

inline constexpr std::uint64_t kDefaultNmax = 1'000'000;

// Smallest n <= n_max for which the lower-bound inequality holds. Throws
// Error(kSearchExhausted) if none does.
NstarResult find_nstar(double c0, double delta, const FitnessSpec& fitness,
                       const PayoffMatrix& game,
                       std::uint64_t n_max = kDefaultNmax);

}  // namespace statuspref
