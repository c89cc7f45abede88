#pragma once

#include <utility>
#include <vector>

namespace statuspref {

enum class Action { kHawk, kDove };

// Symmetric 2x2 anti-coordination game. Entries are payoffs to the row
// player: (h,h)=s1, (h,d)=s2, (d,h)=s3, (d,d)=s4. Both off-diagonal entries
// must exceed both diagonal entries.
//
// The normalized form has s1 = s4 = 0, s2 = lead payoff (the hawk facing a
// dove) and s3 = defer payoff (the dove facing a hawk), lead >= defer > 0.
class PayoffMatrix {
 public:
  static PayoffMatrix general(double s1, double s2, double s3, double s4);
  static PayoffMatrix normalized(double lead, double defer);

  double payoff(Action own, Action opponent) const;

  // Expected payoff of a player hawkish with probability `own_hawk` against
  // an opponent hawkish with probability `opponent_hawk`.
  double mixed_payoff(double own_hawk, double opponent_hawk) const;

  bool is_normalized() const { return s1_ == 0.0 && s4_ == 0.0; }

  double s1() const { return s1_; }
  double s2() const { return s2_; }
  double s3() const { return s3_; }
  double s4() const { return s4_; }

  // Normalized-form accessors; throw unless is_normalized().
  double lead() const;
  double defer() const;

  bool operator==(const PayoffMatrix&) const = default;

 private:
  PayoffMatrix(double s1, double s2, double s3, double s4)
      : s1_(s1), s2_(s2), s3_(s3), s4_(s4) {}

  double s1_, s2_, s3_, s4_;
};

class MixedStrategy {
 public:
  explicit MixedStrategy(double hawk);

  static MixedStrategy hawk() { return MixedStrategy(1.0); }
  static MixedStrategy dove() { return MixedStrategy(0.0); }

  double hawk_probability() const { return hawk_; }
  double dove_probability() const { return 1.0 - hawk_; }

  bool operator==(const MixedStrategy&) const = default;

 private:
  double hawk_;
};

// Cross-player conditionals of the pre-play recommendation: the probability
// the opponent was told "dove" given this player was told "hawk", and the
// probability the opponent was told "hawk" given this player was told "dove".
struct SignalStructure {
  double dove_given_hawk = 1.0;
  double hawk_given_dove = 1.0;

  void validate() const;
  bool operator==(const SignalStructure&) const = default;
};

// A gene mapping each recommendation to a mixed action.
struct SignalPolicy {
  MixedStrategy on_hawk = MixedStrategy::hawk();
  MixedStrategy on_dove = MixedStrategy::dove();

  // Plays the recommended action with probability `follow`, the other
  // action otherwise.
  static SignalPolicy following(double follow = 1.0);
  static SignalPolicy ignoring(MixedStrategy play);
  static SignalPolicy constant(Action action);

  const MixedStrategy& respond(Action recommendation) const {
    return recommendation == Action::kHawk ? on_hawk : on_dove;
  }

  // Strictly follows, or strictly overturns (the label-swapped mirror).
  bool follows_recommendations() const;

  bool operator==(const SignalPolicy&) const = default;
};

double stage_payoff(Action own, Action opponent, const PayoffMatrix& game);

// Interior mixed equilibrium from the indifference condition; for the
// normalized form this is lead / (lead + defer).
MixedStrategy interior_ess(const PayoffMatrix& game);

// Payoff of the interior equilibrium against itself: lead*defer/(lead+defer)
// in normalized form.
double nash_payoff(const PayoffMatrix& game);

using StrategyMixture = std::vector<std::pair<MixedStrategy, double>>;

// Expected per-interaction payoff against an opponent drawn from a finite
// strategy mixture whose weights sum to one.
double population_payoff(const MixedStrategy& own, const StrategyMixture& pop,
                         const PayoffMatrix& game);

struct ConditionalPayoffs {
  double given_dove = 0.0;
  double given_hawk = 0.0;
  bool operator==(const ConditionalPayoffs&) const = default;
};

// Payoffs of an agent following recommendations with probability `mutant`
// in a population following with probability `incumbent`, conditional on
// the agent's own recommendation. mutant == incumbent gives the incumbent
// payoffs.
ConditionalPayoffs signal_payoffs(double mutant, double incumbent,
                                  const SignalStructure& theta,
                                  const PayoffMatrix& game);

struct EssVerdict {
  bool is_ess = false;
  // Odds-ratio slack of each condition; +inf for a perfectly informative
  // recommendation.
  double lead_margin = 0.0;   // odds(dove|hawk) - defer/lead
  double defer_margin = 0.0;  // odds(hawk|dove) - lead/defer
  bool operator==(const EssVerdict&) const = default;
};

// Strict-following ESS test for a normalized game.
EssVerdict following_is_ess(const SignalStructure& theta,
                            const PayoffMatrix& game);

// Euler-discretized replicator dynamics on {hawk, dove}; returns the hawk
// share at every step including the initial one.
std::vector<double> replicator_trajectory(const PayoffMatrix& game,
                                          double hawk0, int steps, double dt);

}  // namespace statuspref
