#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "statuspref/distribution.hpp"
#include "statuspref/game.hpp"

namespace statuspref {

// Reproduction function f(c, s): offspring as a function of consumption c
// and social good s. Immutable once built.
class FitnessSpec {
 public:
  using Fn = std::function<double(double c, double s)>;

  // c^alpha * (1 + s)^beta, alpha in (0, 1), beta > 0.
  static FitnessSpec power(double alpha, double beta);
  // c^alpha + gamma * s, alpha in (0, 1), gamma > 0.
  static FitnessSpec additive(double alpha, double gamma);
  // Arbitrary function; missing consumption derivatives fall back to
  // central differences.
  static FitnessSpec custom(std::string name, Fn value, Fn dc = nullptr,
                            Fn dcc = nullptr);

  double operator()(double c, double s) const { return value_(c, s); }
  double dc(double c, double s) const;
  double dcc(double c, double s) const;

  // Smallest s in [s_lo, s_hi] with f(c, s) >= target, by bisection.
  // Targets outside [f(c, s_lo), f(c, s_hi)] clamp to the nearer end.
  double invert_social(double c, double target, double s_lo,
                       double s_hi) const;

  const std::string& name() const { return name_; }
  const std::string& family() const { return family_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  // Built-in families compare by parameters, custom specs by name.
  bool operator==(const FitnessSpec& other) const {
    return name_ == other.name_ && family_ == other.family_ &&
           alpha_ == other.alpha_ && beta_ == other.beta_ &&
           gamma_ == other.gamma_;
  }

 private:
  FitnessSpec() = default;

  std::string name_;
  std::string family_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double gamma_ = 0.0;
  Fn value_;
  Fn dc_;
  Fn dcc_;
};

struct GridSample {
  double c = 0.0;
  double s = 0.0;
};

struct CheckResult {
  bool pass = true;
  std::optional<GridSample> first_violation;
};

struct FitnessReport {
  CheckResult increasing_in_c;
  CheckResult increasing_in_s;
  CheckResult concave_in_c;
  // dF/dc > 1e3 at c = 1e-8 and < 1e-3 at c = 1e8, for each grid s.
  CheckResult marginal_diverges_at_zero;
  CheckResult marginal_vanishes_at_infinity;

  bool monotonicity() const {
    return increasing_in_c.pass && increasing_in_s.pass;
  }
  bool concavity() const {
    return concave_in_c.pass && marginal_diverges_at_zero.pass &&
           marginal_vanishes_at_infinity.pass;
  }
  bool pass() const { return monotonicity() && concavity(); }
};

struct ValidationGrid {
  std::vector<double> consumption;  // sorted, all > 0
  std::vector<double> social;       // sorted, all >= 0

  static ValidationGrid standard(double s_max);
};

FitnessReport validate(const FitnessSpec& fitness, const ValidationGrid& grid);

// v(c, r) = f(c, defer + r (lead - defer)).
double rank_utility(const FitnessSpec& fitness, const PayoffMatrix& game,
                    double c, double r);

// Expected offspring of an agent holding lottery `lottery` in a population
// with consumption distribution `population`: the integral of
// f(x, S(x)) against the lottery law. Atoms of the population enter through
// the tie term of S, never through a rank interpolation.
double expected_fitness(const FitnessSpec& fitness, const PayoffMatrix& game,
                        const MixedDistribution& lottery_law,
                        const MixedDistribution& population);

// Integral of an arbitrary integrand against a distribution, with segment
// panels split at `breaks` so piecewise-smooth integrands are resolved.
double integrate_against(const MixedDistribution& dist,
                         const std::function<double(double)>& integrand,
                         const std::vector<double>& breaks);

}  // namespace statuspref
