#pragma once

#include <vector>

#include "statuspref/game.hpp"

namespace statuspref {

struct Atom {
  double value = 0.0;
  double mass = 0.0;
  bool operator==(const Atom&) const = default;
};

// Uniform mass on [lo, hi].
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;
  double density() const { return mass / (hi - lo); }
  bool operator==(const Segment&) const = default;
};

// Probability measure on the nonnegative reals made of point masses plus
// piecewise-uniform continuous parts.
//
// Construction canonicalizes: coincident atoms are merged, overlapping
// segments are split into disjoint pieces with summed densities, segments
// are cut at interior atoms, and adjacent pieces of equal density with no
// atom at the junction are merged back. Two measures are equal iff their
// canonical forms are.
class MixedDistribution {
 public:
  MixedDistribution(std::vector<Atom> atoms, std::vector<Segment> segments);

  static MixedDistribution degenerate(double value);
  static MixedDistribution uniform(double lo, double hi);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Segment>& segments() const { return segments_; }

  // Right-continuous CDF.
  double cdf(double c) const;
  double cdf_left(double c) const;
  double atom_mass(double c) const;

  double mean() const;
  double variance() const;
  double support_min() const;
  double support_max() const;
  bool has_atoms() const { return !atoms_.empty(); }

  // Generalized inverse CDF on [0, 1); maps a uniform draw to an outcome.
  double quantile(double u) const;

  // Sorted atom positions and segment endpoints.
  std::vector<double> breakpoints() const;

  MixedDistribution shifted(double offset) const;

  bool operator==(const MixedDistribution& other) const {
    return atoms_ == other.atoms_ && segments_ == other.segments_;
  }

 private:
  void build_index();

  std::vector<Atom> atoms_;
  std::vector<Segment> segments_;
  std::vector<double> atom_cum_;     // mass of atoms_[0..i)
  std::vector<double> segment_cum_;  // mass of segments_[0..i)
};

// Weight on the left limit when ranking at an atom.
struct RankWeight {
  double left = 0.5;
};

double rank(const MixedDistribution& dist, double c, RankWeight weight = {});

// Expected per-interaction payoff at consumption c when everyone conditions
// on consumption rank: leads against those strictly below, defers to those
// strictly above, and earns the interior Nash payoff against ties.
double social_good(const MixedDistribution& dist, double c,
                   const PayoffMatrix& game);

// Integral of social_good against the distribution itself, closed form.
double aggregate_social_good(const MixedDistribution& dist,
                             const PayoffMatrix& game);

}  // namespace statuspref
