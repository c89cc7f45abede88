#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "statuspref/distribution.hpp"
#include "statuspref/game.hpp"

namespace gen {

// Seeded source of random test inputs.
class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

  // s_bar > s_under > 0.
  statuspref::PayoffMatrix normalized_game() {
    const double defer = uniform(0.1, 5.0);
    return statuspref::PayoffMatrix::normalized(defer * uniform(1.01, 5.0), defer);
  }

  statuspref::SignalStructure theta() { return {uniform(0.0, 1.0), uniform(0.0, 1.0)}; }

  // A few atoms and segments on (0, 10], masses summing to 1.
  statuspref::MixedDistribution distribution(bool allow_atoms = true,
                                             bool allow_segments = true) {
    using statuspref::Atom;
    using statuspref::Segment;
    const auto atoms = allow_atoms ? integer(allow_segments ? 0 : 1, 3) : 0;
    const auto segments = allow_segments ? integer(atoms == 0 ? 1 : 0, 3) : 0;
    std::vector<double> weights(atoms + segments);
    double total = 0.0;
    for (double& w : weights) total += (w = uniform(0.1, 1.0));
    std::vector<Atom> a;
    std::vector<Segment> s;
    std::size_t k = 0;
    double assigned = 0.0;
    auto mass = [&] {
      const double m = ++k == weights.size() ? 1.0 - assigned : weights[k - 1] / total;
      assigned += m;
      return m;
    };
    for (std::uint64_t i = 0; i < atoms; ++i) a.push_back({uniform(0.1, 10.0), mass()});
    for (std::uint64_t i = 0; i < segments; ++i) {
      const double lo = uniform(0.1, 9.0);
      s.push_back({lo, lo + uniform(0.05, 1.0), mass()});
    }
    return statuspref::MixedDistribution(a, s);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
