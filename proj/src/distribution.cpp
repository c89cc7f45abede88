#include "statuspref/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "statuspref/error.hpp"

namespace statuspref {

namespace {

constexpr double kMassTolerance = 1e-12;

bool same_density(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

std::vector<Atom> canonical_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value)
      merged.back().mass += a.mass;
    else
      merged.push_back(a);
  }
  return merged;
}

std::vector<Segment> canonical_segments(const std::vector<Segment>& segments,
                                        const std::vector<Atom>& atoms) {
  if (segments.empty()) return {};

  // Sweep over elementary intervals between all endpoints and interior atoms.
  std::vector<double> cuts;
  for (const Segment& s : segments) {
    cuts.push_back(s.lo);
    cuts.push_back(s.hi);
  }
  for (const Atom& a : atoms)
    for (const Segment& s : segments)
      if (a.value > s.lo && a.value < s.hi) {
        cuts.push_back(a.value);
        break;
      }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> pieces;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    double density = 0.0;
    const Segment* only = nullptr;
    int active = 0;
    for (const Segment& s : segments) {
      if (s.lo <= lo && hi <= s.hi) {
        density += s.density();
        only = &s;
        ++active;
      }
    }
    if (active == 0) continue;
    double mass = density * (hi - lo);
    if (active == 1 && only->lo == lo && only->hi == hi) mass = only->mass;
    pieces.push_back({lo, hi, mass});
  }

  auto atom_at = [&atoms](double x) {
    return std::binary_search(
        atoms.begin(), atoms.end(), Atom{x, 0.0},
        [](const Atom& a, const Atom& b) { return a.value < b.value; });
  };

  std::vector<Segment> merged;
  for (const Segment& p : pieces) {
    if (!merged.empty()) {
      Segment& last = merged.back();
      if (last.hi == p.lo && !atom_at(p.lo) &&
          same_density(last.density(), p.density())) {
        last.hi = p.hi;
        last.mass += p.mass;
        continue;
      }
    }
    merged.push_back(p);
  }
  return merged;
}

}  // namespace

MixedDistribution::MixedDistribution(std::vector<Atom> atoms,
                                     std::vector<Segment> segments) {
  double total = 0.0;
  for (const Atom& a : atoms) {
    require(std::isfinite(a.value) && a.value >= 0.0,
            "atom values must be finite and nonnegative");
    require(std::isfinite(a.mass) && a.mass > 0.0, "atom masses must be > 0");
    total += a.mass;
  }
  for (const Segment& s : segments) {
    require(std::isfinite(s.lo) && std::isfinite(s.hi) && s.lo >= 0.0,
            "segment bounds must be finite and nonnegative");
    require(s.lo < s.hi, "segment needs lo < hi");
    require(std::isfinite(s.mass) && s.mass > 0.0,
            "segment masses must be > 0");
    total += s.mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "total mass must be 1, got " << total;
    fail(ErrorCode::kInvalidArgument, msg.str());
  }
  atoms_ = canonical_atoms(std::move(atoms));
  segments_ = canonical_segments(segments, atoms_);
  build_index();
}

MixedDistribution MixedDistribution::degenerate(double value) {
  return MixedDistribution({{value, 1.0}}, {});
}

MixedDistribution MixedDistribution::uniform(double lo, double hi) {
  return MixedDistribution({}, {{lo, hi, 1.0}});
}

void MixedDistribution::build_index() {
  atom_cum_.assign(atoms_.size() + 1, 0.0);
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    atom_cum_[i + 1] = atom_cum_[i] + atoms_[i].mass;
  segment_cum_.assign(segments_.size() + 1, 0.0);
  for (std::size_t i = 0; i < segments_.size(); ++i)
    segment_cum_[i + 1] = segment_cum_[i] + segments_[i].mass;
}

namespace {

// Mass of segments strictly below c (continuous, so left and right agree).
double segment_cdf(const std::vector<Segment>& segments,
                   const std::vector<double>& cum, double c) {
  const auto it = std::upper_bound(
      segments.begin(), segments.end(), c,
      [](double x, const Segment& s) { return x < s.hi; });
  const auto full = static_cast<std::size_t>(it - segments.begin());
  double value = cum[full];
  if (it != segments.end() && it->lo < c)
    value += it->mass * (c - it->lo) / (it->hi - it->lo);
  return value;
}

}  // namespace

double MixedDistribution::cdf(double c) const {
  const auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), c,
      [](double x, const Atom& a) { return x < a.value; });
  const double value =
      atom_cum_[static_cast<std::size_t>(it - atoms_.begin())] +
      segment_cdf(segments_, segment_cum_, c);
  return std::min(value, 1.0);
}

double MixedDistribution::cdf_left(double c) const {
  const auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), c,
      [](const Atom& a, double x) { return a.value < x; });
  const double value =
      atom_cum_[static_cast<std::size_t>(it - atoms_.begin())] +
      segment_cdf(segments_, segment_cum_, c);
  return std::min(value, 1.0);
}

double MixedDistribution::atom_mass(double c) const {
  const auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), c,
      [](const Atom& a, double x) { return a.value < x; });
  return (it != atoms_.end() && it->value == c) ? it->mass : 0.0;
}

double MixedDistribution::mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.mass * a.value;
  for (const Segment& s : segments_) m += s.mass * 0.5 * (s.lo + s.hi);
  return m;
}

double MixedDistribution::variance() const {
  const double mu = mean();
  double v = 0.0;
  for (const Atom& a : atoms_) v += a.mass * (a.value - mu) * (a.value - mu);
  for (const Segment& s : segments_) {
    const double mid = 0.5 * (s.lo + s.hi);
    const double width = s.hi - s.lo;
    v += s.mass * ((mid - mu) * (mid - mu) + width * width / 12.0);
  }
  return v;
}

double MixedDistribution::support_min() const {
  double lo = atoms_.empty() ? segments_.front().lo : atoms_.front().value;
  if (!segments_.empty()) lo = std::min(lo, segments_.front().lo);
  return lo;
}

double MixedDistribution::support_max() const {
  double hi = atoms_.empty() ? segments_.back().hi : atoms_.back().value;
  if (!segments_.empty()) hi = std::max(hi, segments_.back().hi);
  return hi;
}

double MixedDistribution::quantile(double u) const {
  require(u >= 0.0 && u <= 1.0, "quantile level must lie in [0, 1]");
  // Walk atoms and segments in increasing position; an atom sorts before a
  // segment starting at the same point.
  std::size_t ai = 0;
  std::size_t si = 0;
  double cum = 0.0;
  double last = support_min();
  while (ai < atoms_.size() || si < segments_.size()) {
    const bool take_atom =
        si == segments_.size() ||
        (ai < atoms_.size() && atoms_[ai].value <= segments_[si].lo);
    if (take_atom) {
      const Atom& a = atoms_[ai++];
      cum += a.mass;
      last = a.value;
      if (u < cum) return a.value;
    } else {
      const Segment& s = segments_[si++];
      if (u < cum + s.mass)
        return std::clamp(s.lo + (u - cum) / s.mass * (s.hi - s.lo), s.lo,
                          s.hi);
      cum += s.mass;
      last = s.hi;
    }
  }
  return last;
}

std::vector<double> MixedDistribution::breakpoints() const {
  std::vector<double> out;
  out.reserve(atoms_.size() + 2 * segments_.size());
  for (const Atom& a : atoms_) out.push_back(a.value);
  for (const Segment& s : segments_) {
    out.push_back(s.lo);
    out.push_back(s.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MixedDistribution MixedDistribution::shifted(double offset) const {
  std::vector<Atom> atoms = atoms_;
  std::vector<Segment> segments = segments_;
  for (Atom& a : atoms) a.value += offset;
  for (Segment& s : segments) {
    s.lo += offset;
    s.hi += offset;
  }
  return MixedDistribution(std::move(atoms), std::move(segments));
}

double rank(const MixedDistribution& dist, double c, RankWeight weight) {
  require(weight.left >= 0.0 && weight.left <= 1.0,
          "rank weight must lie in [0, 1]");
  return weight.left * dist.cdf_left(c) + (1.0 - weight.left) * dist.cdf(c);
}

double social_good(const MixedDistribution& dist, double c,
                   const PayoffMatrix& game) {
  const double below = dist.cdf_left(c);
  const double at_or_below = dist.cdf(c);
  return below * game.lead() + (at_or_below - below) * nash_payoff(game) +
         (1.0 - at_or_below) * game.defer();
}

double aggregate_social_good(const MixedDistribution& dist,
                             const PayoffMatrix& game) {
  const double lead = game.lead();
  const double defer = game.defer();
  double total = 0.0;
  for (const Atom& a : dist.atoms())
    total += a.mass * social_good(dist, a.value, game);
  // On a segment S = defer + G (lead - defer) with G rising linearly from
  // G(lo) to G(lo) + mass, so the integral against dG is closed form.
  for (const Segment& s : dist.segments()) {
    const double g0 = dist.cdf(s.lo);
    const double g1 = g0 + s.mass;
    total += s.mass * defer + (lead - defer) * 0.5 * (g1 * g1 - g0 * g0);
  }
  return total;
}

}  // namespace statuspref
