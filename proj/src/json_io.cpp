#include "statuspref/json_io.hpp"

#include <cmath>
#include <limits>

#include "statuspref/error.hpp"

namespace statuspref {

namespace {

template <typename T>
void put_optional(Json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> get_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

Json number_to_json(double v) {
  if (std::isinf(v) && v > 0) return nullptr;
  require(std::isfinite(v), "only finite or +inf values can be serialized");
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

void to_json(Json& j, const Atom& v) { j = Json::array({v.value, v.mass}); }
void from_json(const Json& j, Atom& v) {
  v.value = j.at(0).get<double>();
  v.mass = j.at(1).get<double>();
}

void to_json(Json& j, const Segment& v) { j = Json::array({v.lo, v.hi, v.mass}); }
void from_json(const Json& j, Segment& v) {
  v.lo = j.at(0).get<double>();
  v.hi = j.at(1).get<double>();
  v.mass = j.at(2).get<double>();
}

void to_json(Json& j, const SignalStructure& v) {
  j = {{"dove_given_hawk", v.dove_given_hawk},
       {"hawk_given_dove", v.hawk_given_dove}};
}
void from_json(const Json& j, SignalStructure& v) {
  j.at("dove_given_hawk").get_to(v.dove_given_hawk);
  j.at("hawk_given_dove").get_to(v.hawk_given_dove);
}

void to_json(Json& j, const ConditionalPayoffs& v) {
  j = {{"given_dove", v.given_dove}, {"given_hawk", v.given_hawk}};
}
void from_json(const Json& j, ConditionalPayoffs& v) {
  j.at("given_dove").get_to(v.given_dove);
  j.at("given_hawk").get_to(v.given_hawk);
}

void to_json(Json& j, const EssVerdict& v) {
  j = {{"is_ess", v.is_ess},
       {"lead_margin", number_to_json(v.lead_margin)},
       {"defer_margin", number_to_json(v.defer_margin)}};
}
void from_json(const Json& j, EssVerdict& v) {
  j.at("is_ess").get_to(v.is_ess);
  v.lead_margin = number_from_json(j.at("lead_margin"));
  v.defer_margin = number_from_json(j.at("defer_margin"));
}

void to_json(Json& j, const EquilibriumResiduals& v) {
  j = {{"affinity", v.affinity},
       {"affinity_discretized", v.affinity_discretized},
       {"mean", v.mean},
       {"mean_discretized", v.mean_discretized},
       {"boundary_low", v.boundary_low},
       {"boundary_high", v.boundary_high},
       {"tangency", v.tangency},
       {"iterations", v.iterations}};
}
void from_json(const Json& j, EquilibriumResiduals& v) {
  j.at("affinity").get_to(v.affinity);
  j.at("affinity_discretized").get_to(v.affinity_discretized);
  j.at("mean").get_to(v.mean);
  j.at("mean_discretized").get_to(v.mean_discretized);
  j.at("boundary_low").get_to(v.boundary_low);
  j.at("boundary_high").get_to(v.boundary_high);
  j.at("tangency").get_to(v.tangency);
  j.at("iterations").get_to(v.iterations);
}

void to_json(Json& j, const CorollaryReport& v) {
  j = {{"rank_society", v.rank_society},
       {"no_lottery_society", v.no_lottery_society},
       {"difference", v.difference()},
       {"holds", v.holds()}};
}
void from_json(const Json& j, CorollaryReport& v) {
  j.at("rank_society").get_to(v.rank_society);
  j.at("no_lottery_society").get_to(v.no_lottery_society);
}

void to_json(Json& j, const NstarProbe& v) {
  j = {{"n", v.n},
       {"lower_bound", v.lower_bound},
       {"full_expected", v.full_expected},
       {"trivial_fitness", v.trivial_fitness},
       {"lower_bound_holds", v.lower_bound_holds()},
       {"dominates", v.dominates()}};
}
void from_json(const Json& j, NstarProbe& v) {
  j.at("n").get_to(v.n);
  j.at("lower_bound").get_to(v.lower_bound);
  j.at("full_expected").get_to(v.full_expected);
  j.at("trivial_fitness").get_to(v.trivial_fitness);
}

void to_json(Json& j, const NstarResult& v) {
  j = {{"nstar", v.nstar},
       {"at_nstar", v.at_nstar},
       {"nstar_dominance", v.nstar_dominance},
       {"checks", v.checks},
       {"checks_hold", v.checks_hold()}};
}
void from_json(const Json& j, NstarResult& v) {
  j.at("nstar").get_to(v.nstar);
  j.at("at_nstar").get_to(v.at_nstar);
  j.at("nstar_dominance").get_to(v.nstar_dominance);
  j.at("checks").get_to(v.checks);
}

void to_json(Json& j, const SimulatedFitness& v) {
  j = {{"mutant_mean", v.mutant_mean},
       {"incumbent_mean", v.incumbent_mean},
       {"difference_stderr", v.difference_stderr},
       {"seeds", v.seeds}};
}
void from_json(const Json& j, SimulatedFitness& v) {
  j.at("mutant_mean").get_to(v.mutant_mean);
  j.at("incumbent_mean").get_to(v.incumbent_mean);
  j.at("difference_stderr").get_to(v.difference_stderr);
  j.at("seeds").get_to(v.seeds);
}

void to_json(Json& j, const InvasionPoint& v) {
  j = {{"eps", v.eps},
       {"mutant_fitness", v.mutant_fitness},
       {"incumbent_fitness", v.incumbent_fitness},
       {"mutant_loses", v.mutant_loses()}};
  put_optional(j, "trivial_mutant_closed_form", v.trivial_mutant_closed_form);
  put_optional(j, "simulated", v.simulated);
  put_optional(j, "simulation_agrees", v.simulation_agrees());
}
void from_json(const Json& j, InvasionPoint& v) {
  j.at("eps").get_to(v.eps);
  j.at("mutant_fitness").get_to(v.mutant_fitness);
  j.at("incumbent_fitness").get_to(v.incumbent_fitness);
  v.trivial_mutant_closed_form =
      get_optional<double>(j, "trivial_mutant_closed_form");
  v.simulated = get_optional<SimulatedFitness>(j, "simulated");
}

void to_json(Json& j, const InvasionReport& v) {
  j = {{"points", v.points}, {"resists_all", v.resists_all()}};
  put_optional(j, "barrier", v.barrier);
}
void from_json(const Json& j, InvasionReport& v) {
  j.at("points").get_to(v.points);
  v.barrier = get_optional<double>(j, "barrier");
}

void to_json(Json& j, const DispersionComparison& v) {
  j = {{"eps", v.eps},
       {"delta", v.delta},
       {"n", v.n},
       {"mutant_atom", v.mutant_atom},
       {"incumbent", v.incumbent},
       {"margin", v.margin()}};
}
void from_json(const Json& j, DispersionComparison& v) {
  j.at("eps").get_to(v.eps);
  j.at("delta").get_to(v.delta);
  j.at("n").get_to(v.n);
  j.at("mutant_atom").get_to(v.mutant_atom);
  j.at("incumbent").get_to(v.incumbent);
}

}  // namespace statuspref

namespace nlohmann {

using namespace statuspref;

void adl_serializer<PayoffMatrix>::to_json(json& j, const PayoffMatrix& v) {
  j = {{"s1", v.s1()}, {"s2", v.s2()}, {"s3", v.s3()}, {"s4", v.s4()}};
}
PayoffMatrix adl_serializer<PayoffMatrix>::from_json(const json& j) {
  const double s1 = j.at("s1").get<double>();
  const double s2 = j.at("s2").get<double>();
  const double s3 = j.at("s3").get<double>();
  const double s4 = j.at("s4").get<double>();
  if (s1 == 0.0 && s4 == 0.0) return PayoffMatrix::normalized(s2, s3);
  return PayoffMatrix::general(s1, s2, s3, s4);
}

void adl_serializer<FitnessSpec>::to_json(json& j, const FitnessSpec& v) {
  if (v.family() == "power")
    j = {{"family", "power"}, {"alpha", v.alpha()}, {"beta", v.beta()}};
  else if (v.family() == "additive")
    j = {{"family", "additive"}, {"alpha", v.alpha()}, {"gamma", v.gamma()}};
  else
    j = {{"family", v.family()}, {"name", v.name()}};
}
FitnessSpec adl_serializer<FitnessSpec>::from_json(const json& j) {
  const auto family = j.at("family").get<std::string>();
  if (family == "power")
    return FitnessSpec::power(j.at("alpha").get<double>(),
                              j.at("beta").get<double>());
  if (family == "additive")
    return FitnessSpec::additive(j.at("alpha").get<double>(),
                                 j.at("gamma").get<double>());
  fail(ErrorCode::kIo, "fitness family '" + family + "' cannot be read back");
}

void adl_serializer<MixedDistribution>::to_json(json& j,
                                                const MixedDistribution& v) {
  j = {{"atoms", v.atoms()}, {"segments", v.segments()}};
}
MixedDistribution adl_serializer<MixedDistribution>::from_json(const json& j) {
  return MixedDistribution(j.at("atoms").get<std::vector<Atom>>(),
                           j.at("segments").get<std::vector<Segment>>());
}

void adl_serializer<Lottery>::to_json(json& j, const Lottery& v) {
  j = v.law();
  j["cost"] = v.cost();
}
Lottery adl_serializer<Lottery>::from_json(const json& j) {
  return Lottery(j.get<MixedDistribution>(), j.at("cost").get<double>());
}

void adl_serializer<EquilibriumSolution>::to_json(
    json& j, const EquilibriumSolution& v) {
  j = {{"endowment", v.endowment()},
       {"c_min", v.c_min()},
       {"c_max", v.c_max()},
       {"intercept", v.intercept()},
       {"slope", v.slope()},
       {"fitness", v.fitness()},
       {"game", v.game()},
       {"residuals", v.residuals()},
       {"discretized", v.discretized()}};
}
EquilibriumSolution adl_serializer<EquilibriumSolution>::from_json(
    const json& j) {
  return EquilibriumSolution(
      j.at("endowment").get<double>(), j.at("c_min").get<double>(),
      j.at("c_max").get<double>(), j.at("intercept").get<double>(),
      j.at("slope").get<double>(), j.at("fitness").get<FitnessSpec>(),
      j.at("game").get<PayoffMatrix>(), j.at("discretized").get<MixedDistribution>(),
      j.at("residuals").get<EquilibriumResiduals>());
}

}  // namespace nlohmann
