#pragma once

#include <json.hpp>

#include "statuspref/distribution.hpp"
#include "statuspref/equilibrium.hpp"
#include "statuspref/fitness.hpp"
#include "statuspref/game.hpp"
#include "statuspref/invasion.hpp"
#include "statuspref/lottery.hpp"

// JSON mappings for every value the command layer writes. Infinite doubles
// are written as null and read back as +inf.

namespace statuspref {

using Json = nlohmann::json;

void to_json(Json& j, const Atom& v);
void from_json(const Json& j, Atom& v);
void to_json(Json& j, const Segment& v);
void from_json(const Json& j, Segment& v);
void to_json(Json& j, const SignalStructure& v);
void from_json(const Json& j, SignalStructure& v);
void to_json(Json& j, const ConditionalPayoffs& v);
void from_json(const Json& j, ConditionalPayoffs& v);
void to_json(Json& j, const EssVerdict& v);
void from_json(const Json& j, EssVerdict& v);
void to_json(Json& j, const EquilibriumResiduals& v);
void from_json(const Json& j, EquilibriumResiduals& v);
void to_json(Json& j, const CorollaryReport& v);
void from_json(const Json& j, CorollaryReport& v);
void to_json(Json& j, const NstarProbe& v);
void from_json(const Json& j, NstarProbe& v);
void to_json(Json& j, const NstarResult& v);
void from_json(const Json& j, NstarResult& v);
void to_json(Json& j, const SimulatedFitness& v);
void from_json(const Json& j, SimulatedFitness& v);
void to_json(Json& j, const InvasionPoint& v);
void from_json(const Json& j, InvasionPoint& v);
void to_json(Json& j, const InvasionReport& v);
void from_json(const Json& j, InvasionReport& v);
void to_json(Json& j, const DispersionComparison& v);
void from_json(const Json& j, DispersionComparison& v);

// Doubles that may be infinite.
Json number_to_json(double v);
double number_from_json(const Json& j);

}  // namespace statuspref

namespace nlohmann {

template <>
struct adl_serializer<statuspref::PayoffMatrix> {
  static void to_json(json& j, const statuspref::PayoffMatrix& v);
  static statuspref::PayoffMatrix from_json(const json& j);
};

template <>
struct adl_serializer<statuspref::FitnessSpec> {
  static void to_json(json& j, const statuspref::FitnessSpec& v);
  static statuspref::FitnessSpec from_json(const json& j);
};

template <>
struct adl_serializer<statuspref::MixedDistribution> {
  static void to_json(json& j, const statuspref::MixedDistribution& v);
  static statuspref::MixedDistribution from_json(const json& j);
};

template <>
struct adl_serializer<statuspref::Lottery> {
  static void to_json(json& j, const statuspref::Lottery& v);
  static statuspref::Lottery from_json(const json& j);
};

template <>
struct adl_serializer<statuspref::EquilibriumSolution> {
  static void to_json(json& j, const statuspref::EquilibriumSolution& v);
  static statuspref::EquilibriumSolution from_json(const json& j);
};

}  // namespace nlohmann
