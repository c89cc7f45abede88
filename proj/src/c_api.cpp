#include "statuspref/statuspref.h"

#include <cstring>
#include <new>
#include <string>

#include "statuspref/commands.hpp"
#include "statuspref/equilibrium.hpp"
#include "statuspref/json_io.hpp"
#include "statuspref/lottery.hpp"

using namespace statuspref;

struct sp_game {
  PayoffMatrix value;
};
struct sp_fitness {
  FitnessSpec value;
};
struct sp_distribution {
  MixedDistribution value;
};
struct sp_equilibrium {
  EquilibriumSolution value;
};

namespace {

thread_local std::string last_error;

sp_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return SP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kConfig: return SP_ERR_CONFIG;
    case ErrorCode::kNumerical: return SP_ERR_NUMERICAL;
    case ErrorCode::kSearchExhausted: return SP_ERR_SEARCH_EXHAUSTED;
    case ErrorCode::kNoDispersionIncentive: return SP_ERR_NO_DISPERSION_INCENTIVE;
    case ErrorCode::kIo: return SP_ERR_IO;
  }
  return SP_ERR_INTERNAL;
}

template <typename Fn>
sp_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SP_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed json: ") + e.what();
    return SP_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return SP_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sp_version(void) { return "0.1.0"; }

const char* sp_last_error(void) { return last_error.c_str(); }

void sp_string_free(char* s) { delete[] s; }

sp_status sp_game_new(double lead, double defer, sp_game** out) {
  return guarded([&] {
    need(out, "out");
    *out = new sp_game{PayoffMatrix::normalized(lead, defer)};
  });
}

sp_status sp_game_new_general(double s1, double s2, double s3, double s4,
                              sp_game** out) {
  return guarded([&] {
    need(out, "out");
    *out = new sp_game{PayoffMatrix::general(s1, s2, s3, s4)};
  });
}

void sp_game_free(sp_game* game) { delete game; }

sp_status sp_game_interior_ess(const sp_game* game, double* hawk) {
  return guarded([&] {
    need(game, "game");
    need(hawk, "hawk");
    *hawk = interior_ess(game->value).hawk_probability();
  });
}

sp_status sp_game_nash_payoff(const sp_game* game, double* payoff) {
  return guarded([&] {
    need(game, "game");
    need(payoff, "payoff");
    *payoff = nash_payoff(game->value);
  });
}

sp_status sp_game_signal_payoffs(const sp_game* game, double mutant_follow,
                                 double incumbent_follow, double dove_given_hawk,
                                 double hawk_given_dove, double* given_dove,
                                 double* given_hawk) {
  return guarded([&] {
    need(game, "game");
    need(given_dove, "given_dove");
    need(given_hawk, "given_hawk");
    const auto p = signal_payoffs(mutant_follow, incumbent_follow,
                                  {dove_given_hawk, hawk_given_dove}, game->value);
    *given_dove = p.given_dove;
    *given_hawk = p.given_hawk;
  });
}

sp_status sp_game_following_is_ess(const sp_game* game, double dove_given_hawk,
                                   double hawk_given_dove, int* is_ess,
                                   double* lead_margin, double* defer_margin) {
  return guarded([&] {
    need(game, "game");
    need(is_ess, "is_ess");
    const auto v = following_is_ess({dove_given_hawk, hawk_given_dove}, game->value);
    *is_ess = v.is_ess ? 1 : 0;
    if (lead_margin) *lead_margin = v.lead_margin;
    if (defer_margin) *defer_margin = v.defer_margin;
  });
}

sp_status sp_fitness_new(sp_fitness_family family, double alpha, double param,
                         sp_fitness** out) {
  return guarded([&] {
    need(out, "out");
    switch (family) {
      case SP_FITNESS_POWER:
        *out = new sp_fitness{FitnessSpec::power(alpha, param)};
        return;
      case SP_FITNESS_ADDITIVE:
        *out = new sp_fitness{FitnessSpec::additive(alpha, param)};
        return;
    }
    fail(ErrorCode::kInvalidArgument, "unknown fitness family");
  });
}

void sp_fitness_free(sp_fitness* fitness) { delete fitness; }

sp_status sp_fitness_eval(const sp_fitness* fitness, double c, double s,
                          double* value) {
  return guarded([&] {
    need(fitness, "fitness");
    need(value, "value");
    *value = fitness->value(c, s);
  });
}

sp_status sp_distribution_from_json(const char* json, sp_distribution** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new sp_distribution{Json::parse(json).get<MixedDistribution>()};
  });
}

sp_status sp_distribution_to_json(const sp_distribution* dist, char** json) {
  return guarded([&] {
    need(dist, "dist");
    need(json, "json");
    *json = copy_string(Json(dist->value).dump());
  });
}

void sp_distribution_free(sp_distribution* dist) { delete dist; }

sp_status sp_distribution_cdf(const sp_distribution* dist, double c, double* value) {
  return guarded([&] {
    need(dist, "dist");
    need(value, "value");
    *value = dist->value.cdf(c);
  });
}

sp_status sp_distribution_mean(const sp_distribution* dist, double* value) {
  return guarded([&] {
    need(dist, "dist");
    need(value, "value");
    *value = dist->value.mean();
  });
}

sp_status sp_distribution_social_good(const sp_distribution* dist,
                                      const sp_game* game, double c,
                                      double* value) {
  return guarded([&] {
    need(dist, "dist");
    need(game, "game");
    need(value, "value");
    *value = social_good(dist->value, c, game->value);
  });
}

sp_status sp_distribution_aggregate_social_good(const sp_distribution* dist,
                                                const sp_game* game,
                                                double* value) {
  return guarded([&] {
    need(dist, "dist");
    need(game, "game");
    need(value, "value");
    *value = aggregate_social_good(dist->value, game->value);
  });
}

sp_status sp_lottery_gn(double c0, double delta, uint64_t n, int corrected,
                        sp_distribution** law) {
  return guarded([&] {
    need(law, "law");
    const auto mode =
        corrected ? FairnessCorrection::kCorrected : FairnessCorrection::kVerbatim;
    *law = new sp_distribution{construct_gn(c0, delta, n, mode).law()};
  });
}

sp_status sp_find_nstar(double c0, double delta, const sp_fitness* fitness,
                        const sp_game* game, uint64_t n_max, uint64_t* nstar,
                        uint64_t* nstar_dominance) {
  return guarded([&] {
    need(fitness, "fitness");
    need(game, "game");
    need(nstar, "nstar");
    const auto r = find_nstar(c0, delta, fitness->value, game->value,
                              n_max == 0 ? kDefaultNmax : n_max);
    *nstar = r.nstar;
    if (nstar_dominance) *nstar_dominance = r.nstar_dominance;
  });
}

sp_status sp_solve(double c0, const sp_fitness* fitness, const sp_game* game,
                   double tolerance, size_t segments, sp_equilibrium** out) {
  return guarded([&] {
    need(fitness, "fitness");
    need(game, "game");
    need(out, "out");
    SolverOptions opts;
    if (tolerance > 0.0) opts.tolerance = tolerance;
    if (segments > 0) opts.segments = segments;
    *out = new sp_equilibrium{
        solve_stable_distribution(c0, fitness->value, game->value, opts)};
  });
}

sp_status sp_equilibrium_coefficients(const sp_equilibrium* eq, double* c_min,
                                      double* c_max, double* intercept,
                                      double* slope) {
  return guarded([&] {
    need(eq, "eq");
    if (c_min) *c_min = eq->value.c_min();
    if (c_max) *c_max = eq->value.c_max();
    if (intercept) *intercept = eq->value.intercept();
    if (slope) *slope = eq->value.slope();
  });
}

sp_status sp_equilibrium_cdf(const sp_equilibrium* eq, double c, double* value) {
  return guarded([&] {
    need(eq, "eq");
    need(value, "value");
    *value = eq->value.cdf(c);
  });
}

sp_status sp_equilibrium_to_json(const sp_equilibrium* eq, char** json) {
  return guarded([&] {
    need(eq, "eq");
    need(json, "json");
    *json = copy_string(Json(eq->value).dump());
  });
}

void sp_equilibrium_free(sp_equilibrium* eq) { delete eq; }

sp_status sp_run_command(const char* command, const char* config_path,
                         const sp_command_options* options, int* exit_code,
                         char** report_json) {
  return guarded([&] {
    need(command, "command");
    need(config_path, "config_path");
    need(exit_code, "exit_code");
    CommandOptions opts;
    if (options) {
      if (options->out_dir) opts.out_dir = options->out_dir;
      opts.format =
          options->format == SP_FORMAT_CSV ? OutputFormat::kCsv : OutputFormat::kJson;
      opts.compare = options->compare != 0;
      if (options->has_seed) opts.seed = options->seed;
    }
    const KeyValueConfig cfg = KeyValueConfig::load(config_path);
    const CommandOutcome outcome = run_command(command, cfg, opts);
    *exit_code = outcome.exit_code;
    if (report_json) *report_json = copy_string(outcome.report.dump(2));
  });
}

int sp_exit_code_for_status(sp_status status) {
  switch (status) {
    case SP_OK: return 0;
    case SP_ERR_INVALID_ARGUMENT:
    case SP_ERR_CONFIG:
    case SP_ERR_IO: return 2;
    case SP_ERR_NUMERICAL:
    case SP_ERR_SEARCH_EXHAUSTED:
    case SP_ERR_NO_DISPERSION_INCENTIVE:
    case SP_ERR_INTERNAL: return 3;
  }
  return 3;
}

}  // extern "C"
