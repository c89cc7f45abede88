#include <doctest.h>

#include <cmath>
#include <string>

#include "statuspref/statuspref.h"

TEST_CASE("game handles") {
  sp_game* g = nullptr;
  REQUIRE(sp_game_new(2.0, 1.0, &g) == SP_OK);
  double v = 0;
  CHECK(sp_game_interior_ess(g, &v) == SP_OK);
  CHECK(v == doctest::Approx(2.0 / 3.0));
  CHECK(sp_game_nash_payoff(g, &v) == SP_OK);
  CHECK(v == doctest::Approx(2.0 / 3.0));
  double dove = 0, hawk = 0;
  CHECK(sp_game_signal_payoffs(g, 1, 1, 1.0, 1.0, &dove, &hawk) == SP_OK);
  CHECK(dove == 1.0);
  CHECK(hawk == 2.0);
  int ess = 0;
  double m1 = 0, m2 = 0;
  CHECK(sp_game_following_is_ess(g, 0.5, 0.8, &ess, &m1, &m2) == SP_OK);
  CHECK(ess == 1);
  CHECK(sp_game_following_is_ess(g, 0.33, 0.8, &ess, nullptr, nullptr) == SP_OK);
  CHECK(ess == 0);
  sp_game_free(g);

  sp_game* bad = nullptr;
  CHECK(sp_game_new(1.0, 2.0, &bad) == SP_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(sp_last_error()).size() > 0);
  CHECK(sp_game_nash_payoff(nullptr, &v) == SP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("distributions and lotteries") {
  sp_game* g = nullptr;
  sp_game_new(2.0, 1.0, &g);
  sp_distribution* d = nullptr;
  REQUIRE(sp_distribution_from_json(R"({"atoms":[[1,0.5],[2,0.5]],"segments":[]})", &d) == SP_OK);
  double v = 0;
  CHECK(sp_distribution_mean(d, &v) == SP_OK);
  CHECK(v == 1.5);
  CHECK(sp_distribution_cdf(d, 1.0, &v) == SP_OK);
  CHECK(v == 0.5);
  CHECK(sp_distribution_aggregate_social_good(d, g, &v) == SP_OK);
  CHECK(v == doctest::Approx(13.0 / 12.0));
  CHECK(sp_distribution_social_good(d, g, 2.0, &v) == SP_OK);
  CHECK(v == doctest::Approx(0.5 * 2 + 0.5 * 2.0 / 3.0));
  char* json = nullptr;
  CHECK(sp_distribution_to_json(d, &json) == SP_OK);
  sp_distribution* again = nullptr;
  CHECK(sp_distribution_from_json(json, &again) == SP_OK);
  sp_string_free(json);
  sp_distribution_free(again);
  sp_distribution_free(d);

  CHECK(sp_distribution_from_json("{not json", &d) == SP_ERR_INVALID_ARGUMENT);
  CHECK(sp_distribution_from_json(R"({"atoms":[[1,0.4]],"segments":[]})", &d) ==
        SP_ERR_INVALID_ARGUMENT);

  CHECK(sp_lottery_gn(1.0, 0.1, 2, 1, &d) == SP_OK);
  CHECK(sp_distribution_mean(d, &v) == SP_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  sp_distribution_free(d);
  CHECK(sp_lottery_gn(1.0, 0.1, 2, 0, &d) == SP_OK);
  sp_distribution_mean(d, &v);
  CHECK(v == doctest::Approx(0.99375).epsilon(1e-14));
  sp_distribution_free(d);

  sp_fitness* f = nullptr;
  REQUIRE(sp_fitness_new(SP_FITNESS_ADDITIVE, 0.5, 1.0, &f) == SP_OK);
  CHECK(sp_fitness_eval(f, 4.0, 1.0, &v) == SP_OK);
  CHECK(v == 3.0);
  uint64_t nstar = 0, dom = 0;
  CHECK(sp_find_nstar(1.0, 0.1, f, g, 0, &nstar, &dom) == SP_OK);
  CHECK(nstar > 0);
  sp_game* flat = nullptr;
  sp_game_new(1.0, 1.0, &flat);
  CHECK(sp_find_nstar(1.0, 0.1, f, flat, 20, &nstar, nullptr) == SP_ERR_SEARCH_EXHAUSTED);
  CHECK(sp_exit_code_for_status(SP_ERR_SEARCH_EXHAUSTED) == 3);

  sp_equilibrium* eq = nullptr;
  CHECK(sp_solve(1.0, f, flat, 0, 0, &eq) == SP_ERR_NO_DISPERSION_INCENTIVE);
  REQUIRE(sp_solve(1.0, f, g, 0, 0, &eq) == SP_OK);
  double lo = 0, hi = 0, a = 0, b = 0;
  CHECK(sp_equilibrium_coefficients(eq, &lo, &hi, &a, &b) == SP_OK);
  CHECK(lo < 1.0);
  CHECK(hi > 1.0);
  CHECK(sp_equilibrium_cdf(eq, hi, &v) == SP_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(sp_equilibrium_to_json(eq, &json) == SP_OK);
  CHECK(std::string(json).find("\"c_min\"") != std::string::npos);
  sp_string_free(json);
  sp_equilibrium_free(eq);
  sp_fitness_free(f);
  sp_game_free(flat);
  sp_game_free(g);
}

TEST_CASE("running a command") {
  const std::string cfg = std::string(STATUSPREF_CONFIG_DIR) + "/ess_check.cfg";
  const std::string out = "c_api_out";
  sp_command_options opts{out.c_str(), SP_FORMAT_JSON, 0, 0, 0};
  int code = -1;
  char* report = nullptr;
  REQUIRE(sp_run_command("ess-check", cfg.c_str(), &opts, &code, &report) == SP_OK);
  CHECK(code == 0);
  CHECK(std::string(report).find("\"is_ess\": true") != std::string::npos);
  sp_string_free(report);
  CHECK(sp_run_command("ess-check", "/missing.cfg", &opts, &code, nullptr) == SP_ERR_CONFIG);
  CHECK(sp_exit_code_for_status(SP_ERR_CONFIG) == 2);
}
