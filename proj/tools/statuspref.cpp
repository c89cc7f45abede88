// Command-line front end over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <optional>
#include <string>

#include "statuspref/statuspref.h"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  bool compare = false;
  std::string format = "json";
};

void add_flags(CLI::App* cmd, Flags& flags, bool randomized, bool compare) {
  cmd->add_option("--config", flags.config, "Key-value config file")
      ->required()
      ->check(CLI::ExistingFile);
  if (randomized) cmd->add_option("--seed", flags.seed, "RNG seed (overrides sim.seed)");
  cmd->add_option("--out", flags.out, "Output directory")->capture_default_str();
  if (compare)
    cmd->add_flag("--compare", flags.compare,
                  "Also compare against the no-lottery society");
  cmd->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Status, lotteries and correlated play: analysis tools"};
  app.set_version_flag("--version", std::string(sp_version()));
  app.require_subcommand(1);

  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    bool randomized;
    bool compare;
  };
  const Command commands[] = {
      {"ess-check", "Check whether following recommendations is evolutionarily stable",
       false, false},
      {"solve", "Solve for the stable consumption distribution", false, true},
      {"simulate", "Run the agent-based population model", true, false},
      {"invasion", "Mutant invasion analysis over an eps grid", true, false},
      {"lottery-nstar", "Smallest n for which the G^n lottery pays off", false, false},
  };
  for (const Command& c : commands)
    add_flags(app.add_subcommand(c.name, c.help), flags, c.randomized, c.compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  sp_command_options options{};
  options.out_dir = flags.out.c_str();
  options.format = flags.format == "csv" ? SP_FORMAT_CSV : SP_FORMAT_JSON;
  options.compare = flags.compare ? 1 : 0;
  options.has_seed = flags.seed.has_value() ? 1 : 0;
  options.seed = flags.seed.value_or(0);

  int exit_code = 0;
  char* report = nullptr;
  const sp_status status = sp_run_command(command.c_str(), flags.config.c_str(),
                                          &options, &exit_code, &report);
  if (status != SP_OK) {
    std::fprintf(stderr, "statuspref %s: %s\n", command.c_str(), sp_last_error());
    return sp_exit_code_for_status(status);
  }
  // The discretized CDF is in the output files; keep the terminal readable.
  auto shown = nlohmann::json::parse(report);
  sp_string_free(report);
  if (shown.contains("solution")) shown["solution"].erase("discretized");
  std::puts(shown.dump(2).c_str());
  return exit_code;
}
