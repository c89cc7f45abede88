#include "statuspref/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "statuspref/equilibrium.hpp"
#include "statuspref/invasion.hpp"
#include "statuspref/lottery.hpp"

namespace statuspref {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double spec_number(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kConfig, "gene '" + spec + "': bad number '" + text + "'");
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : root_(path) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_))
      fail(ErrorCode::kIo, "cannot create output directory '" + path + "'");
  }

  std::ofstream open(const std::string& name, std::vector<std::string>& files) {
    const fs::path p = root_ / name;
    std::ofstream out(p);
    if (!out) fail(ErrorCode::kIo, "cannot write '" + p.string() + "'");
    out << std::setprecision(17);
    files.push_back(p.string());
    return out;
  }

 private:
  fs::path root_;
};

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void write_report(OutputDir& dir, const std::string& stem, const Json& report,
                  OutputFormat format, std::vector<std::string>& files) {
  if (format == OutputFormat::kJson) {
    auto out = dir.open(stem + ".json", files);
    out << report.dump(2) << '\n';
    return;
  }
  auto out = dir.open(stem + ".csv", files);
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

template <typename T>
std::optional<T> optional_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

// Command bodies. Each reads all keys, rejects leftovers, then computes.

CommandOutcome ess_check(const KeyValueConfig& cfg, const CommandOptions& opt) {
  EssCheckReport r;
  r.game = read_game(cfg);
  r.theta = read_theta(cfg);
  cfg.reject_unused();
  r.verdict = following_is_ess(r.theta, r.game);
  r.following = signal_payoffs(1.0, 1.0, r.theta, r.game);
  r.deviating = signal_payoffs(0.0, 1.0, r.theta, r.game);
  r.nash = nash_payoff(r.game);

  CommandOutcome out;
  out.report = to_json(r);
  out.exit_code = r.verdict.is_ess ? 0 : 1;
  OutputDir dir(opt.out_dir);
  write_report(dir, "ess_check", out.report, opt.format, out.files);
  return out;
}

CommandOutcome solve(const KeyValueConfig& cfg, const CommandOptions& opt) {
  const PayoffMatrix game = read_game(cfg);
  const FitnessSpec fitness = read_fitness(cfg);
  const double c0 = cfg.number_or("endowment", 1.0);
  const SolverOptions solver = read_solver(cfg);
  cfg.reject_unused();

  SolveReport r{solve_stable_distribution(c0, fitness, game, solver), std::nullopt};
  if (opt.compare) r.corollary = corollary_check(r.solution, fitness, game);

  CommandOutcome out;
  out.report = to_json(r);
  OutputDir dir(opt.out_dir);
  write_report(dir, "equilibrium", out.report, opt.format, out.files);
  auto csv = dir.open("equilibrium_cdf.csv", out.files);
  csv << "c,cdf,cdf_discretized\n";
  const MixedDistribution& g = r.solution.discretized();
  std::vector<double> knots{g.support_min()};
  for (const Segment& s : g.segments()) knots.push_back(s.hi);
  for (double c : knots)
    csv << csv_number(c) << ',' << csv_number(r.solution.cdf(c)) << ','
        << csv_number(g.cdf(c)) << '\n';
  return out;
}

CommandOutcome simulate_cmd(const KeyValueConfig& cfg, const CommandOptions& opt) {
  const PayoffMatrix game = read_game(cfg);
  const FitnessSpec fitness = read_fitness(cfg);
  const double c0 = cfg.number_or("endowment", 1.0);
  GeneFactory factory(cfg, game, fitness, c0);
  const SimConfig sim = read_sim_config(cfg, factory, opt.seed, true);
  if (sim.genes.empty()) fail(ErrorCode::kConfig, "missing required key 'sim.genes'");
  cfg.reject_unused();

  const SimulationResult result = simulate(sim);
  SimulationSummary s;
  s.seed = sim.seed;
  s.agents = sim.agents;
  s.interactions = sim.interactions;
  s.generations = sim.generations;
  s.mutation_rate = sim.mutation_rate;
  for (const Gene& g : sim.genes) s.genes.push_back(g.name);
  s.initial_shares = sim.initial_shares;
  s.final_shares = result.final_shares();
  s.final_shares.resize(sim.genes.size(), 0.0);
  for (const GenerationStats& st : result.history) {
    const ConservationCheck c = conservation(st, sim);
    s.max_consumption_z = std::max(s.max_consumption_z, c.consumption_z);
    s.max_social_good_z = std::max(s.max_social_good_z, c.social_good_z);
    s.conservation_holds = s.conservation_holds && c.holds();
  }

  CommandOutcome out;
  out.report = to_json(s);
  OutputDir dir(opt.out_dir);
  auto csv = dir.open("generations.csv", out.files);
  csv << "generation";
  for (const Gene& g : sim.genes) csv << ",share:" << g.name;
  csv << ",mean_consumption,var_consumption,mean_social_good,var_social_good,"
         "mean_fitness";
  for (const Gene& g : sim.genes) csv << ",fitness:" << g.name;
  csv << '\n';
  for (const GenerationStats& st : result.history) {
    csv << st.generation;
    for (std::size_t count : st.gene_counts)
      csv << ',' << csv_number(static_cast<double>(count) / static_cast<double>(sim.agents));
    csv << ',' << csv_number(st.mean_consumption) << ','
        << csv_number(st.var_consumption) << ','
        << csv_number(st.mean_social_good) << ','
        << csv_number(st.var_social_good) << ',' << csv_number(st.mean_fitness);
    for (double f : st.gene_mean_fitness) csv << ',' << csv_number(f);
    csv << '\n';
  }
  write_report(dir, "summary", out.report, opt.format, out.files);
  return out;
}

CommandOutcome invasion_cmd(const KeyValueConfig& cfg, const CommandOptions& opt) {
  const PayoffMatrix game = read_game(cfg);
  const FitnessSpec fitness = read_fitness(cfg);
  const double c0 = cfg.number_or("endowment", 1.0);
  GeneFactory factory(cfg, game, fitness, c0);
  const std::string incumbent_spec = cfg.text("invasion.incumbent");
  const std::string mutant_spec = cfg.text("invasion.mutant");
  const Gene incumbent = factory.parse(incumbent_spec);
  const Gene mutant = factory.parse(mutant_spec);
  InvasionOptions inv;
  if (cfg.has("invasion.eps")) inv.eps_grid = cfg.numbers("invasion.eps");
  inv.simulation_seeds = cfg.count_or("invasion.seeds", 0);
  SimConfig sim = read_sim_config(cfg, factory, opt.seed, inv.simulation_seeds > 0);
  cfg.reject_unused();
  for (double eps : inv.eps_grid)
    if (!(eps > 0.0 && eps < 1.0))
      fail(ErrorCode::kConfig, "'invasion.eps': values must lie in (0, 1)");

  InvasionRun run;
  run.incumbent = incumbent.name;
  run.mutant = mutant.name;
  run.report = invasion_test(incumbent, mutant, sim, inv);
  for (const InvasionPoint& p : run.report.points)
    run.dispersion.push_back(find_profitable_dispersion(c0, p.eps, fitness, game));

  CommandOutcome out;
  out.report = to_json(run);
  OutputDir dir(opt.out_dir);
  auto csv = dir.open("invasion.csv", out.files);
  csv << "eps,mutant_fitness,incumbent_fitness,mutant_loses,closed_form,"
         "sim_mutant,sim_incumbent,sim_stderr,sim_agrees,dispersion_delta,"
         "dispersion_n,dispersion_margin\n";
  for (std::size_t i = 0; i < run.report.points.size(); ++i) {
    const InvasionPoint& p = run.report.points[i];
    const auto& d = run.dispersion[i];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    csv << csv_number(p.eps) << ',' << csv_number(p.mutant_fitness) << ','
        << csv_number(p.incumbent_fitness) << ',' << p.mutant_loses() << ','
        << csv_number(p.trivial_mutant_closed_form.value_or(nan)) << ','
        << csv_number(p.simulated ? p.simulated->mutant_mean : nan) << ','
        << csv_number(p.simulated ? p.simulated->incumbent_mean : nan) << ','
        << csv_number(p.simulated ? p.simulated->difference_stderr : nan) << ','
        << (p.simulation_agrees() ? std::to_string(*p.simulation_agrees()) : "")
        << ',' << csv_number(d ? d->delta : nan) << ','
        << (d ? std::to_string(d->n) : "") << ','
        << csv_number(d ? d->margin() : nan) << '\n';
  }
  if (opt.format == OutputFormat::kJson)
    write_report(dir, "invasion", out.report, opt.format, out.files);
  return out;
}

CommandOutcome nstar_cmd(const KeyValueConfig& cfg, const CommandOptions& opt) {
  const PayoffMatrix game = read_game(cfg);
  const FitnessSpec fitness = read_fitness(cfg);
  NstarReport r;
  r.endowment = cfg.number_or("endowment", 1.0);
  r.delta = cfg.number("lottery.delta");
  r.n_max = cfg.count_or("lottery.n_max", kDefaultNmax);
  cfg.reject_unused();
  r.result = find_nstar(r.endowment, r.delta, fitness, game, r.n_max);

  CommandOutcome out;
  out.report = to_json(r);
  OutputDir dir(opt.out_dir);
  write_report(dir, "nstar", out.report, opt.format, out.files);
  return out;
}

}  // namespace

PayoffMatrix read_game(const KeyValueConfig& cfg) {
  if (cfg.has("game.s1"))
    return PayoffMatrix::general(cfg.number("game.s1"), cfg.number("game.s2"),
                                 cfg.number("game.s3"), cfg.number("game.s4"));
  return PayoffMatrix::normalized(cfg.number("game.lead"), cfg.number("game.defer"));
}

FitnessSpec read_fitness(const KeyValueConfig& cfg) {
  const std::string family = cfg.text("fitness.family");
  if (family == "power")
    return FitnessSpec::power(cfg.number("fitness.alpha"), cfg.number("fitness.beta"));
  if (family == "additive")
    return FitnessSpec::additive(cfg.number("fitness.alpha"),
                                 cfg.number("fitness.gamma"));
  fail(ErrorCode::kConfig,
       "'fitness.family': expected 'power' or 'additive', got '" + family + "'");
}

SignalStructure read_theta(const KeyValueConfig& cfg) {
  SignalStructure theta{cfg.number("theta.dove_given_hawk"),
                        cfg.number("theta.hawk_given_dove")};
  try {
    theta.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kConfig, e.what());
  }
  return theta;
}

SolverOptions read_solver(const KeyValueConfig& cfg) {
  SolverOptions s;
  s.tolerance = cfg.number_or("solver.tolerance", s.tolerance);
  s.max_iterations =
      static_cast<int>(cfg.count_or("solver.max_iterations", s.max_iterations));
  s.initial_c_min = cfg.optional_number("solver.initial_c_min");
  s.segments = cfg.count_or("solver.segments", s.segments);
  return s;
}

GeneFactory::GeneFactory(const KeyValueConfig& cfg, const PayoffMatrix& game,
                         const FitnessSpec& fitness, double endowment)
    : cfg_(cfg), game_(game), fitness_(fitness), endowment_(endowment) {
  // Read eagerly so that solver keys count as used even without gstar genes.
  (void)read_solver(cfg_);
}

const EquilibriumSolution& GeneFactory::stable() {
  if (!stable_)
    stable_ = solve_stable_distribution(endowment_, fitness_, game_, read_solver(cfg_));
  return *stable_;
}

Lottery GeneFactory::parse_lottery(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts.front();
  if (kind == "trivial" && parts.size() == 1) return Lottery::trivial(endowment_);
  if (kind == "gstar" && parts.size() == 1) return stable_lottery(stable());
  if (kind == "gn" && parts.size() == 3) {
    const double delta = spec_number(parts[1], spec);
    const double n = spec_number(parts[2], spec);
    if (!(n >= 1.0 && n == std::floor(n)))
      fail(ErrorCode::kConfig, "lottery '" + spec + "': n must be a positive integer");
    return construct_gn(endowment_, delta, static_cast<std::uint64_t>(n));
  }
  if (kind == "two_point" && parts.size() == 3) {
    const double lo = spec_number(parts[1], spec);
    const double hi = spec_number(parts[2], spec);
    if (!(lo > 0.0 && lo < endowment_ && endowment_ < hi))
      fail(ErrorCode::kConfig,
           "lottery '" + spec + "': need 0 < lo < endowment < hi");
    const double low_mass = (hi - endowment_) / (hi - lo);
    return Lottery(MixedDistribution({{lo, low_mass}, {hi, 1.0 - low_mass}}, {}),
                   endowment_);
  }
  fail(ErrorCode::kConfig,
       "unknown lottery '" + spec +
           "' (expected trivial, gstar, gn:DELTA:N, two_point:LO:HI or menu)");
}

Gene GeneFactory::parse(const std::string& spec) {
  const auto plus = spec.find('+');
  if (plus == std::string::npos)
    fail(ErrorCode::kConfig, "gene '" + spec + "': expected SIGNAL+LOTTERY");
  const std::string signal = spec.substr(0, plus);
  const std::string lottery = spec.substr(plus + 1);

  Gene gene;
  gene.name = spec;
  const auto sparts = split(signal, ':');
  if (sparts.front() == "follow" && sparts.size() <= 2) {
    const double a = sparts.size() == 2 ? spec_number(sparts[1], spec) : 1.0;
    if (!(a >= 0.0 && a <= 1.0))
      fail(ErrorCode::kConfig, "gene '" + spec + "': follow probability outside [0, 1]");
    gene.signal = SignalPolicy::following(a);
  } else if (signal == "ignore") {
    gene.signal = SignalPolicy::ignoring(interior_ess(game_));
  } else if (signal == "always_h") {
    gene.signal = SignalPolicy::constant(Action::kHawk);
  } else if (signal == "always_d") {
    gene.signal = SignalPolicy::constant(Action::kDove);
  } else {
    fail(ErrorCode::kConfig, "gene '" + spec + "': unknown signal policy '" + signal +
                                 "' (expected follow[:A], ignore, always_h, always_d)");
  }

  if (lottery == "menu") {
    if (!menu_) {
      menu_.emplace();
      for (const std::string& item : cfg_.texts("lottery.menu"))
        menu_->push_back(parse_lottery(item));
    }
    gene.lottery = LotteryPolicy::menu_of(*menu_);
  } else {
    Lottery l = parse_lottery(lottery);
    gene.lottery = l.is_trivial() ? LotteryPolicy::trivial()
                                  : LotteryPolicy::fixed_lottery(std::move(l));
  }
  return gene;
}

SimConfig read_sim_config(const KeyValueConfig& cfg, GeneFactory& genes,
                          std::optional<std::uint64_t> seed_override,
                          bool need_seed) {
  SimConfig sim;
  sim.game = read_game(cfg);
  sim.fitness = read_fitness(cfg);
  sim.endowment = cfg.number_or("endowment", 1.0);
  sim.agents = cfg.count_or("sim.agents", sim.agents);
  sim.interactions = cfg.count_or("sim.interactions", sim.interactions);
  sim.generations = cfg.count_or("sim.generations", sim.generations);
  sim.mutation_rate = cfg.number_or("sim.mutation_rate", sim.mutation_rate);
  const std::string source = cfg.text_or("sim.signals", "consumption");
  if (source == "consumption") {
    sim.signals = SignalSource::kConsumption;
    sim.misperception = cfg.number_or("sim.misperception", 0.0);
  } else if (source == "exogenous") {
    sim.signals = SignalSource::kExogenous;
    sim.theta = read_theta(cfg);
  } else {
    fail(ErrorCode::kConfig,
         "'sim.signals': expected 'consumption' or 'exogenous', got '" + source + "'");
  }
  if (seed_override) {
    (void)cfg.text_or("sim.seed", "");
    sim.seed = *seed_override;
  } else if (cfg.has("sim.seed")) {
    sim.seed = cfg.count("sim.seed");
  } else if (need_seed) {
    fail(ErrorCode::kConfig, "a seed is required: set 'sim.seed' or pass --seed");
  }
  if (cfg.has("sim.genes")) {
    for (const std::string& spec : cfg.texts("sim.genes"))
      sim.genes.push_back(genes.parse(spec));
    if (cfg.has("sim.initial_shares")) {
      sim.initial_shares = cfg.numbers("sim.initial_shares");
    } else {
      sim.initial_shares.assign(sim.genes.size(),
                                1.0 / static_cast<double>(sim.genes.size()));
    }
    try {
      sim.validate();
    } catch (const Error& e) {
      fail(ErrorCode::kConfig, e.what());
    }
  }
  return sim;
}

Json to_json(const EssCheckReport& r) {
  return {{"command", "ess-check"},  {"game", r.game},
          {"theta", r.theta},        {"verdict", r.verdict},
          {"following", r.following}, {"deviating", r.deviating},
          {"nash", r.nash}};
}

EssCheckReport ess_check_from_json(const Json& j) {
  EssCheckReport r;
  r.game = j.at("game").get<PayoffMatrix>();
  r.theta = j.at("theta").get<SignalStructure>();
  r.verdict = j.at("verdict").get<EssVerdict>();
  r.following = j.at("following").get<ConditionalPayoffs>();
  r.deviating = j.at("deviating").get<ConditionalPayoffs>();
  r.nash = j.at("nash").get<double>();
  return r;
}

Json to_json(const SolveReport& r) {
  Json j = {{"command", "solve"}, {"solution", r.solution}};
  j["corollary"] = r.corollary ? Json(*r.corollary) : Json(nullptr);
  return j;
}

SolveReport solve_from_json(const Json& j) {
  return {j.at("solution").get<EquilibriumSolution>(),
          optional_from<CorollaryReport>(j, "corollary")};
}

Json to_json(const SimulationSummary& r) {
  return {{"command", "simulate"},
          {"seed", r.seed},
          {"agents", r.agents},
          {"interactions", r.interactions},
          {"generations", r.generations},
          {"mutation_rate", r.mutation_rate},
          {"genes", r.genes},
          {"initial_shares", r.initial_shares},
          {"final_shares", r.final_shares},
          {"max_consumption_z", number_to_json(r.max_consumption_z)},
          {"max_social_good_z", number_to_json(r.max_social_good_z)},
          {"conservation_holds", r.conservation_holds}};
}

SimulationSummary simulation_summary_from_json(const Json& j) {
  SimulationSummary r;
  j.at("seed").get_to(r.seed);
  j.at("agents").get_to(r.agents);
  j.at("interactions").get_to(r.interactions);
  j.at("generations").get_to(r.generations);
  j.at("mutation_rate").get_to(r.mutation_rate);
  j.at("genes").get_to(r.genes);
  j.at("initial_shares").get_to(r.initial_shares);
  j.at("final_shares").get_to(r.final_shares);
  r.max_consumption_z = number_from_json(j.at("max_consumption_z"));
  r.max_social_good_z = number_from_json(j.at("max_social_good_z"));
  j.at("conservation_holds").get_to(r.conservation_holds);
  return r;
}

Json to_json(const InvasionRun& r) {
  Json dispersion = Json::array();
  for (const auto& d : r.dispersion) dispersion.push_back(d ? Json(*d) : Json(nullptr));
  return {{"command", "invasion"},
          {"incumbent", r.incumbent},
          {"mutant", r.mutant},
          {"report", r.report},
          {"dispersion", dispersion}};
}

InvasionRun invasion_from_json(const Json& j) {
  InvasionRun r;
  j.at("incumbent").get_to(r.incumbent);
  j.at("mutant").get_to(r.mutant);
  j.at("report").get_to(r.report);
  for (const Json& d : j.at("dispersion"))
    r.dispersion.push_back(d.is_null() ? std::nullopt
                                       : std::optional(d.get<DispersionComparison>()));
  return r;
}

Json to_json(const NstarReport& r) {
  return {{"command", "lottery-nstar"},
          {"endowment", r.endowment},
          {"delta", r.delta},
          {"n_max", r.n_max},
          {"result", r.result}};
}

NstarReport nstar_from_json(const Json& j) {
  NstarReport r;
  j.at("endowment").get_to(r.endowment);
  j.at("delta").get_to(r.delta);
  j.at("n_max").get_to(r.n_max);
  j.at("result").get_to(r.result);
  return r;
}

CommandOutcome run_command(const std::string& command, const KeyValueConfig& cfg,
                           const CommandOptions& options) {
  if (command == "ess-check") return ess_check(cfg, options);
  if (command == "solve") return solve(cfg, options);
  if (command == "simulate") return simulate_cmd(cfg, options);
  if (command == "invasion") return invasion_cmd(cfg, options);
  if (command == "lottery-nstar") return nstar_cmd(cfg, options);
  fail(ErrorCode::kConfig, "unknown command '" + command + "'");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kConfig:
    case ErrorCode::kIo:
      return 2;
    case ErrorCode::kNumerical:
    case ErrorCode::kSearchExhausted:
    case ErrorCode::kNoDispersionIncentive:
      return 3;
  }
  return 3;
}

}  // namespace statuspref
