#include "wicketsim/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wicketsim/api.hpp"
#include "wicketsim/compare.hpp"
#include "wicketsim/config.hpp"
#include "wicketsim/error.hpp"
#include "wicketsim/matchsim.hpp"
#include "wicketsim/report.hpp"
#include "wicketsim/server.hpp"
#include "wicketsim/tournament.hpp"
#include "wicketsim/version.hpp"

namespace wicketsim::cli {

namespace {

using Clock = std::chrono::steady_clock;

/// Raised for bad flag combinations detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatasetFlags {
  std::string dir;
  std::string stats;
  std::string teams;
  std::string defaults;

  void add_to(CLI::App& app) {
    app.add_option("--dataset", dir, "Directory holding stats.csv, teams.json, defaults.json");
    app.add_option("--stats", stats, "Batting records CSV");
    app.add_option("--teams", teams, "Teams JSON");
    app.add_option("--defaults", defaults, "League defaults JSON");
  }

  /// Explicit file flags win over --dataset; --dataset fills the rest.
  DatasetPaths resolve(const std::optional<DatasetPaths>& fallback = std::nullopt) const {
    DatasetPaths p;
    if (fallback) p = *fallback;
    if (!dir.empty()) {
      const std::filesystem::path d(dir);
      p = DatasetPaths{d / "stats.csv", d / "teams.json", d / "defaults.json"};
    }
    if (!stats.empty()) p.stats = stats;
    if (!teams.empty()) p.teams = teams;
    if (!defaults.empty()) p.defaults = defaults;
    if (p.stats.empty()) throw UsageError("no stats file: pass --stats, --dataset or --config");
    return p;
  }

  std::vector<std::pair<std::string, std::string>> inputs(const DatasetPaths& p) const {
    std::vector<std::pair<std::string, std::string>> out{{"stats", p.stats.string()}};
    if (!p.teams.empty()) out.emplace_back("teams", p.teams.string());
    if (!p.defaults.empty()) out.emplace_back("defaults", p.defaults.string());
    return out;
  }
};

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("error writing '" + path + "'");
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("WICKETSIM_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto seed = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return seed;
  } catch (const std::exception&) {
    throw UsageError(std::string("WICKETSIM_SEED is not an unsigned integer: '") + v + "'");
  }
}

// ---------------------------------------------------------------------------

struct FitCommand {
  DatasetFlags data;
  std::string config;
  std::string out_path;
  std::optional<double> tail_cap;
  std::string beta_rule;
  bool timing = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("fit", "Fit gamma priors for every resolvable matchup");
    data.add_to(*cmd);
    cmd->add_option("--config", config, "Simulation config supplying fit options and dataset");
    cmd->add_option("--out", out_path, "Output params CSV (default stdout)");
    cmd->add_option("--tail-cap", tail_cap, "Max probability of exceeding the highest score")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--beta-rule", beta_rule, "max_feasible or min_feasible")
        ->check(CLI::IsMember({"max_feasible", "min_feasible"}));
    cmd->add_flag("--timing", timing, "Record wall time in the manifest");
  }

  int run(std::ostream& out) const {
    const auto start = Clock::now();
    FitOptions fit;
    std::optional<DatasetPaths> from_config;
    if (!config.empty()) {
      const SimulationConfig cfg = load_simulation_config(config);
      fit = cfg.fit;
      from_config = cfg.dataset;
    }
    if (tail_cap) fit.tail_cap = *tail_cap;
    if (beta_rule == "min_feasible") fit.rule = BetaRule::MinFeasible;
    if (beta_rule == "max_feasible") fit.rule = BetaRule::MaxFeasible;

    const DatasetPaths paths = data.resolve(from_config);
    const Dataset ds = load_dataset(paths);
    const auto rows = fit_params(ds, fit);

    RunManifest m{"fit", data.inputs(paths), std::nullopt, std::nullopt, kVersion, std::nullopt};
    if (!config.empty()) m.inputs.emplace_back("config", config);
    if (timing) {
      m.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
    write_output(out_path, params_csv(rows, &m), out);
    return kExitOk;
  }
};

struct SimCommand {
  std::string mode;
  std::string config;
  std::optional<std::uint64_t> sims;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out_path;
  unsigned workers = 0;
  std::vector<std::string> teams;
  bool fixed_xi = false;
  bool crn = false;
  bool timing = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sim", "Simulate a head-to-head matrix or a tournament");
    cmd->add_option("mode", mode, "match or tournament")
        ->required()
        ->check(CLI::IsMember({"match", "tournament"}));
    cmd->add_option("--config", config, "Simulation config JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--sims", sims, "Replicates per matchup / tournament simulations")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1000000000}));
    cmd->add_option("--seed", seed, "Seed (default: config, then WICKETSIM_SEED, then 0)");
    cmd->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", out_path, "Output file (default stdout)");
    cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
    cmd->add_option("--teams", teams, "Restrict to these team ids")->delimiter(',');
    cmd->add_flag("--fixed-xi", fixed_xi, "match: draw each XI once per matchup");
    cmd->add_flag("--crn", crn, "match: common random numbers");
    cmd->add_flag("--timing", timing, "Record wall time in the manifest");
  }

  int run(std::ostream& out) const {
    const auto start = Clock::now();
    SimulationConfig cfg = load_simulation_config(config);
    if (!teams.empty()) cfg.tournament.teams = teams;
    const Dataset ds = load_dataset(cfg.dataset);
    resolve_teams(cfg, ds);

    std::uint64_t resolved_seed = 0;
    if (seed) {
      resolved_seed = *seed;
    } else if (cfg.has_seed) {
      resolved_seed = cfg.tournament.seed;
    } else if (auto env = env_seed()) {
      resolved_seed = *env;
    }
    const std::uint64_t resolved_sims = sims ? *sims : (cfg.has_sims ? cfg.tournament.sims : 10000);
    cfg.tournament.seed = resolved_seed;
    cfg.tournament.sims = resolved_sims;
    cfg.tournament.workers = workers;

    RunManifest m{"sim " + mode, {{"config", config}}, resolved_seed, resolved_sims, kVersion,
                  std::nullopt};
    const PriorTable priors(ds, cfg.fit);
    std::string body;
    if (mode == "match") {
      MatchSettings settings = cfg.match;
      settings.fixed_xi = settings.fixed_xi || fixed_xi;
      settings.common_random_numbers = settings.common_random_numbers || crn;
      settings.workers = workers;
      const HeadToHead h = head_to_head_matrix(priors, cfg.tournament.teams, cfg.tournament.scheme,
                                               resolved_sims, resolved_seed, settings);
      if (timing) m.wall_time_ms = elapsed(start);
      body = format == "csv"    ? head_to_head_csv(h, &m)
             : format == "text" ? head_to_head_text(h)
                                : head_to_head_json(h, &m);
    } else {
      const StandingsDistribution s = simulate_tournament(cfg.tournament, priors);
      if (timing) m.wall_time_ms = elapsed(start);
      body = format == "csv"    ? standings_csv(s, &m)
             : format == "text" ? standings_text(s)
                                : standings_json(s, &m);
    }
    write_output(out_path, body, out);
    return kExitOk;
  }

  static double elapsed(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

struct DensityCommand {
  DatasetFlags data;
  std::string config;
  std::string player;
  std::vector<std::string> opponents;
  int points = 512;
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("density", "Emit plot-ready prior densities for one player");
    data.add_to(*cmd);
    cmd->add_option("--config", config, "Simulation config supplying fit options and dataset");
    cmd->add_option("--player", player, "Player id")->required();
    cmd->add_option("--opponents", opponents, "Opponent team ids (default: all other teams)")
        ->delimiter(',');
    cmd->add_option("--points", points, "Samples per opponent")->check(CLI::Range(2, 1000000));
    cmd->add_option("--out", out_path, "Output CSV (default stdout)");
  }

  int run(std::ostream& out) const {
    FitOptions fit;
    std::optional<DatasetPaths> from_config;
    if (!config.empty()) {
      const SimulationConfig cfg = load_simulation_config(config);
      fit = cfg.fit;
      from_config = cfg.dataset;
    }
    const DatasetPaths paths = data.resolve(from_config);
    const Dataset ds = load_dataset(paths);
    const Player* p = ds.find_player(player);
    if (p == nullptr && ds.records_for(player).empty()) {
      throw ValidationError("unknown player '" + player + "'");
    }
    std::vector<std::string> opps = opponents;
    if (opps.empty()) {
      for (const auto& t : ds.teams()) {
        if (p == nullptr || t.id != p->team_id) opps.push_back(t.id);
      }
    }
    if (opps.empty()) throw ValidationError("no opponents to tabulate");

    std::vector<DensityTable> tables;
    for (const auto& opp : opps) {
      if (!ds.teams().empty() && !ds.find_team(opp) && opp != kAllOpponents) {
        throw ValidationError("unknown opponent team '" + opp + "'");
      }
      const MatchupRecord rec = resolve_matchup(player, opp, ds);
      const FitResult fr = fit_gamma(rec.average, rec.highest, fit);
      DensityTable t = density_table(fr.params, rec.highest, points);
      t.player_id = player;
      t.opponent_id = opp;
      tables.push_back(std::move(t));
    }
    RunManifest m{"density", data.inputs(paths), std::nullopt, std::nullopt, kVersion, std::nullopt};
    m.inputs.emplace_back("player", player);
    write_output(out_path, density_csv(tables, &m), out);
    return kExitOk;
  }
};

struct CompareCommand {
  std::string predicted;
  std::string actual;
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("compare", "Set predicted win rates against observed records");
    cmd->add_option("--predicted", predicted, "Head-to-head JSON from `sim match`")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--actual", actual, "CSV a,b,wins,games[,pct]")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out_path, "Output CSV (default stdout)");
  }

  int run(std::ostream& out) const {
    const HeadToHead h = parse_head_to_head_json(read_file(predicted), predicted);
    std::vector<PredictedPair> pairs;
    for (const auto& e : h.entries) pairs.push_back({e.team_a, e.team_b, e.p_a});
    const auto rows = compare_to_actuals(pairs, parse_actuals_csv(read_file(actual), actual));
    write_output(out_path, comparison_csv(rows), out);
    return kExitOk;
  }
};

struct ServeCommand {
  DatasetFlags data;
  std::string config;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";
  unsigned workers = 1;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("serve", "Serve the what-if JSON API");
    data.add_to(*cmd);
    cmd->add_option("--config", config, "Simulation config (scheme, fit options, dataset)");
    cmd->add_option("--host", host, "Bind address");
    cmd->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
    cmd->add_option("--cors-origin", cors_origin, "Access-Control-Allow-Origin value");
    cmd->add_option("--workers", workers, "Simulation threads per request");
  }

  int run(std::ostream& out, std::ostream& err) const {
    SelectionScheme scheme = SelectionScheme::odi_default();
    FitOptions fit;
    std::optional<DatasetPaths> from_config;
    if (!config.empty()) {
      const SimulationConfig cfg = load_simulation_config(config);
      scheme = cfg.tournament.scheme;
      fit = cfg.fit;
      from_config = cfg.dataset;
    }
    const DatasetPaths paths = data.resolve(from_config);
    if (paths.teams.empty()) throw UsageError("serve needs a teams file");
    Dataset ds = load_dataset(paths);
    ApiOptions opts;
    opts.cors_origin = cors_origin;
    opts.workers = workers;
    const Api api(std::move(ds), scheme, fit, opts);

    HttpServer server(api, err);
    if (!server.bind(host, port)) {
      err << "error: cannot bind " << host << ':' << port << " (port in use?)\n";
      return kExitFailure;
    }
    out << "listening on http://" << host << ':' << server.port() << '\n' << std::flush;
    return server.listen() ? kExitOk : kExitFailure;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wicketsim: Monte Carlo cricket match and tournament simulation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  FitCommand fit;
  SimCommand sim;
  DensityCommand density;
  CompareCommand compare;
  ServeCommand serve;
  fit.add(app);
  sim.add(app);
  density.add(app);
  compare.add(app);
  serve.add(app);

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("fit")) return fit.run(out);
    if (app.got_subcommand("sim")) return sim.run(out);
    if (app.got_subcommand("density")) return density.run(out);
    if (app.got_subcommand("compare")) return compare.run(out);
    if (app.got_subcommand("serve")) return serve.run(out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace wicketsim::cli
