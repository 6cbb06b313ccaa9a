#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wicketsim/compare.hpp"
#include "wicketsim/matchsim.hpp"
#include "wicketsim/priors.hpp"
#include "wicketsim/roster.hpp"
#include "wicketsim/tournament.hpp"

namespace wicketsim {

/// Provenance embedded in every output file. Wall time is only recorded when
/// requested, so default outputs stay byte-identical across reruns.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> sims;
  std::string version;
  std::optional<double> wall_time_ms;
};

std::string manifest_json(const RunManifest& m);

// Head-to-head: {teams, entries: [{a, b, p_a, p_b, p_draw, n, seed, ...}], manifest}
std::string head_to_head_json(const HeadToHead& h, const RunManifest* manifest = nullptr);
std::string head_to_head_csv(const HeadToHead& h, const RunManifest* manifest = nullptr);
/// Percent matrix, row team beating column team, three significant figures.
std::string head_to_head_text(const HeadToHead& h);
HeadToHead parse_head_to_head_json(std::string_view text, const std::string& source);

// Standings: {teams, positions, champion, semifinalist, conditional_champion, manifest}
std::string standings_json(const StandingsDistribution& s, const RunManifest* manifest = nullptr);
std::string standings_csv(const StandingsDistribution& s, const RunManifest* manifest = nullptr);
std::string standings_text(const StandingsDistribution& s);
StandingsDistribution parse_standings_json(std::string_view text, const std::string& source);

/// Percentage with three significant figures, as in "64.9", "3.75", "100".
std::string format_percent(double p);

struct ParamsRow {
  std::string player_id;
  std::string opponent_id;
  GammaParams params;
  SourceTier tier = SourceTier::International;
  std::string flags;
};

/// One fitted row per resolvable matchup, sorted by (player, opponent).
/// With teams: every player against every other team. Stats-only: every
/// distinct (player, opponent) in the records, best tier first.
std::vector<ParamsRow> fit_params(const Dataset& dataset, const FitOptions& options);
std::string params_csv(const std::vector<ParamsRow>& rows, const RunManifest* manifest = nullptr);

struct DensityTable {
  std::string player_id;
  std::string opponent_id;
  GammaParams params;
  int highest = 0;
  std::vector<std::pair<double, double>> points;
};

/// `count` evenly spaced (x, pdf) samples on [0, upper], where
/// upper = max(1.5 * highest, 0.999 quantile).
DensityTable density_table(const GammaParams& params, int highest, int count = 512);
std::string density_csv(const std::vector<DensityTable>& tables,
                        const RunManifest* manifest = nullptr);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);
/// CSV with header `a,b,wins,games[,pct]`; pct in percent.
std::vector<ActualRecord> parse_actuals_csv(std::string_view text, const std::string& source);

}  // namespace wicketsim
