#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wicketsim/matchsim.hpp"
#include "wicketsim/selection.hpp"

namespace wicketsim {

enum class DrawRule {
  SplitPoints,  ///< a drawn league game gives each side `draw` points
  SuperOver,    ///< a drawn game is re-resolved to a strict winner
};

struct PointsRule {
  int win = 2;
  int draw = 1;
  int loss = 0;
  DrawRule draw_rule = DrawRule::SplitPoints;

  friend bool operator==(const PointsRule&, const PointsRule&) = default;
};

enum class PlayoffFormat {
  None,       ///< final league order is the final standing
  Semis,      ///< 1v4, 2v3, final of the winners
  Qualifier,  ///< Q1 1v2, eliminator 3v4, Q2 loser(Q1) v winner(elim), final
};

struct TournamentConfig {
  std::vector<std::string> teams;
  int rounds = 1;
  PointsRule points;
  PlayoffFormat playoff = PlayoffFormat::Semis;
  SelectionScheme scheme = SelectionScheme::odi_default();
  std::uint64_t sims = 10000;
  std::uint64_t seed = 0;
  /// Re-simulations of a drawn deciding game before a coin flip.
  int max_resims = 10;
  unsigned workers = 0;

  /// Throws ValidationError.
  void validate() const;

  std::size_t games_per_team() const noexcept { return (teams.size() - 1) * rounds; }
  std::size_t league_games() const noexcept {
    return teams.size() * (teams.size() - 1) / 2 * static_cast<std::size_t>(rounds);
  }
  int max_points() const noexcept { return points.win * static_cast<int>(games_per_team()); }
};

struct LeagueRow {
  std::size_t side = 0;  ///< index into TournamentConfig::teams
  int played = 0;
  int won = 0;
  int lost = 0;
  int drawn = 0;
  int points = 0;
  long long run_diff = 0;
};

/// One league realization, rows in final order (points, run difference, team id).
struct LeagueTable {
  std::vector<LeagueRow> rows;
  int games = 0;
  int drawn_games = 0;      ///< games settled as draws (split points)
  int resolved_draws = 0;   ///< tied games re-resolved under the super-over rule
  int total_points = 0;
};

/// Orders rows by points, then run difference, then team id (all descending
/// except id). Produces a strict total order.
void rank_table(LeagueTable& table, const std::vector<std::string>& team_ids);

/// Winner of a deciding game: the match is replayed on a tie up to
/// `max_resims` times, after which a coin flip from `rng` decides.
std::size_t play_decider(const MatchEngine& engine, std::size_t a, std::size_t b, RngStream& rng,
                         int max_resims);

/// Engine sides must be the config's teams in order.
LeagueTable simulate_league(const TournamentConfig& config, const MatchEngine& engine,
                            RngStream& rng);

struct FinalStandings {
  /// Sides by final position (index 0 = champion).
  std::vector<std::size_t> order;
  /// Sides that reached the knockout stage (or the league top four).
  std::vector<std::size_t> playoff_sides;
};

/// Champion first, runner-up second, the other knockout teams next in league
/// order, then the rest in league order.
FinalStandings simulate_knockout(const LeagueTable& table, PlayoffFormat format,
                                 const MatchEngine& engine, RngStream& rng, int max_resims = 10);

struct TournamentDiagnostics {
  std::size_t league_games_per_sim = 0;
  int min_total_points = 0;
  int max_total_points = 0;
  int max_team_points = 0;
  std::uint64_t drawn_games = 0;
  std::uint64_t resolved_draws = 0;
};

/// Team x final-position probabilities plus championship summaries.
struct StandingsDistribution {
  std::vector<std::string> teams;
  std::uint64_t sims = 0;
  std::uint64_t seed = 0;
  /// counts[t][pos]; every row and every column sums to `sims`.
  std::vector<std::vector<std::uint64_t>> position_counts;
  std::vector<std::uint64_t> champion_counts;
  std::vector<std::uint64_t> semifinalist_counts;
  TournamentDiagnostics diagnostics;

  double position(std::size_t team, std::size_t pos) const;
  double champion(std::size_t team) const;
  double semifinalist(std::size_t team) const;
  /// P(champion | semifinalist); 0 when the team never qualified.
  double conditional_champion(std::size_t team) const;

  friend bool operator==(const StandingsDistribution& a, const StandingsDistribution& b) {
    return a.teams == b.teams && a.sims == b.sims && a.seed == b.seed &&
           a.position_counts == b.position_counts && a.champion_counts == b.champion_counts &&
           a.semifinalist_counts == b.semifinalist_counts;
  }
};

/// `sims` league + knockout realizations, sim s on substream (seed, s).
StandingsDistribution simulate_tournament(const TournamentConfig& config, const PriorTable& priors);

}  // namespace wicketsim
