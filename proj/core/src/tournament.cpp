#include "wicketsim/tournament.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "parallel.hpp"
#include "wicketsim/error.hpp"

namespace wicketsim {

namespace {
constexpr std::uint64_t kSimTag = 0x53494d30ULL;  // "SIM0"
}

void TournamentConfig::validate() const {
  if (teams.size() < 2) throw ValidationError("a tournament needs at least two teams");
  std::set<std::string> unique(teams.begin(), teams.end());
  if (unique.size() != teams.size()) throw ValidationError("duplicate team in tournament");
  if (rounds != 1 && rounds != 2) throw ValidationError("league rounds must be 1 or 2");
  if (points.win <= points.loss) throw ValidationError("win points must exceed loss points");
  if (playoff != PlayoffFormat::None && teams.size() < 4) {
    throw ValidationError("playoff formats need at least four teams");
  }
  if (sims == 0) throw ValidationError("sims must be at least 1");
  if (max_resims < 0) throw ValidationError("max_resims must be nonnegative");
  scheme.validate();
}

void rank_table(LeagueTable& table, const std::vector<std::string>& team_ids) {
  std::sort(table.rows.begin(), table.rows.end(), [&](const LeagueRow& a, const LeagueRow& b) {
    if (a.points != b.points) return a.points > b.points;
    if (a.run_diff != b.run_diff) return a.run_diff > b.run_diff;
    return team_ids[a.side] < team_ids[b.side];
  });
}

std::size_t play_decider(const MatchEngine& engine, std::size_t a, std::size_t b, RngStream& rng,
                         int max_resims) {
  for (int attempt = 0; attempt <= max_resims; ++attempt) {
    const MatchResult m = engine.play(a, b, rng);
    if (m.outcome == Outcome::AWins) return a;
    if (m.outcome == Outcome::BWins) return b;
  }
  return rng.coin() ? a : b;
}

LeagueTable simulate_league(const TournamentConfig& config, const MatchEngine& engine,
                            RngStream& rng) {
  const std::size_t n = config.teams.size();
  LeagueTable table;
  table.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i) table.rows[i].side = i;

  const PointsRule& pts = config.points;
  auto award = [&](LeagueRow& winner, LeagueRow& loser) {
    ++winner.won;
    ++loser.lost;
    winner.points += pts.win;
    loser.points += pts.loss;
    table.total_points += pts.win + pts.loss;
  };

  for (int round = 0; round < config.rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const MatchResult m = engine.play(i, j, rng);
        LeagueRow& ri = table.rows[i];
        LeagueRow& rj = table.rows[j];
        ++ri.played;
        ++rj.played;
        ++table.games;
        ri.run_diff += m.score_a - m.score_b;
        rj.run_diff += m.score_b - m.score_a;
        switch (m.outcome) {
          case Outcome::AWins: award(ri, rj); break;
          case Outcome::BWins: award(rj, ri); break;
          case Outcome::Draw:
            if (pts.draw_rule == DrawRule::SplitPoints) {
              ++ri.drawn;
              ++rj.drawn;
              ri.points += pts.draw;
              rj.points += pts.draw;
              table.total_points += 2 * pts.draw;
              ++table.drawn_games;
            } else {
              ++table.resolved_draws;
              // The tied game counts as played once; only the decider's winner matters.
              const std::size_t w = play_decider(engine, i, j, rng, config.max_resims - 1);
              if (w == i) award(ri, rj); else award(rj, ri);
            }
            break;
        }
      }
    }
  }
  rank_table(table, config.teams);
  return table;
}

FinalStandings simulate_knockout(const LeagueTable& table, PlayoffFormat format,
                                 const MatchEngine& engine, RngStream& rng, int max_resims) {
  const std::size_t n = table.rows.size();
  std::vector<std::size_t> league_order(n);
  for (std::size_t i = 0; i < n; ++i) league_order[i] = table.rows[i].side;

  FinalStandings out;
  const std::size_t qualifiers = std::min<std::size_t>(4, n);
  out.playoff_sides.assign(league_order.begin(), league_order.begin() + static_cast<std::ptrdiff_t>(qualifiers));
  if (format == PlayoffFormat::None) {
    out.order = league_order;
    return out;
  }
  if (n < 4) throw ValidationError("knockout needs at least four teams");

  const std::size_t t1 = league_order[0], t2 = league_order[1], t3 = league_order[2],
                    t4 = league_order[3];
  std::size_t champion = 0, runner_up = 0;
  auto other = [](std::size_t winner, std::size_t a, std::size_t b) { return winner == a ? b : a; };

  if (format == PlayoffFormat::Semis) {
    const std::size_t sf1 = play_decider(engine, t1, t4, rng, max_resims);
    const std::size_t sf2 = play_decider(engine, t2, t3, rng, max_resims);
    champion = play_decider(engine, sf1, sf2, rng, max_resims);
    runner_up = other(champion, sf1, sf2);
  } else {
    const std::size_t q1 = play_decider(engine, t1, t2, rng, max_resims);
    const std::size_t elim = play_decider(engine, t3, t4, rng, max_resims);
    const std::size_t q2 = play_decider(engine, other(q1, t1, t2), elim, rng, max_resims);
    champion = play_decider(engine, q1, q2, rng, max_resims);
    runner_up = other(champion, q1, q2);
  }

  out.order.reserve(n);
  out.order.push_back(champion);
  out.order.push_back(runner_up);
  for (std::size_t side : league_order) {
    if (side != champion && side != runner_up) out.order.push_back(side);
  }
  return out;
}

double StandingsDistribution::position(std::size_t team, std::size_t pos) const {
  return static_cast<double>(position_counts[team][pos]) / static_cast<double>(sims);
}

double StandingsDistribution::champion(std::size_t team) const {
  return static_cast<double>(champion_counts[team]) / static_cast<double>(sims);
}

double StandingsDistribution::semifinalist(std::size_t team) const {
  return static_cast<double>(semifinalist_counts[team]) / static_cast<double>(sims);
}

double StandingsDistribution::conditional_champion(std::size_t team) const {
  if (semifinalist_counts[team] == 0) return 0.0;
  return static_cast<double>(champion_counts[team]) /
         static_cast<double>(semifinalist_counts[team]);
}

StandingsDistribution simulate_tournament(const TournamentConfig& config,
                                          const PriorTable& priors) {
  config.validate();
  std::vector<SideSetup> sides;
  sides.reserve(config.teams.size());
  for (const auto& id : config.teams) sides.push_back(SideSetup{id, config.scheme, {}});
  const MatchEngine engine(priors, sides);

  const std::size_t n = config.teams.size();
  struct Tally {
    std::vector<std::vector<std::uint64_t>> positions;
    std::vector<std::uint64_t> champion, semifinalist;
    int min_total = std::numeric_limits<int>::max();
    int max_total = std::numeric_limits<int>::min();
    int max_team = std::numeric_limits<int>::min();
    std::uint64_t drawn = 0, resolved = 0;
  };
  const unsigned workers = resolve_workers(config.workers);
  std::vector<Tally> tallies(workers);
  for (auto& t : tallies) {
    t.positions.assign(n, std::vector<std::uint64_t>(n, 0));
    t.champion.assign(n, 0);
    t.semifinalist.assign(n, 0);
  }

  parallel_chunks(config.sims, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    Tally& t = tallies[w];
    for (std::size_t s = begin; s < end; ++s) {
      RngStream rng = RngStream::substream(config.seed, {kSimTag, s});
      const LeagueTable table = simulate_league(config, engine, rng);
      const FinalStandings fs =
          simulate_knockout(table, config.playoff, engine, rng, config.max_resims);
      for (std::size_t pos = 0; pos < n; ++pos) ++t.positions[fs.order[pos]][pos];
      ++t.champion[fs.order[0]];
      for (std::size_t side : fs.playoff_sides) ++t.semifinalist[side];
      t.min_total = std::min(t.min_total, table.total_points);
      t.max_total = std::max(t.max_total, table.total_points);
      t.max_team = std::max(t.max_team, table.rows.front().points);
      t.drawn += static_cast<std::uint64_t>(table.drawn_games);
      t.resolved += static_cast<std::uint64_t>(table.resolved_draws);
    }
  });

  StandingsDistribution out;
  out.teams = config.teams;
  out.sims = config.sims;
  out.seed = config.seed;
  out.position_counts.assign(n, std::vector<std::uint64_t>(n, 0));
  out.champion_counts.assign(n, 0);
  out.semifinalist_counts.assign(n, 0);
  auto& d = out.diagnostics;
  d.league_games_per_sim = config.league_games();
  d.min_total_points = std::numeric_limits<int>::max();
  d.max_total_points = std::numeric_limits<int>::min();
  d.max_team_points = std::numeric_limits<int>::min();
  for (const auto& t : tallies) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t p = 0; p < n; ++p) out.position_counts[i][p] += t.positions[i][p];
      out.champion_counts[i] += t.champion[i];
      out.semifinalist_counts[i] += t.semifinalist[i];
    }
    d.min_total_points = std::min(d.min_total_points, t.min_total);
    d.max_total_points = std::max(d.max_total_points, t.max_total);
    d.max_team_points = std::max(d.max_team_points, t.max_team);
    d.drawn_games += t.drawn;
    d.resolved_draws += t.resolved;
  }
  return out;
}

}  // namespace wicketsim
