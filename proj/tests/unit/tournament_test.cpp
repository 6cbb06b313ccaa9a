#include <gtest/gtest.h>

#include <numeric>

#include "support/oracle.hpp"
#include "support/tournament_oracle.hpp"
#include "support/toy.hpp"
#include "wicketsim/config.hpp"
#include "wicketsim/error.hpp"
#include "wicketsim/tournament.hpp"

namespace wicketsim {
namespace {

using testing::point_mass;
using testing::set_team_prior;
using testing::toy_dataset;
using testing::with_mean_sd;

std::vector<testing::ToyTeam> specs(const std::vector<std::string>& ids) {
  std::vector<testing::ToyTeam> out;
  for (const auto& id : ids) out.push_back({id});
  return out;
}

TournamentConfig config_for(std::vector<std::string> ids, std::uint64_t sims) {
  TournamentConfig c;
  c.teams = std::move(ids);
  c.sims = sims;
  c.seed = 17;
  c.workers = 1;
  return c;
}

void expect_doubly_stochastic(const StandingsDistribution& s) {
  const std::size_t n = s.teams.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += s.position_counts[i][j];
      col += s.position_counts[j][i];
    }
    EXPECT_EQ(row, s.sims);
    EXPECT_EQ(col, s.sims);
  }
  EXPECT_EQ(std::accumulate(s.champion_counts.begin(), s.champion_counts.end(), std::uint64_t{0}),
            s.sims);
  for (std::size_t t = 0; t < n; ++t) {
    EXPECT_LE(s.champion(t), s.semifinalist(t));
    if (s.semifinalist(t) > 0) EXPECT_GE(s.conditional_champion(t), s.champion(t));
  }
}

TEST(TournamentConfig, Validation) {
  auto c = config_for({"A", "B", "C", "D"}, 10);
  EXPECT_NO_THROW(c.validate());
  c.rounds = 3;
  EXPECT_THROW(c.validate(), ValidationError);
  c = config_for({"A", "B", "C"}, 10);
  EXPECT_THROW(c.validate(), ValidationError);  // semis need four teams
  c.playoff = PlayoffFormat::None;
  EXPECT_NO_THROW(c.validate());
  c.sims = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = config_for({"A", "A", "B", "C"}, 10);
  EXPECT_THROW(c.validate(), ValidationError);
  c = config_for({"A", "B", "C", "D"}, 10);
  c.points.win = 0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(League, TenTeamSingleRoundConservesNinetyPoints) {
  std::vector<std::string> ids;
  for (char c = 'A'; c < 'A' + 10; ++c) ids.emplace_back(1, c);
  const Dataset ds = toy_dataset(specs(ids));
  const PriorTable priors(ds);
  auto cfg = config_for(ids, 300);
  EXPECT_EQ(cfg.league_games(), 45u);
  EXPECT_EQ(cfg.max_points(), 18);
  const StandingsDistribution s = simulate_tournament(cfg, priors);
  EXPECT_EQ(s.diagnostics.league_games_per_sim, 45u);
  EXPECT_EQ(s.diagnostics.min_total_points, 90);
  EXPECT_EQ(s.diagnostics.max_total_points, 90);
  EXPECT_LE(s.diagnostics.max_team_points, 18);
  expect_doubly_stochastic(s);
}

TEST(League, EightTeamDoubleRoundSuperOver) {
  std::vector<std::string> ids;
  for (char c = 'A'; c < 'A' + 8; ++c) ids.emplace_back(1, c);
  const Dataset ds = toy_dataset(specs(ids));
  const PriorTable priors(ds);
  auto cfg = config_for(ids, 300);
  cfg.rounds = 2;
  cfg.points = PointsRule{2, 0, 0, DrawRule::SuperOver};
  cfg.playoff = PlayoffFormat::Qualifier;
  EXPECT_EQ(cfg.league_games(), 56u);
  EXPECT_EQ(cfg.max_points(), 28);
  const StandingsDistribution s = simulate_tournament(cfg, priors);
  EXPECT_EQ(s.diagnostics.min_total_points, 112);
  EXPECT_EQ(s.diagnostics.max_total_points, 112);
  EXPECT_LE(s.diagnostics.max_team_points, 28);
  EXPECT_EQ(s.diagnostics.drawn_games, 0u);
  expect_doubly_stochastic(s);
}

TEST(League, SuperOverNeverLeavesDraws) {
  // Identical constant teams tie every game; the coin decides.
  const Dataset ds = toy_dataset(specs({"A", "B", "C", "D"}));
  PriorTable priors(ds);
  for (const char* id : {"A", "B", "C", "D"}) set_team_prior(priors, id, point_mass(20));
  auto cfg = config_for({"A", "B", "C", "D"}, 400);
  cfg.points.draw_rule = DrawRule::SuperOver;
  const MatchEngine engine(priors, {{"A"}, {"B"}, {"C"}, {"D"}});
  RngStream rng(3);
  const LeagueTable t = simulate_league(cfg, engine, rng);
  EXPECT_EQ(t.drawn_games, 0);
  EXPECT_EQ(t.resolved_draws, 6);
  EXPECT_EQ(t.total_points, 12);
  for (const auto& row : t.rows) EXPECT_EQ(row.won + row.lost, 3);

  const StandingsDistribution s = simulate_tournament(cfg, priors);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_GT(s.champion(i), 0.1);
}

TEST(League, SplitPointsRecordsDraws) {
  const Dataset ds = toy_dataset(specs({"A", "B", "C", "D"}));
  PriorTable priors(ds);
  for (const char* id : {"A", "B", "C", "D"}) set_team_prior(priors, id, point_mass(20));
  auto cfg = config_for({"A", "B", "C", "D"}, 10);
  const MatchEngine engine(priors, {{"A"}, {"B"}, {"C"}, {"D"}});
  RngStream rng(3);
  const LeagueTable t = simulate_league(cfg, engine, rng);
  EXPECT_EQ(t.drawn_games, 6);
  EXPECT_EQ(t.total_points, 12);
  // All level on points and run difference: id order decides.
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(t.rows[k].side, k);
}

TEST(League, RankingIsStrictTotalOrder) {
  LeagueTable t;
  t.rows = {{0, 3, 2, 1, 0, 4, 10}, {1, 3, 2, 1, 0, 4, 25}, {2, 3, 2, 1, 0, 4, 10},
            {3, 3, 0, 3, 0, 0, -45}};
  rank_table(t, {"D", "C", "B", "A"});
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].side, 1u);  // better run difference
  EXPECT_EQ(t.rows[1].side, 2u);  // "B" before "D"
  EXPECT_EQ(t.rows[2].side, 0u);
  EXPECT_EQ(t.rows[3].side, 3u);
}

class Rigged : public ::testing::Test {
 protected:
  void SetUp() override {
    ds = toy_dataset(specs({"A", "B", "C", "D"}));
    priors = std::make_unique<PriorTable>(ds);
    set_team_prior(*priors, "A", point_mass(50));
    set_team_prior(*priors, "B", point_mass(40));
    set_team_prior(*priors, "C", point_mass(30));
    set_team_prior(*priors, "D", point_mass(20));
  }
  Dataset ds;
  std::unique_ptr<PriorTable> priors;
};

TEST_F(Rigged, ThreeTeamsNoPlayoffGivePermutationMatrix) {
  auto cfg = config_for({"C", "A", "B"}, 500);
  cfg.playoff = PlayoffFormat::None;
  const StandingsDistribution s = simulate_tournament(cfg, *priors);
  // Config order C, A, B; league order A, B, C.
  EXPECT_EQ(s.position_counts[1][0], 500u);
  EXPECT_EQ(s.position_counts[2][1], 500u);
  EXPECT_EQ(s.position_counts[0][2], 500u);
  expect_doubly_stochastic(s);
}

TEST_F(Rigged, SemisBracket) {
  auto cfg = config_for({"D", "C", "B", "A"}, 300);
  const StandingsDistribution s = simulate_tournament(cfg, *priors);
  EXPECT_EQ(s.champion_counts[3], 300u);     // A
  EXPECT_EQ(s.position_counts[2][1], 300u);  // B runner-up
  EXPECT_EQ(s.position_counts[1][2], 300u);  // C third by league order
  EXPECT_EQ(s.position_counts[0][3], 300u);
}

TEST_F(Rigged, QualifierBracket) {
  const MatchEngine engine(*priors, {{"A"}, {"B"}, {"C"}, {"D"}});
  auto cfg = config_for({"A", "B", "C", "D"}, 1);
  RngStream rng(1);
  const LeagueTable t = simulate_league(cfg, engine, rng);
  const FinalStandings fs = simulate_knockout(t, PlayoffFormat::Qualifier, engine, rng);
  EXPECT_EQ(fs.order, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(fs.playoff_sides, (std::vector<std::size_t>{0, 1, 2, 3}));

  cfg.playoff = PlayoffFormat::Qualifier;
  cfg.sims = 200;
  const StandingsDistribution s = simulate_tournament(cfg, *priors);
  EXPECT_EQ(s.champion_counts[0], 200u);
  EXPECT_EQ(s.position_counts[1][1], 200u);
}

TEST_F(Rigged, KnockoutUsesLeagueOrderNotConfigOrder) {
  // Swap strengths so the league winner is D; 1v4 pairs D with A.
  set_team_prior(*priors, "D", point_mass(60));
  const MatchEngine engine(*priors, {{"A"}, {"B"}, {"C"}, {"D"}});
  auto cfg = config_for({"A", "B", "C", "D"}, 1);
  RngStream rng(2);
  const LeagueTable t = simulate_league(cfg, engine, rng);
  EXPECT_EQ(t.rows.front().side, 3u);
  const FinalStandings fs = simulate_knockout(t, PlayoffFormat::Semis, engine, rng);
  EXPECT_EQ(fs.order, (std::vector<std::size_t>{3, 0, 1, 2}));
}

TEST(Tournament, EqualTeamsShareTheTitle) {
  const Dataset ds = toy_dataset(specs({"A", "B", "C", "D"}));
  const PriorTable priors(ds);
  const StandingsDistribution s = simulate_tournament(config_for({"A", "B", "C", "D"}, 10000), priors);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s.champion(i), 0.25, 0.02) << s.teams[i];
  expect_doubly_stochastic(s);
}

TEST(Tournament, IndependentOfWorkerCount) {
  const Dataset ds = toy_dataset(specs({"A", "B", "C", "D", "E"}));
  const PriorTable priors(ds);
  auto cfg = config_for({"A", "B", "C", "D", "E"}, 1001);
  const StandingsDistribution one = simulate_tournament(cfg, priors);
  cfg.workers = 4;
  const StandingsDistribution four = simulate_tournament(cfg, priors);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.diagnostics.drawn_games, four.diagnostics.drawn_games);
  cfg.seed = 18;
  EXPECT_FALSE(simulate_tournament(cfg, priors) == one);
}

struct EnumerationCase {
  bool qualifier;
  bool super_over;
  int rounds;
};

class TinyEnumeration : public ::testing::TestWithParam<EnumerationCase> {};

TEST_P(TinyEnumeration, MatchesExactStandings) {
  const auto param = GetParam();
  const std::vector<std::string> ids{"A", "B", "C", "D"};
  const std::vector<GammaParams> swings{with_mean_sd(10.8, 0.3), with_mean_sd(10.6, 0.3),
                                        with_mean_sd(10.45, 0.3), with_mean_sd(10.2, 0.3)};
  const testing::SwingLeague league(ids, swings);

  testing::TinyTournament oracle;
  oracle.ids = ids;
  for (const auto& g : swings) {
    std::map<int, double> total;
    for (const auto& [k, p] : testing::rounded_pmf(g, 1e-10)) total[100 + k] = p;
    oracle.totals.push_back(total);
  }
  oracle.rounds = param.rounds;
  oracle.super_over = param.super_over;
  oracle.qualifier = param.qualifier;
  const testing::ExactStandings exact = testing::enumerate_tournament(oracle);
  double sum = 0.0;
  for (double p : exact.champion) sum += p;
  ASSERT_NEAR(sum, 1.0, 1e-8);

  auto cfg = config_for(ids, 10000);
  cfg.seed = 2023;
  cfg.rounds = param.rounds;
  cfg.playoff = param.qualifier ? PlayoffFormat::Qualifier : PlayoffFormat::Semis;
  cfg.points.draw_rule = param.super_over ? DrawRule::SuperOver : DrawRule::SplitPoints;
  const StandingsDistribution s = simulate_tournament(cfg, league.priors());
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_TRUE(testing::within_binomial_band(s.champion(t), exact.champion[t], 10000))
        << ids[t] << ": " << s.champion(t) << " vs " << exact.champion[t];
    for (std::size_t pos = 0; pos < 4; ++pos) {
      EXPECT_TRUE(testing::within_binomial_band(s.position(t, pos), exact.position[t][pos], 10000,
                                                3.5))
          << ids[t] << " pos " << pos;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Formats, TinyEnumeration,
                         ::testing::Values(EnumerationCase{false, false, 1},
                                           EnumerationCase{true, true, 2},
                                           EnumerationCase{false, true, 1},
                                           EnumerationCase{true, false, 2}),
                         [](const ::testing::TestParamInfo<EnumerationCase>& info) {
                           const auto& c = info.param;
                           return std::string(c.qualifier ? "Qualifier" : "Semis") +
                                  (c.super_over ? "SuperOver" : "Split") +
                                  (c.rounds == 2 ? "Double" : "Single");
                         });

TEST(Tournament, CwcFixtureStructure) {
  const Dataset ds = testing::load_fixture_dataset("cwc12");
  const PriorTable priors(ds);
  std::vector<std::string> ids;
  for (const auto& t : ds.teams()) ids.push_back(t.id);
  auto cfg = config_for(ids, 500);
  const StandingsDistribution s = simulate_tournament(cfg, priors);
  expect_doubly_stochastic(s);
  EXPECT_EQ(s.diagnostics.league_games_per_sim, 66u);
  EXPECT_EQ(s.diagnostics.min_total_points, 132);
  EXPECT_EQ(s.diagnostics.max_total_points, 132);
  std::uint64_t semis = 0;
  for (auto c : s.semifinalist_counts) semis += c;
  EXPECT_EQ(semis, 4 * s.sims);
}

}  // namespace
}  // namespace wicketsim
