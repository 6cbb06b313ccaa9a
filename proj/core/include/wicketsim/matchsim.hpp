#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wicketsim/priors.hpp"
#include "wicketsim/rng.hpp"
#include "wicketsim/roster.hpp"
#include "wicketsim/selection.hpp"

namespace wicketsim {

/// Fitted prior of one player against one opposing team.
struct PriorEntry {
  GammaParams params;
  MatchupRecord source;
  std::uint32_t fit_flags = 0;
};

/// Priors for every (player, opposing team) pair of a dataset, fitted once.
/// Read-only after construction apart from explicit overrides, so one table
/// can be shared by any number of simulation workers.
class PriorTable {
 public:
  /// Fits every player against every team. Identical (average, highest)
  /// inputs are fitted once.
  PriorTable(const Dataset& dataset, const FitOptions& options = {});

  const Dataset& dataset() const noexcept { return *dataset_; }
  const FitOptions& options() const noexcept { return options_; }

  const PriorEntry& get(std::size_t team, std::size_t roster_index, std::size_t opponent) const {
    return entries_[team][roster_index * team_count_ + opponent];
  }
  const PriorEntry& get(std::string_view player_id, std::string_view opponent_id) const;

  /// Replaces one prior. An empty opponent id replaces it against every team.
  void override_params(std::string_view player_id, std::string_view opponent_id,
                       const GammaParams& params);

 private:
  PriorEntry& slot(std::string_view player_id, std::size_t opponent);

  const Dataset* dataset_;
  FitOptions options_;
  std::size_t team_count_ = 0;
  std::vector<std::vector<PriorEntry>> entries_;
};

enum class Outcome { AWins, BWins, Draw };

struct MatchResult {
  int score_a = 0;
  int score_b = 0;
  Outcome outcome = Outcome::Draw;
};

Outcome decide(int score_a, int score_b) noexcept;

/// Round half away from zero; scores are never negative.
int round_score(double x) noexcept;

/// One side of a fixture: who plays and how the XI is drawn.
struct SideSetup {
  std::string team_id;
  SelectionScheme scheme = SelectionScheme::odi_default();
  LineupConstraint constraint;
};

/// Stratified samplers and prior lookups for a fixed set of sides.
///
/// play() is const and thread-safe; all randomness comes from the stream
/// the caller passes in.
class MatchEngine {
 public:
  /// Validates feasibility of every side up front (InfeasibleError on failure).
  MatchEngine(const PriorTable& priors, const std::vector<SideSetup>& sides);

  std::size_t side_count() const noexcept { return sides_.size(); }
  const Team& team(std::size_t side) const noexcept { return *sides_[side].team; }
  const StratifiedSampler& sampler(std::size_t side) const noexcept {
    return sides_[side].sampler;
  }

  /// Samples both XIs, then one rounded gamma draw per selected player.
  MatchResult play(std::size_t side_a, std::size_t side_b, RngStream& rng) const;

  /// Team total for a given XI against the opposing side.
  int team_score(std::size_t side, const Lineup& xi, std::size_t opponent_side,
                 RngStream& rng) const;

  /// Common-random-numbers variant: each player's selection key and score
  /// uniform are pure functions of (key_seed, player id), so two engines that
  /// differ only in constraints or priors can be compared draw for draw.
  MatchResult play_crn(std::size_t side_a, std::size_t side_b, std::uint64_t key_seed,
                       const Lineup* fixed_a = nullptr, const Lineup* fixed_b = nullptr) const;

  Lineup crn_lineup(std::size_t side, std::uint64_t key_seed) const;

  const PriorEntry& prior(std::size_t side, std::size_t roster_index,
                          std::size_t opponent_side) const;

 private:
  struct Side {
    const Team* team;
    std::size_t team_index;
    StratifiedSampler sampler;
  };

  int crn_team_score(std::size_t side, const Lineup& xi, std::size_t opponent_side,
                     std::uint64_t key_seed) const;

  const PriorTable* priors_;
  std::vector<Side> sides_;
};

/// Convenience: one match between two teams of `priors.dataset()`.
MatchResult simulate_match(const PriorTable& priors, const SideSetup& a, const SideSetup& b,
                           RngStream& rng);

struct MatchSettings {
  /// Draw the XIs once per estimate instead of once per replicate.
  bool fixed_xi = false;
  bool common_random_numbers = false;
  /// 0 means one worker per hardware thread. Results do not depend on it.
  unsigned workers = 0;
};

struct MatchEstimate {
  std::string team_a;
  std::string team_b;
  double p_a = 0.0;
  double p_b = 0.0;
  double p_draw = 0.0;
  std::uint64_t wins_a = 0;
  std::uint64_t wins_b = 0;
  std::uint64_t draws = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  double mean_score_a = 0.0;
  double mean_score_b = 0.0;

  friend bool operator==(const MatchEstimate&, const MatchEstimate&) = default;
};

/// n independent replicates; replicate r uses the substream (seed, r), so the
/// estimate is bit-identical for any worker count.
MatchEstimate estimate_matchup(const PriorTable& priors, const SideSetup& a, const SideSetup& b,
                               std::uint64_t n, std::uint64_t seed,
                               const MatchSettings& settings = {});

struct HeadToHead {
  std::vector<std::string> teams;
  /// Ordered pairs (i, j), i != j, row-major.
  std::vector<MatchEstimate> entries;
  std::uint64_t seed = 0;

  const MatchEstimate& at(std::string_view a, std::string_view b) const;
};

/// Seed used for the ordered pair (a, b) of a head-to-head run.
std::uint64_t pair_seed(std::uint64_t seed, std::string_view a, std::string_view b) noexcept;

/// Every ordered pair of `team_ids` under one scheme. Needs at least two teams.
HeadToHead head_to_head_matrix(const PriorTable& priors, const std::vector<std::string>& team_ids,
                               const SelectionScheme& scheme, std::uint64_t n, std::uint64_t seed,
                               const MatchSettings& settings = {});

}  // namespace wicketsim
