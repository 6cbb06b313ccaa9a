#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wicketsim {

/// Player role. Each role is one sampling stratum.
enum class Role { FastBowler, Spinner, AllRounderFast, AllRounderSpinner, Batsman, WicketKeeper };

inline constexpr std::size_t kRoleCount = 6;
inline constexpr std::array<Role, kRoleCount> kAllRoles = {
    Role::FastBowler, Role::Spinner,  Role::AllRounderFast,
    Role::AllRounderSpinner, Role::Batsman, Role::WicketKeeper};

/// File code: fast, spin, ar_fast, ar_spin, bat, wk.
std::string_view role_code(Role r) noexcept;
std::optional<Role> parse_role(std::string_view code) noexcept;

/// Where a batting record comes from, best first.
enum class SourceTier { International, Domestic, FirstClass, ReserveTeam, Under19, LeagueDefault };

inline constexpr std::size_t kTierCount = 6;

/// File code: international, domestic, first_class, reserve, u19, default.
std::string_view tier_code(SourceTier t) noexcept;
std::optional<SourceTier> parse_tier(std::string_view code) noexcept;

/// Opponent id of an all-opponents aggregate row.
inline constexpr std::string_view kAllOpponents = "*";

struct Player {
  std::string id;
  std::string name;
  std::string team_id;
  Role role = Role::Batsman;
  bool overseas = false;

  friend bool operator==(const Player&, const Player&) = default;
};

struct Team {
  std::string id;
  std::string name;
  std::vector<Player> roster;

  std::size_t stratum_size(Role r) const noexcept;

  friend bool operator==(const Team&, const Team&) = default;
};

/// One player's batting line against one opposing team (or "*").
struct MatchupRecord {
  std::string player_id;
  std::string opponent_id;
  double average = 0.0;
  int highest = 0;
  int innings = 0;
  SourceTier tier = SourceTier::International;

  friend bool operator==(const MatchupRecord&, const MatchupRecord&) = default;
};

struct RoleDefault {
  double average = 0.0;
  int highest = 0;

  friend bool operator==(const RoleDefault&, const RoleDefault&) = default;
};

using LeagueDefaults = std::map<Role, RoleDefault>;

/// Immutable, validated collection of teams, batting records and role defaults.
///
/// A dataset may be built without teams (stats-only), in which case players
/// are not cross-checked and only opponent-specific fitting is possible.
class Dataset {
 public:
  Dataset() = default;

  /// Validates and indexes. Throws ValidationError naming the offending record.
  static Dataset build(std::vector<Team> teams, std::vector<MatchupRecord> records,
                       LeagueDefaults defaults);

  const std::vector<Team>& teams() const noexcept { return teams_; }
  const std::vector<MatchupRecord>& records() const noexcept { return records_; }
  const LeagueDefaults& defaults() const noexcept { return defaults_; }

  const Team* find_team(std::string_view id) const;
  const Team& team(std::string_view id) const;
  std::optional<std::size_t> team_index(std::string_view id) const;

  const Player* find_player(std::string_view id) const;

  /// Record indices for a player, in file order.
  const std::vector<std::size_t>& records_for(std::string_view player_id) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.teams_ == b.teams_ && a.records_ == b.records_ && a.defaults_ == b.defaults_;
  }

 private:
  std::vector<Team> teams_;
  std::vector<MatchupRecord> records_;
  LeagueDefaults defaults_;
  std::unordered_map<std::string, std::size_t> team_index_;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> player_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> records_by_player_;
};

// Parsers. `source` names the input in error messages.
std::vector<MatchupRecord> parse_stats_csv(std::string_view text, const std::string& source);
std::vector<Team> parse_teams_json(std::string_view text, const std::string& source);
LeagueDefaults parse_defaults_json(std::string_view text, const std::string& source);

std::string stats_to_csv(const std::vector<MatchupRecord>& records);
std::string teams_to_json(const std::vector<Team>& teams);
std::string defaults_to_json(const LeagueDefaults& defaults);

/// Loads and validates a dataset. `teams_path` and `defaults_path` may be
/// empty for a stats-only dataset. An empty stats file fails with "no records".
Dataset load_dataset(const std::filesystem::path& stats_path,
                     const std::filesystem::path& teams_path,
                     const std::filesystem::path& defaults_path = {});

/// Best available record for (player, opponent team).
///
/// Ladder: opponent-specific rows by tier, then the player's "*" rows by
/// tier, then player-level default-tier rows, then the league default for the
/// player's role (returned with opponent "*", innings 0, tier LeagueDefault).
/// Throws ValidationError only when the player is unknown or no default
/// exists for the role, both of which a validated dataset with teams rules out.
MatchupRecord resolve_matchup(std::string_view player_id, std::string_view opponent_id,
                              const Dataset& dataset);

std::string read_file(const std::filesystem::path& path);

}  // namespace wicketsim
