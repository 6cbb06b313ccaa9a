#include "wicketsim/roster.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "text.hpp"
#include "wicketsim/error.hpp"

namespace wicketsim {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleCodes = {"fast", "spin", "ar_fast",
                                                                  "ar_spin", "bat", "wk"};
constexpr std::array<std::string_view, kTierCount> kTierCodes = {
    "international", "domestic", "first_class", "reserve", "u19", "default"};

constexpr std::string_view kStatsHeader = "player_id,opponent_id,average,highest,innings,tier";

}  // namespace

std::string_view role_code(Role r) noexcept { return kRoleCodes[static_cast<std::size_t>(r)]; }

std::optional<Role> parse_role(std::string_view code) noexcept {
  for (std::size_t i = 0; i < kRoleCount; ++i) {
    if (kRoleCodes[i] == code) return static_cast<Role>(i);
  }
  return std::nullopt;
}

std::string_view tier_code(SourceTier t) noexcept {
  return kTierCodes[static_cast<std::size_t>(t)];
}

std::optional<SourceTier> parse_tier(std::string_view code) noexcept {
  for (std::size_t i = 0; i < kTierCount; ++i) {
    if (kTierCodes[i] == code) return static_cast<SourceTier>(i);
  }
  return std::nullopt;
}

std::size_t Team::stratum_size(Role r) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(roster.begin(), roster.end(), [r](const Player& p) { return p.role == r; }));
}

namespace {

std::string describe(const MatchupRecord& r) {
  return "record (" + r.player_id + ", " + r.opponent_id + ", " + std::string(tier_code(r.tier)) +
         ")";
}

void validate_record(const MatchupRecord& r) {
  if (r.player_id.empty() || r.opponent_id.empty()) {
    throw ValidationError(describe(r) + ": empty player or opponent id");
  }
  if (!std::isfinite(r.average) || r.average < 0.0) {
    throw ValidationError(describe(r) + ": average must be finite and nonnegative");
  }
  if (r.highest < 0 || r.innings < 0) {
    throw ValidationError(describe(r) + ": highest and innings must be nonnegative");
  }
  if (static_cast<double>(r.highest) < r.average) {
    throw ValidationError(describe(r) + ": highest score " + std::to_string(r.highest) +
                          " is below average " + format_double(r.average));
  }
  if (r.innings == 0 && r.tier != SourceTier::LeagueDefault) {
    throw ValidationError(describe(r) + ": zero innings is only allowed for default-tier rows");
  }
}

}  // namespace

Dataset Dataset::build(std::vector<Team> teams, std::vector<MatchupRecord> records,
                       LeagueDefaults defaults) {
  Dataset d;
  for (std::size_t t = 0; t < teams.size(); ++t) {
    Team& team = teams[t];
    if (team.id.empty() || team.id == kAllOpponents) {
      throw ValidationError("team " + std::to_string(t) + ": invalid id '" + team.id + "'");
    }
    if (!d.team_index_.emplace(team.id, t).second) {
      throw ValidationError("duplicate team id '" + team.id + "'");
    }
    if (team.roster.size() < 11) {
      throw ValidationError("team '" + team.id + "' has " + std::to_string(team.roster.size()) +
                            " players; at least 11 are required");
    }
    for (std::size_t p = 0; p < team.roster.size(); ++p) {
      Player& player = team.roster[p];
      if (player.id.empty()) throw ValidationError("team '" + team.id + "': player with empty id");
      if (player.team_id.empty()) player.team_id = team.id;
      if (player.team_id != team.id) {
        throw ValidationError("player '" + player.id + "' lists team '" + player.team_id +
                              "' but appears on '" + team.id + "'");
      }
      if (!d.player_index_.emplace(player.id, std::pair{t, p}).second) {
        throw ValidationError("duplicate player id '" + player.id + "'");
      }
      if (!defaults.contains(player.role)) {
        throw ValidationError("no league default for role '" + std::string(role_code(player.role)) +
                              "' (needed by player '" + player.id + "')");
      }
    }
  }
  for (const auto& [role, def] : defaults) {
    if (!std::isfinite(def.average) || def.average < 0.0 || def.highest < 0 ||
        static_cast<double>(def.highest) < def.average) {
      throw ValidationError("league default for role '" + std::string(role_code(role)) +
                            "' needs 0 <= average <= highest");
    }
  }

  const bool has_teams = !teams.empty();
  std::set<std::tuple<std::string, std::string, SourceTier>> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const MatchupRecord& r = records[i];
    validate_record(r);
    if (!seen.emplace(r.player_id, r.opponent_id, r.tier).second) {
      throw ValidationError(describe(r) + ": duplicate (player, opponent, tier) row");
    }
    if (has_teams) {
      if (!d.player_index_.contains(r.player_id)) {
        throw ValidationError(describe(r) + ": unknown player '" + r.player_id + "'");
      }
      if (r.opponent_id != kAllOpponents && !d.team_index_.contains(r.opponent_id)) {
        throw ValidationError(describe(r) + ": unknown opponent team '" + r.opponent_id + "'");
      }
    }
    d.records_by_player_[r.player_id].push_back(i);
  }

  d.teams_ = std::move(teams);
  d.records_ = std::move(records);
  d.defaults_ = std::move(defaults);
  return d;
}

const Team* Dataset::find_team(std::string_view id) const {
  auto it = team_index_.find(std::string(id));
  return it == team_index_.end() ? nullptr : &teams_[it->second];
}

const Team& Dataset::team(std::string_view id) const {
  if (const Team* t = find_team(id)) return *t;
  throw ValidationError("unknown team '" + std::string(id) + "'");
}

std::optional<std::size_t> Dataset::team_index(std::string_view id) const {
  auto it = team_index_.find(std::string(id));
  if (it == team_index_.end()) return std::nullopt;
  return it->second;
}

const Player* Dataset::find_player(std::string_view id) const {
  auto it = player_index_.find(std::string(id));
  if (it == player_index_.end()) return nullptr;
  return &teams_[it->second.first].roster[it->second.second];
}

const std::vector<std::size_t>& Dataset::records_for(std::string_view player_id) const {
  static const std::vector<std::size_t> kNone;
  auto it = records_by_player_.find(std::string(player_id));
  return it == records_by_player_.end() ? kNone : it->second;
}

// ---------------------------------------------------------------------------
// Parsing

std::vector<MatchupRecord> parse_stats_csv(std::string_view text, const std::string& source) {
  std::vector<MatchupRecord> records;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
      if (line != kStatsHeader) {
        throw ParseError(source, line_no,
                         "expected header '" + std::string(kStatsHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 6) {
      throw ParseError(source, line_no,
                       "expected 6 fields, found " + std::to_string(fields.size()));
    }
    MatchupRecord r;
    r.player_id = std::string(trim(fields[0]));
    r.opponent_id = std::string(trim(fields[1]));
    auto average = parse_number<double>(trim(fields[2]));
    auto highest = parse_number<int>(trim(fields[3]));
    auto innings = parse_number<int>(trim(fields[4]));
    auto tier = parse_tier(trim(fields[5]));
    if (!average) throw ParseError(source, line_no, "bad average '" + std::string(fields[2]) + "'");
    if (!highest) throw ParseError(source, line_no, "bad highest '" + std::string(fields[3]) + "'");
    if (!innings) throw ParseError(source, line_no, "bad innings '" + std::string(fields[4]) + "'");
    if (!tier) throw ParseError(source, line_no, "unknown tier '" + std::string(fields[5]) + "'");
    r.average = *average;
    r.highest = *highest;
    r.innings = *innings;
    r.tier = *tier;
    try {
      validate_record(r);
    } catch (const ValidationError& e) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  if (records.empty()) throw ParseError(source, 0, "no records");
  return records;
}

namespace {

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
}

}  // namespace

std::vector<Team> parse_teams_json(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_array()) throw ParseError(source, 0, "teams file must be a JSON array");
  std::vector<Team> teams;
  try {
    for (const auto& jt : doc) {
      Team t;
      t.id = jt.at("id").get<std::string>();
      t.name = jt.value("name", t.id);
      for (const auto& jp : jt.at("players")) {
        Player p;
        p.id = jp.at("id").get<std::string>();
        p.name = jp.value("name", p.id);
        p.team_id = t.id;
        const auto code = jp.at("role").get<std::string>();
        const auto role = parse_role(code);
        if (!role) throw ParseError(source, 0, "player '" + p.id + "': unknown role '" + code + "'");
        p.role = *role;
        p.overseas = jp.value("overseas", false);
        t.roster.push_back(std::move(p));
      }
      teams.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return teams;
}

LeagueDefaults parse_defaults_json(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) throw ParseError(source, 0, "defaults file must be a JSON object");
  LeagueDefaults out;
  try {
    for (const auto& [code, entry] : doc.items()) {
      const auto role = parse_role(code);
      if (!role) throw ParseError(source, 0, "unknown role '" + code + "'");
      out[*role] = RoleDefault{entry.at("average").get<double>(), entry.at("highest").get<int>()};
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return out;
}

std::string stats_to_csv(const std::vector<MatchupRecord>& records) {
  std::string out(kStatsHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.player_id + ',' + r.opponent_id + ',' + format_double(r.average) + ',' +
           std::to_string(r.highest) + ',' + std::to_string(r.innings) + ',' +
           std::string(tier_code(r.tier)) + '\n';
  }
  return out;
}

std::string teams_to_json(const std::vector<Team>& teams) {
  json doc = json::array();
  for (const auto& t : teams) {
    json players = json::array();
    for (const auto& p : t.roster) {
      players.push_back(
          {{"id", p.id}, {"name", p.name}, {"role", role_code(p.role)}, {"overseas", p.overseas}});
    }
    doc.push_back({{"id", t.id}, {"name", t.name}, {"players", std::move(players)}});
  }
  return doc.dump(2) + '\n';
}

std::string defaults_to_json(const LeagueDefaults& defaults) {
  json doc = json::object();
  for (const auto& [role, def] : defaults) {
    doc[std::string(role_code(role))] = {{"average", def.average}, {"highest", def.highest}};
  }
  return doc.dump(2) + '\n';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dataset load_dataset(const std::filesystem::path& stats_path,
                     const std::filesystem::path& teams_path,
                     const std::filesystem::path& defaults_path) {
  auto records = parse_stats_csv(read_file(stats_path), stats_path.string());
  std::vector<Team> teams;
  if (!teams_path.empty()) teams = parse_teams_json(read_file(teams_path), teams_path.string());
  LeagueDefaults defaults;
  if (!defaults_path.empty()) {
    defaults = parse_defaults_json(read_file(defaults_path), defaults_path.string());
  }
  return Dataset::build(std::move(teams), std::move(records), std::move(defaults));
}

// ---------------------------------------------------------------------------
// Resolution

MatchupRecord resolve_matchup(std::string_view player_id, std::string_view opponent_id,
                              const Dataset& dataset) {
  const auto& indices = dataset.records_for(player_id);
  const MatchupRecord* best = nullptr;
  // Lower rank wins: (specific, tier) < (all-opponents, tier) < default rows.
  auto rank = [&](const MatchupRecord& r) {
    const bool specific = r.opponent_id == opponent_id;
    const int tier = static_cast<int>(r.tier);
    if (r.tier == SourceTier::LeagueDefault) return 2 * static_cast<int>(kTierCount) + (specific ? 0 : 1);
    return (specific ? 0 : static_cast<int>(kTierCount)) + tier;
  };
  for (std::size_t i : indices) {
    const MatchupRecord& r = dataset.records()[i];
    if (r.opponent_id != opponent_id && r.opponent_id != kAllOpponents) continue;
    if (best == nullptr || rank(r) < rank(*best)) best = &r;
  }
  if (best != nullptr) return *best;

  const Player* player = dataset.find_player(player_id);
  if (player == nullptr) {
    throw ValidationError("no records for unknown player '" + std::string(player_id) + "'");
  }
  auto it = dataset.defaults().find(player->role);
  if (it == dataset.defaults().end()) {
    throw ValidationError("no league default for role '" + std::string(role_code(player->role)) +
                          "'");
  }
  return MatchupRecord{std::string(player_id), std::string(kAllOpponents), it->second.average,
                       it->second.highest, 0, SourceTier::LeagueDefault};
}

}  // namespace wicketsim
