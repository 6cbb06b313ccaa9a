#include "wicketsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "json.hpp"
#include "text.hpp"
#include "wicketsim/error.hpp"

namespace wicketsim {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json manifest_object(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : m.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  if (m.seed) j["seed"] = *m.seed;
  if (m.sims) j["sims"] = *m.sims;
  j["version"] = m.version;
  if (m.wall_time_ms) j["wall_time_ms"] = *m.wall_time_ms;
  return j;
}

std::string csv_preamble(const RunManifest* m) {
  if (m == nullptr) return {};
  return "# manifest " + manifest_object(*m).dump() + '\n';
}

}  // namespace

std::string manifest_json(const RunManifest& m) { return manifest_object(m).dump(2); }

std::string format_percent(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", p * 100.0);
  return buf;
}

// ---------------------------------------------------------------------------
// Head-to-head

std::string head_to_head_json(const HeadToHead& h, const RunManifest* manifest) {
  ordered_json j;
  j["teams"] = h.teams;
  j["seed"] = h.seed;
  ordered_json entries = ordered_json::array();
  for (const auto& e : h.entries) {
    entries.push_back({{"a", e.team_a},
                       {"b", e.team_b},
                       {"p_a", e.p_a},
                       {"p_b", e.p_b},
                       {"p_draw", e.p_draw},
                       {"n", e.n},
                       {"seed", e.seed},
                       {"wins_a", e.wins_a},
                       {"wins_b", e.wins_b},
                       {"draws", e.draws},
                       {"mean_score_a", e.mean_score_a},
                       {"mean_score_b", e.mean_score_b}});
  }
  j["entries"] = std::move(entries);
  if (manifest) j["manifest"] = manifest_object(*manifest);
  return j.dump(2) + '\n';
}

std::string head_to_head_csv(const HeadToHead& h, const RunManifest* manifest) {
  std::string out = csv_preamble(manifest);
  out += "a,b,p_a,p_b,p_draw,n,seed,mean_score_a,mean_score_b\n";
  for (const auto& e : h.entries) {
    out += e.team_a + ',' + e.team_b + ',' + format_double(e.p_a) + ',' + format_double(e.p_b) +
           ',' + format_double(e.p_draw) + ',' + std::to_string(e.n) + ',' +
           std::to_string(e.seed) + ',' + format_double(e.mean_score_a) + ',' +
           format_double(e.mean_score_b) + '\n';
  }
  return out;
}

std::string head_to_head_text(const HeadToHead& h) {
  std::size_t width = 6;
  for (const auto& t : h.teams) width = std::max(width, t.size() + 1);
  auto pad = [&](const std::string& s) {
    return s + std::string(width > s.size() ? width - s.size() : 1, ' ');
  };
  std::string out = pad("win\\loss");
  for (const auto& t : h.teams) out += pad(t);
  out += '\n';
  for (const auto& a : h.teams) {
    out += pad(a);
    for (const auto& b : h.teams) out += pad(a == b ? "-" : format_percent(h.at(a, b).p_a));
    out += '\n';
  }
  return out;
}

HeadToHead parse_head_to_head_json(std::string_view text, const std::string& source) {
  HeadToHead h;
  try {
    const json j = json::parse(text);
    h.teams = j.at("teams").get<std::vector<std::string>>();
    h.seed = j.value("seed", std::uint64_t{0});
    for (const auto& je : j.at("entries")) {
      MatchEstimate e;
      e.team_a = je.at("a").get<std::string>();
      e.team_b = je.at("b").get<std::string>();
      e.p_a = je.at("p_a").get<double>();
      e.p_b = je.at("p_b").get<double>();
      e.p_draw = je.at("p_draw").get<double>();
      e.n = je.at("n").get<std::uint64_t>();
      e.seed = je.at("seed").get<std::uint64_t>();
      e.wins_a = je.value("wins_a", static_cast<std::uint64_t>(std::llround(e.p_a * e.n)));
      e.wins_b = je.value("wins_b", static_cast<std::uint64_t>(std::llround(e.p_b * e.n)));
      e.draws = je.value("draws", static_cast<std::uint64_t>(std::llround(e.p_draw * e.n)));
      e.mean_score_a = je.value("mean_score_a", 0.0);
      e.mean_score_b = je.value("mean_score_b", 0.0);
      h.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return h;
}

// ---------------------------------------------------------------------------
// Standings

std::string standings_json(const StandingsDistribution& s, const RunManifest* manifest) {
  ordered_json j;
  j["teams"] = s.teams;
  j["sims"] = s.sims;
  j["seed"] = s.seed;
  ordered_json positions = ordered_json::array();
  ordered_json champion = ordered_json::object();
  ordered_json semifinalist = ordered_json::object();
  ordered_json conditional = ordered_json::object();
  for (std::size_t t = 0; t < s.teams.size(); ++t) {
    ordered_json row = ordered_json::array();
    for (std::size_t p = 0; p < s.teams.size(); ++p) row.push_back(s.position(t, p));
    positions.push_back(std::move(row));
    champion[s.teams[t]] = s.champion(t);
    semifinalist[s.teams[t]] = s.semifinalist(t);
    conditional[s.teams[t]] = s.conditional_champion(t);
  }
  j["positions"] = std::move(positions);
  j["champion"] = std::move(champion);
  j["semifinalist"] = std::move(semifinalist);
  j["conditional_champion"] = std::move(conditional);
  const auto& d = s.diagnostics;
  j["diagnostics"] = {{"league_games_per_sim", d.league_games_per_sim},
                      {"min_total_points", d.min_total_points},
                      {"max_total_points", d.max_total_points},
                      {"max_team_points", d.max_team_points},
                      {"drawn_games", d.drawn_games},
                      {"resolved_draws", d.resolved_draws}};
  if (manifest) j["manifest"] = manifest_object(*manifest);
  return j.dump(2) + '\n';
}

std::string standings_csv(const StandingsDistribution& s, const RunManifest* manifest) {
  std::string out = csv_preamble(manifest);
  out += "team";
  for (std::size_t p = 0; p < s.teams.size(); ++p) out += ",pos" + std::to_string(p + 1);
  out += ",champion,semifinalist,conditional_champion\n";
  for (std::size_t t = 0; t < s.teams.size(); ++t) {
    out += s.teams[t];
    for (std::size_t p = 0; p < s.teams.size(); ++p) out += ',' + format_double(s.position(t, p));
    out += ',' + format_double(s.champion(t)) + ',' + format_double(s.semifinalist(t)) + ',' +
           format_double(s.conditional_champion(t)) + '\n';
  }
  return out;
}

std::string standings_text(const StandingsDistribution& s) {
  std::size_t width = 6;
  for (const auto& t : s.teams) width = std::max(width, t.size() + 1);
  auto pad = [&](const std::string& x, std::size_t w) {
    return x + std::string(w > x.size() ? w - x.size() : 1, ' ');
  };
  std::string out = pad("team", width);
  for (std::size_t p = 0; p < s.teams.size(); ++p) out += pad(std::to_string(p + 1), 6);
  out += pad("champ", 7) + pad("semi", 7) + "champ|semi\n";
  for (std::size_t t = 0; t < s.teams.size(); ++t) {
    out += pad(s.teams[t], width);
    for (std::size_t p = 0; p < s.teams.size(); ++p) out += pad(format_percent(s.position(t, p)), 6);
    out += pad(format_percent(s.champion(t)), 7) + pad(format_percent(s.semifinalist(t)), 7) +
           format_percent(s.conditional_champion(t)) + '\n';
  }
  return out;
}

StandingsDistribution parse_standings_json(std::string_view text, const std::string& source) {
  StandingsDistribution s;
  try {
    const json j = json::parse(text);
    s.teams = j.at("teams").get<std::vector<std::string>>();
    s.sims = j.at("sims").get<std::uint64_t>();
    s.seed = j.value("seed", std::uint64_t{0});
    const double sims = static_cast<double>(s.sims);
    auto count = [&](double p) { return static_cast<std::uint64_t>(std::llround(p * sims)); };
    for (const auto& row : j.at("positions")) {
      std::vector<std::uint64_t> counts;
      for (const auto& p : row) counts.push_back(count(p.get<double>()));
      s.position_counts.push_back(std::move(counts));
    }
    for (const auto& t : s.teams) {
      s.champion_counts.push_back(count(j.at("champion").at(t).get<double>()));
      s.semifinalist_counts.push_back(count(j.at("semifinalist").at(t).get<double>()));
    }
    if (j.contains("diagnostics")) {
      const auto& d = j.at("diagnostics");
      s.diagnostics.league_games_per_sim = d.value("league_games_per_sim", std::size_t{0});
      s.diagnostics.min_total_points = d.value("min_total_points", 0);
      s.diagnostics.max_total_points = d.value("max_total_points", 0);
      s.diagnostics.max_team_points = d.value("max_team_points", 0);
      s.diagnostics.drawn_games = d.value("drawn_games", std::uint64_t{0});
      s.diagnostics.resolved_draws = d.value("resolved_draws", std::uint64_t{0});
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Fitted parameters

std::vector<ParamsRow> fit_params(const Dataset& dataset, const FitOptions& options) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!dataset.teams().empty()) {
    for (const auto& team : dataset.teams()) {
      for (const auto& player : team.roster) {
        for (const auto& opp : dataset.teams()) {
          if (opp.id != team.id) pairs.emplace_back(player.id, opp.id);
        }
      }
    }
  } else {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : dataset.records()) {
      if (seen.emplace(r.player_id, r.opponent_id).second) pairs.emplace_back(r.player_id, r.opponent_id);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  std::map<std::pair<double, int>, FitResult> cache;
  std::vector<ParamsRow> rows;
  rows.reserve(pairs.size());
  for (const auto& [player, opponent] : pairs) {
    const MatchupRecord rec = resolve_matchup(player, opponent, dataset);
    auto it = cache.find({rec.average, rec.highest});
    if (it == cache.end()) {
      it = cache.emplace(std::pair{rec.average, rec.highest},
                         fit_gamma(rec.average, rec.highest, options)).first;
    }
    std::string flags = it->second.flag_string();
    if (rec.opponent_id == kAllOpponents && opponent != kAllOpponents) {
      flags += flags.empty() ? "all-opponents" : "|all-opponents";
    }
    rows.push_back(ParamsRow{player, opponent, it->second.params, rec.tier, std::move(flags)});
  }
  return rows;
}

std::string params_csv(const std::vector<ParamsRow>& rows, const RunManifest* manifest) {
  std::string out = csv_preamble(manifest);
  out += "player_id,opponent_id,alpha,beta,tier,flags\n";
  for (const auto& r : rows) {
    out += r.player_id + ',' + r.opponent_id + ',' + format_double(r.params.alpha) + ',' +
           format_double(r.params.beta) + ',' + std::string(tier_code(r.tier)) + ',' + r.flags +
           '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density tables

DensityTable density_table(const GammaParams& params, int highest, int count) {
  require_valid(params);
  if (count < 2) throw ValidationError("density table needs at least two points");
  DensityTable t;
  t.params = params;
  t.highest = highest;
  const double upper = std::max(1.5 * static_cast<double>(highest), gamma_quantile(0.999, params));
  t.points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = upper * static_cast<double>(i) / static_cast<double>(count - 1);
    t.points.emplace_back(x, gamma_pdf(x, params));
  }
  return t;
}

std::string density_csv(const std::vector<DensityTable>& tables, const RunManifest* manifest) {
  std::string out = csv_preamble(manifest);
  out += "player_id,opponent_id,alpha,beta,x,pdf\n";
  for (const auto& t : tables) {
    const std::string prefix = t.player_id + ',' + t.opponent_id + ',' +
                               format_double(t.params.alpha) + ',' + format_double(t.params.beta) + ',';
    for (const auto& [x, y] : t.points) out += prefix + format_double(x) + ',' + format_double(y) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "a,b,predicted_pct,actual_pct,ci_lo_pct,ci_hi_pct,inside,flag\n";
  auto pct = [](const std::optional<double>& v) {
    return v ? format_percent(*v) : std::string();
  };
  for (const auto& r : rows) {
    out += r.a + ',' + r.b + ',' + format_percent(r.predicted) + ',' + pct(r.actual) + ',' +
           (r.interval ? format_percent(r.interval->lo) : "") + ',' +
           (r.interval ? format_percent(r.interval->hi) : "") + ',' +
           (r.inside ? (*r.inside ? "yes" : "no") : "") + ',' + r.flag + '\n';
  }
  return out;
}

std::vector<ActualRecord> parse_actuals_csv(std::string_view text, const std::string& source) {
  std::vector<ActualRecord> out;
  std::size_t line_no = 0;
  bool header = false;
  bool has_pct = false;
  for (auto line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, ',');
    if (!header) {
      if (line != "a,b,wins,games" && line != "a,b,wins,games,pct") {
        throw ParseError(source, line_no, "expected header 'a,b,wins,games[,pct]'");
      }
      has_pct = fields.size() == 5;
      header = true;
      continue;
    }
    if (fields.size() != (has_pct ? 5u : 4u)) throw ParseError(source, line_no, "wrong field count");
    ActualRecord r;
    r.a = std::string(trim(fields[0]));
    r.b = std::string(trim(fields[1]));
    const auto wins = trim(fields[2]).empty() ? std::optional<double>(0.0) : parse_number<double>(trim(fields[2]));
    const auto games = parse_number<int>(trim(fields[3]));
    if (!wins || !games || *games < 0 || *wins < 0 || *wins > *games) {
      throw ParseError(source, line_no, "bad wins/games");
    }
    r.wins = *wins;
    r.games = *games;
    if (has_pct && !trim(fields[4]).empty()) {
      const auto pct = parse_number<double>(trim(fields[4]));
      if (!pct || *pct < 0.0 || *pct > 100.0) throw ParseError(source, line_no, "bad pct");
      r.reported_fraction = *pct / 100.0;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace wicketsim
