#include "wicketsim/api.hpp"

#include <array>
#include <cmath>
#include <random>

#include "json.hpp"
#include "json_schema.hpp"
#include "wicketsim/error.hpp"

namespace wicketsim {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

OddsQuote quote_odds(double p, double margin) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) throw ValidationError("p must lie in [0, 1]");
  if (!std::isfinite(margin) || margin <= 0.0) throw ValidationError("margin must be positive");
  OddsQuote q{p, margin, std::nullopt, false};
  if (p == 0.0) {
    q.no_price = true;
  } else {
    q.decimal_odds = margin / p;
  }
  return q;
}

namespace {

ApiResponse reply(int status, const ordered_json& body) { return ApiResponse{status, body.dump()}; }

ApiResponse error(int status, const std::string& message) {
  return reply(status, ordered_json{{"error", message}});
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

Api::Api(Dataset dataset, SelectionScheme scheme, FitOptions fit, ApiOptions options)
    : dataset_(std::move(dataset)),
      scheme_(std::move(scheme)),
      fit_(fit),
      options_(std::move(options)),
      priors_(dataset_, fit_) {
  scheme_.validate();
}

ApiResponse Api::handle(std::string_view method, std::string_view path,
                        std::string_view body) const {
  try {
    if (method == "GET") {
      if (path == "/health") return reply(200, ordered_json{{"status", "ok"}});
      if (path == "/teams") return teams();
      constexpr std::string_view prefix = "/teams/";
      constexpr std::string_view suffix = "/players";
      if (path.starts_with(prefix) && path.ends_with(suffix) &&
          path.size() > prefix.size() + suffix.size()) {
        return players(path.substr(prefix.size(), path.size() - prefix.size() - suffix.size()));
      }
    } else if (method == "POST") {
      if (path == "/simulate/whatif") return whatif(body);
      if (path == "/odds") return odds(body);
    }
    return error(404, "no route for " + std::string(method) + " " + std::string(path));
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

ApiResponse Api::teams() const {
  ordered_json list = ordered_json::array();
  for (const auto& t : dataset_.teams()) {
    list.push_back({{"id", t.id}, {"name", t.name}, {"players", t.roster.size()}});
  }
  return reply(200, ordered_json{{"teams", std::move(list)},
                                 {"scheme", ordered_json::parse(detail::scheme_to_json(scheme_).dump())},
                                 {"max_sims", options_.max_sims}});
}

ApiResponse Api::players(std::string_view team_id) const {
  const Team* team = dataset_.find_team(team_id);
  if (team == nullptr) return error(404, "unknown team '" + std::string(team_id) + "'");
  ordered_json list = ordered_json::array();
  for (const auto& p : team->roster) {
    std::array<int, kTierCount> counts{};
    for (const auto& opp : dataset_.teams()) {
      if (opp.id == team->id) continue;
      ++counts[static_cast<std::size_t>(resolve_matchup(p.id, opp.id, dataset_).tier)];
    }
    ordered_json tiers = ordered_json::object();
    for (std::size_t k = 0; k < kTierCount; ++k) {
      if (counts[k] > 0) tiers[std::string(tier_code(static_cast<SourceTier>(k)))] = counts[k];
    }
    list.push_back({{"id", p.id},
                    {"name", p.name},
                    {"role", role_code(p.role)},
                    {"overseas", p.overseas},
                    {"tiers", std::move(tiers)}});
  }
  return reply(200, ordered_json{{"team", team->id}, {"players", std::move(list)}});
}

ApiResponse Api::whatif(std::string_view body) const {
  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error& e) {
    return error(400, std::string("malformed JSON: ") + e.what());
  }

  SideSetup a, b;
  MatchSettings settings;
  std::uint64_t sims = 0;
  std::uint64_t seed = 0;
  try {
    if (!req.is_object()) return error(400, "request must be a JSON object");
    a.team_id = req.at("team_a").get<std::string>();
    b.team_id = req.at("team_b").get<std::string>();
    a.constraint = detail::constraint_from_json(req.value("constraint_a", json()));
    b.constraint = detail::constraint_from_json(req.value("constraint_b", json()));
    settings.fixed_xi = req.value("fixed_xi", false);
    settings.common_random_numbers = req.value("common_random_numbers", false);
    settings.workers = options_.workers;
    // nlohmann converts -1 to 2^64 - 1 without complaint, so check the sign first.
    auto unsigned_field = [&](const char* key) {
      const json& v = req.at(key);
      if (!v.is_number_unsigned()) {
        throw ValidationError(std::string(key) + " must be a nonnegative integer");
      }
      return v.get<std::uint64_t>();
    };
    sims = req.contains("sims") ? unsigned_field("sims") : std::uint64_t{10000};
    seed = (req.contains("seed") && !req.at("seed").is_null()) ? unsigned_field("seed")
                                                               : fresh_seed();
  } catch (const json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  } catch (const ValidationError& e) {
    return error(400, e.what());
  }
  if (sims < 1 || sims > options_.max_sims) {
    return error(400, "sims must lie in [1, " + std::to_string(options_.max_sims) + "]");
  }
  for (const auto* id : {&a.team_id, &b.team_id}) {
    if (!dataset_.find_team(*id)) return error(400, "unknown team '" + *id + "'");
  }
  a.scheme = scheme_;
  b.scheme = scheme_;

  // Feasibility first, so a 422 never runs any part of a simulation.
  for (const auto* side : {&a, &b}) {
    try {
      check_feasible(dataset_.team(side->team_id), side->scheme, side->constraint);
    } catch (const InfeasibleError& e) {
      return reply(422, ordered_json{{"error", e.what()},
                                     {"team", side->team_id},
                                     {"stratum", e.stratum()}});
    } catch (const ValidationError& e) {
      return reply(422, ordered_json{{"error", e.what()}, {"team", side->team_id}, {"stratum", nullptr}});
    }
  }

  const MatchEstimate est = estimate_matchup(priors_, a, b, sims, seed, settings);

  auto summaries = [&](const SideSetup& side, const SideSetup& opp) {
    const Team& team = dataset_.team(side.team_id);
    const std::size_t t = *dataset_.team_index(side.team_id);
    const std::size_t o = *dataset_.team_index(opp.team_id);
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < team.roster.size(); ++i) {
      const Player& p = team.roster[i];
      const PriorEntry& prior = priors_.get(t, i, o);
      list.push_back({{"id", p.id},
                      {"name", p.name},
                      {"role", role_code(p.role)},
                      {"overseas", p.overseas},
                      {"locked", side.constraint.locked.contains(p.id)},
                      {"excluded", side.constraint.excluded.contains(p.id)},
                      {"prior_mean", prior.params.mean()},
                      {"prior_sd", prior.params.sd()},
                      {"alpha", prior.params.alpha},
                      {"beta", prior.params.beta},
                      {"tier", tier_code(prior.source.tier)}});
    }
    return list;
  };

  ordered_json out;
  out["seed"] = seed;
  out["estimate"] = {{"a", est.team_a},         {"b", est.team_b},
                     {"p_a", est.p_a},          {"p_b", est.p_b},
                     {"p_draw", est.p_draw},    {"n", est.n},
                     {"seed", est.seed},        {"wins_a", est.wins_a},
                     {"wins_b", est.wins_b},    {"draws", est.draws},
                     {"mean_score_a", est.mean_score_a},
                     {"mean_score_b", est.mean_score_b}};
  out["fixed_xi"] = settings.fixed_xi;
  out["common_random_numbers"] = settings.common_random_numbers;
  out["players_a"] = summaries(a, b);
  out["players_b"] = summaries(b, a);
  return reply(200, out);
}

ApiResponse Api::odds(std::string_view body) const {
  double p = 0.0, margin = 1.0;
  try {
    const json req = json::parse(body);
    p = req.at("p").get<double>();
    margin = req.value("margin", 1.0);
  } catch (const json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  }
  OddsQuote q;
  try {
    q = quote_odds(p, margin);
  } catch (const ValidationError& e) {
    return error(400, e.what());
  }
  ordered_json out{{"p", q.p}, {"margin", q.margin}};
  out["decimal_odds"] = q.decimal_odds ? ordered_json(*q.decimal_odds) : ordered_json(nullptr);
  out["flags"] = q.no_price ? ordered_json::array({"no-price"}) : ordered_json::array();
  return reply(200, out);
}

}  // namespace wicketsim
