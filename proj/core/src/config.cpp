#include "wicketsim/config.hpp"

#include <algorithm>

#include "json_schema.hpp"
#include "wicketsim/error.hpp"

namespace wicketsim {

using nlohmann::json;

namespace detail {

SelectionScheme scheme_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("scheme must be a JSON object");
  SelectionScheme s;
  s.quotas.fill(0);
  for (const auto& [code, value] : j.at("quotas").items()) {
    const auto role = parse_role(code);
    if (!role) throw ValidationError("scheme: unknown role '" + code + "'");
    s.quota(*role) = value.get<int>();
  }
  if (j.contains("overseas_count") && !j.at("overseas_count").is_null()) {
    s.overseas_count = j.at("overseas_count").get<int>();
  }
  if (j.contains("conditions")) {
    const auto& c = j.at("conditions");
    s.conditions.spin_shift = c.value("spin_shift", 0);
    s.conditions.description = c.value("description", std::string{});
  }
  s.validate();
  return s;
}

json scheme_to_json(const SelectionScheme& s) {
  json quotas = json::object();
  for (Role r : kAllRoles) quotas[std::string(role_code(r))] = s.quota(r);
  json out = {{"quotas", quotas},
              {"conditions",
               {{"spin_shift", s.conditions.spin_shift},
                {"description", s.conditions.description}}}};
  if (s.overseas_count) out["overseas_count"] = *s.overseas_count;
  return out;
}

FitOptions fit_from_json(const json& j) {
  FitOptions f;
  if (j.is_null()) return f;
  f.tail_cap = j.value("tail_cap", f.tail_cap);
  f.zero_average_clamp = j.value("zero_average_clamp", f.zero_average_clamp);
  if (j.contains("beta_grid")) {
    const auto& g = j.at("beta_grid");
    f.grid.lo = g.value("lo", f.grid.lo);
    f.grid.hi = g.value("hi", f.grid.hi);
    f.grid.count = g.value("count", f.grid.count);
  }
  const std::string rule = j.value("beta_rule", std::string("max_feasible"));
  if (rule == "max_feasible") {
    f.rule = BetaRule::MaxFeasible;
  } else if (rule == "min_feasible") {
    f.rule = BetaRule::MinFeasible;
  } else {
    throw ValidationError("unknown beta_rule '" + rule + "'");
  }
  f.grid.validate();
  if (!(f.tail_cap > 0.0 && f.tail_cap < 1.0)) throw ValidationError("tail_cap must lie in (0, 1)");
  return f;
}

LineupConstraint constraint_from_json(const json& j) {
  LineupConstraint c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw ValidationError("constraint must be an object");
  if (j.contains("locked")) {
    for (const auto& id : j.at("locked")) c.locked.insert(id.get<std::string>());
  }
  if (j.contains("excluded")) {
    for (const auto& id : j.at("excluded")) c.excluded.insert(id.get<std::string>());
  }
  return c;
}

}  // namespace detail

SelectionScheme parse_scheme_json(std::string_view text, const std::string& source) {
  try {
    return detail::scheme_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
}

std::string scheme_to_json(const SelectionScheme& scheme) {
  return detail::scheme_to_json(scheme).dump(2) + '\n';
}

SimulationConfig parse_simulation_config(std::string_view text, const std::string& source,
                                         const std::filesystem::path& base_dir) {
  SimulationConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ParseError(source, 0, "config must be a JSON object");
    const auto& ds = j.at("dataset");
    auto resolve = [&](const char* key) -> std::filesystem::path {
      if (!ds.contains(key)) return {};
      std::filesystem::path p = ds.at(key).get<std::string>();
      return p.is_absolute() ? p : base_dir / p;
    };
    cfg.dataset = DatasetPaths{resolve("stats"), resolve("teams"), resolve("defaults")};
    if (cfg.dataset.stats.empty()) throw ParseError(source, 0, "dataset.stats is required");

    cfg.fit = detail::fit_from_json(j.value("fit", json()));
    auto& t = cfg.tournament;
    if (j.contains("teams")) t.teams = j.at("teams").get<std::vector<std::string>>();
    if (j.contains("scheme")) t.scheme = detail::scheme_from_json(j.at("scheme"));
    if (j.contains("league")) t.rounds = j.at("league").value("rounds", 1);
    if (j.contains("points")) {
      const auto& p = j.at("points");
      t.points.win = p.value("win", 2);
      t.points.draw = p.value("draw", 1);
      t.points.loss = p.value("loss", 0);
      const std::string rule = p.value("draw_rule", std::string("split"));
      if (rule == "split") {
        t.points.draw_rule = DrawRule::SplitPoints;
      } else if (rule == "super_over") {
        t.points.draw_rule = DrawRule::SuperOver;
      } else {
        throw ParseError(source, 0, "unknown draw_rule '" + rule + "'");
      }
    }
    const std::string playoff = j.value("playoff", std::string("semis"));
    if (playoff == "semis") {
      t.playoff = PlayoffFormat::Semis;
    } else if (playoff == "qualifier") {
      t.playoff = PlayoffFormat::Qualifier;
    } else if (playoff == "none") {
      t.playoff = PlayoffFormat::None;
    } else {
      throw ParseError(source, 0, "unknown playoff format '" + playoff + "'");
    }
    if (j.contains("sims")) {
      t.sims = j.at("sims").get<std::uint64_t>();
      cfg.has_sims = true;
    }
    if (j.contains("seed")) {
      t.seed = j.at("seed").get<std::uint64_t>();
      cfg.has_seed = true;
    }
    t.max_resims = j.value("max_resims", 10);
    if (j.contains("match")) {
      cfg.match.fixed_xi = j.at("match").value("fixed_xi", false);
      cfg.match.common_random_numbers = j.at("match").value("common_random_numbers", false);
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return cfg;
}

SimulationConfig load_simulation_config(const std::filesystem::path& path) {
  return parse_simulation_config(read_file(path), path.string(), path.parent_path());
}

Dataset load_dataset(const DatasetPaths& paths) {
  return load_dataset(paths.stats, paths.teams, paths.defaults);
}

void resolve_teams(SimulationConfig& config, const Dataset& dataset) {
  auto& teams = config.tournament.teams;
  if (teams.empty()) {
    for (const auto& t : dataset.teams()) teams.push_back(t.id);
    return;
  }
  for (const auto& id : teams) {
    if (!dataset.find_team(id)) throw ValidationError("config lists unknown team '" + id + "'");
  }
}

}  // namespace wicketsim
