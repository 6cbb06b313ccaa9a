#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wicketsim/matchsim.hpp"
#include "wicketsim/priors.hpp"
#include "wicketsim/roster.hpp"
#include "wicketsim/selection.hpp"
#include "wicketsim/tournament.hpp"

namespace wicketsim {

struct DatasetPaths {
  std::filesystem::path stats;
  std::filesystem::path teams;
  std::filesystem::path defaults;
};

/// Everything a `sim` run needs. Team list defaults to every dataset team.
struct SimulationConfig {
  DatasetPaths dataset;
  FitOptions fit;
  TournamentConfig tournament;
  MatchSettings match;
  bool has_seed = false;
  bool has_sims = false;
};

/// `{quotas: {...}, overseas_count?: int, conditions: {spin_shift, description?}}`
SelectionScheme parse_scheme_json(std::string_view text, const std::string& source);
std::string scheme_to_json(const SelectionScheme& scheme);

/// Dataset paths are resolved relative to the config file's directory.
SimulationConfig load_simulation_config(const std::filesystem::path& path);
SimulationConfig parse_simulation_config(std::string_view text, const std::string& source,
                                         const std::filesystem::path& base_dir);

Dataset load_dataset(const DatasetPaths& paths);

/// Fills an empty team list from the dataset and checks every listed team exists.
void resolve_teams(SimulationConfig& config, const Dataset& dataset);

}  // namespace wicketsim
