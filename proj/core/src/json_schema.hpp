#pragma once

// nlohmann-based readers shared by config.cpp and api.cpp.

#include <string>

#include "json.hpp"
#include "wicketsim/error.hpp"
#include "wicketsim/priors.hpp"
#include "wicketsim/roster.hpp"
#include "wicketsim/selection.hpp"

namespace wicketsim::detail {

SelectionScheme scheme_from_json(const nlohmann::json& j);
nlohmann::json scheme_to_json(const SelectionScheme& s);
FitOptions fit_from_json(const nlohmann::json& j);
LineupConstraint constraint_from_json(const nlohmann::json& j);

}  // namespace wicketsim::detail
