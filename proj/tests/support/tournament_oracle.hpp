#pragma once

// Exact standings for tiny tournaments whose team totals have small discrete
// distributions. Written from the format rules, sharing no code with the
// simulator.

#include <map>
#include <string>
#include <vector>

#include "wicketsim/priors.hpp"

namespace wicketsim::testing {

/// Distribution of round(X), X ~ Gamma(p), by quadrature. Masses below
/// `cutoff` are dropped.
std::map<int, double> rounded_pmf(const GammaParams& p, double cutoff = 1e-15);

struct TinyTournament {
  std::vector<std::string> ids;
  /// Distribution of each team's total score.
  std::vector<std::map<int, double>> totals;
  int rounds = 1;
  int win = 2;
  int draw = 1;
  int loss = 0;
  bool super_over = false;  ///< else drawn league games split points
  bool qualifier = false;   ///< else 1v4 / 2v3 semis
  int max_resims = 10;
};

struct ExactStandings {
  std::vector<std::vector<double>> position;  ///< [team][pos]
  std::vector<double> champion;
};

/// Requires exactly four teams (every team reaches the knockout).
ExactStandings enumerate_tournament(const TinyTournament& t);

}  // namespace wicketsim::testing
