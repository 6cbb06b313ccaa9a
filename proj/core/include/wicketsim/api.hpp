#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "wicketsim/matchsim.hpp"
#include "wicketsim/priors.hpp"
#include "wicketsim/roster.hpp"
#include "wicketsim/selection.hpp"

namespace wicketsim {

/// Decimal odds for a win probability. `margin` multiplies the fair price
/// 1/p; p = 0 yields no price.
struct OddsQuote {
  double p = 0.0;
  double margin = 1.0;
  std::optional<double> decimal_odds;
  bool no_price = false;
};

/// Throws ValidationError unless 0 <= p <= 1 and margin > 0.
OddsQuote quote_odds(double p, double margin = 1.0);

struct ApiOptions {
  std::uint64_t max_sims = 100000;
  /// Simulation workers per request. Requests themselves run concurrently.
  unsigned workers = 1;
  std::string cors_origin = "*";
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// JSON request handling for the what-if console, independent of transport.
///
///   GET  /health                 {"status":"ok"}
///   GET  /teams                  teams with roster sizes and the active scheme
///   GET  /teams/{id}/players     roster with role, overseas flag, tier summary
///   POST /simulate/whatif        constrained matchup estimate
///   POST /odds                   {p, margin} -> decimal odds
///
/// Stateless apart from the immutable dataset and fitted priors; handle()
/// may be called from many threads at once.
class Api {
 public:
  Api(Dataset dataset, SelectionScheme scheme, FitOptions fit = {}, ApiOptions options = {});
  Api(const Api&) = delete;
  Api& operator=(const Api&) = delete;

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

  const ApiOptions& options() const noexcept { return options_; }
  const Dataset& dataset() const noexcept { return dataset_; }

 private:
  ApiResponse teams() const;
  ApiResponse players(std::string_view team_id) const;
  ApiResponse whatif(std::string_view body) const;
  ApiResponse odds(std::string_view body) const;

  Dataset dataset_;
  SelectionScheme scheme_;
  FitOptions fit_;
  ApiOptions options_;
  PriorTable priors_;
};

}  // namespace wicketsim
