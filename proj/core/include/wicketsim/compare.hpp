#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wicketsim {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for `successes` out of `trials` (trials > 0).
/// Successes may be fractional when reconstructed from a reported percentage.
Interval wilson_interval(double successes, double trials, double z = 1.959963984540054);

/// A predicted P(a beats b).
struct PredictedPair {
  std::string a;
  std::string b;
  double p = 0.0;
};

/// Observed record of a against b. `games` may be 0 when only a reported
/// percentage is known; then no interval can be formed.
struct ActualRecord {
  std::string a;
  std::string b;
  double wins = 0.0;
  int games = 0;
  /// Reported win fraction, used instead of wins / games when present.
  std::optional<double> reported_fraction;
};

struct ComparisonRow {
  std::string a;
  std::string b;
  double predicted = 0.0;
  std::optional<double> actual;
  std::optional<Interval> interval;
  /// predicted lies inside the interval; unset without an interval.
  std::optional<bool> inside;
  /// "", "no data" (nothing observed) or "no interval" (percentage only).
  std::string flag;
};

/// One row per predicted pair, in predicted order. Throws ValidationError
/// listing every pair present on one side only.
std::vector<ComparisonRow> compare_to_actuals(const std::vector<PredictedPair>& predicted,
                                              const std::vector<ActualRecord>& actual,
                                              double z = 1.959963984540054);

}  // namespace wicketsim
