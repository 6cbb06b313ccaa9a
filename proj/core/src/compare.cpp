#include "wicketsim/compare.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "wicketsim/error.hpp"

namespace wicketsim {

Interval wilson_interval(double successes, double trials, double z) {
  if (!(trials > 0.0) || successes < 0.0 || successes > trials) {
    throw ValidationError("wilson interval needs 0 <= successes <= trials and trials > 0");
  }
  const double p = successes / trials;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / trials;
  const double center = (p + z2 / (2.0 * trials)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials));
  // At 0 or n successes one endpoint is exactly 0 or 1; cancellation would leave a residue.
  return Interval{successes == 0.0 ? 0.0 : std::max(0.0, center - half),
                  successes == trials ? 1.0 : std::min(1.0, center + half)};
}

std::vector<ComparisonRow> compare_to_actuals(const std::vector<PredictedPair>& predicted,
                                              const std::vector<ActualRecord>& actual, double z) {
  std::map<std::pair<std::string, std::string>, const ActualRecord*> by_pair;
  for (const auto& r : actual) by_pair[{r.a, r.b}] = &r;

  std::string missing;
  std::map<std::pair<std::string, std::string>, bool> predicted_pairs;
  for (const auto& p : predicted) {
    predicted_pairs[{p.a, p.b}] = true;
    if (!by_pair.contains({p.a, p.b})) missing += " (" + p.a + ", " + p.b + ") missing from actuals;";
  }
  for (const auto& r : actual) {
    if (!predicted_pairs.contains({r.a, r.b})) {
      missing += " (" + r.a + ", " + r.b + ") missing from predictions;";
    }
  }
  if (!missing.empty()) {
    missing.pop_back();
    throw ValidationError("team sets differ:" + missing);
  }

  std::vector<ComparisonRow> rows;
  rows.reserve(predicted.size());
  for (const auto& p : predicted) {
    const ActualRecord& rec = *by_pair.at({p.a, p.b});
    ComparisonRow row{p.a, p.b, p.p, std::nullopt, std::nullopt, std::nullopt, ""};
    if (rec.games > 0) {
      const double frac = rec.reported_fraction ? *rec.reported_fraction
                                                : rec.wins / static_cast<double>(rec.games);
      row.actual = frac;
      row.interval = wilson_interval(frac * rec.games, rec.games, z);
      row.inside = p.p >= row.interval->lo && p.p <= row.interval->hi;
    } else if (rec.reported_fraction) {
      row.actual = *rec.reported_fraction;
      row.flag = "no interval";
    } else {
      row.flag = "no data";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wicketsim
