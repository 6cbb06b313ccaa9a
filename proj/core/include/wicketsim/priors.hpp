#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "wicketsim/rng.hpp"

namespace wicketsim {

/// Shape/scale parameters of a gamma score prior. Scale is in runs.
struct GammaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const noexcept { return alpha * beta; }
  double variance() const noexcept { return alpha * beta * beta; }
  double sd() const noexcept;
  bool valid() const noexcept;

  friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

/// Throws std::domain_error unless alpha and beta are finite and positive.
void require_valid(const GammaParams& p);

/// Density of Gamma(alpha, scale beta) at x. Infinite at x = 0 when alpha < 1.
double gamma_pdf(double x, const GammaParams& p);

/// P(X <= x).
double gamma_cdf(double x, const GammaParams& p);

/// P(X > x). Equals 1 at x = 0 and is non-increasing in x.
double gamma_tail(double x, const GammaParams& p);

/// Inverse CDF for u in (0, 1). Monotone in u, in alpha and in beta.
double gamma_quantile(double u, const GammaParams& p);

/// One Gamma(alpha, beta) draw (Marsaglia-Tsang, with the u^(1/alpha)
/// boost for alpha < 1). Consumes a data-dependent number of variates.
double gamma_sample(const GammaParams& p, RngStream& rng);

/// Candidate scale values: lo + k (hi - lo) / (count - 1) for k in [0, count).
struct BetaGrid {
  double lo = 0.01;
  double hi = 5000.0;
  std::size_t count = 50000;

  double candidate(std::size_t k) const noexcept {
    return lo + static_cast<double>(k) * (hi - lo) / static_cast<double>(count - 1);
  }
  void validate() const;

  friend bool operator==(const BetaGrid&, const BetaGrid&) = default;
};

enum class BetaRule { MaxFeasible, MinFeasible };

struct FitInput {
  double average = 0.0;
  int highest = 0;
  double tail_cap = 0.05;
};

struct FitOptions {
  BetaGrid grid;
  BetaRule rule = BetaRule::MaxFeasible;
  double tail_cap = 0.05;
  /// Averages of exactly zero are replaced by this many runs.
  double zero_average_clamp = 0.1;

  friend bool operator==(const FitOptions&, const FitOptions&) = default;
};

enum FitFlag : std::uint32_t {
  kFitClampedAverage = 1u << 0,
  kFitUnsatisfiable = 1u << 1,
};

struct FitResult {
  GammaParams params;
  std::size_t grid_index = 0;
  std::uint32_t flags = 0;

  bool clamped() const noexcept { return (flags & kFitClampedAverage) != 0; }
  bool unsatisfiable() const noexcept { return (flags & kFitUnsatisfiable) != 0; }
  /// "clamped-average", "constraint-unsatisfiable", both joined by '|', or "".
  std::string flag_string() const;
};

/// Fits a prior whose mean is the batting average and whose chance of
/// exceeding the highest score is at most `tail_cap`.
///
/// alpha is always average / beta, so alpha * beta reproduces the (clamped)
/// average. Under MaxFeasible the result is the last candidate of the
/// feasible run that starts at the bottom of the grid: every smaller candidate
/// is feasible and the next larger one is not. (At fixed mean the tail falls
/// again for very large beta, so later feasible candidates exist but describe
/// near-degenerate priors and are ignored.) If the bottom candidate is itself
/// infeasible, which happens when highest is within about a run of the
/// average, both rules return the smallest feasible candidate. When no
/// candidate is feasible the smallest grid value is returned with
/// kFitUnsatisfiable set.
///
/// Throws ValidationError on negative or non-finite inputs and when
/// highest < average.
FitResult fit_gamma(const FitInput& input, const BetaGrid& grid = {},
                    BetaRule rule = BetaRule::MaxFeasible,
                    double zero_average_clamp = 0.1);

FitResult fit_gamma(double average, int highest, const FitOptions& options);

}  // namespace wicketsim
