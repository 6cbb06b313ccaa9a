#include "wicketsim/priors.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "wicketsim/error.hpp"

namespace wicketsim {

namespace bm = boost::math;

double GammaParams::sd() const noexcept { return std::sqrt(alpha) * beta; }

bool GammaParams::valid() const noexcept {
  return std::isfinite(alpha) && std::isfinite(beta) && alpha > 0.0 && beta > 0.0;
}

void require_valid(const GammaParams& p) {
  if (!p.valid()) {
    throw std::domain_error("gamma parameters must be finite and positive (alpha=" +
                            std::to_string(p.alpha) + ", beta=" + std::to_string(p.beta) + ")");
  }
}

namespace {

void require_argument(double x) {
  if (std::isnan(x)) throw std::domain_error("gamma argument is NaN");
}

}  // namespace

double gamma_pdf(double x, const GammaParams& p) {
  require_valid(p);
  require_argument(x);
  if (x < 0.0 || std::isinf(x)) return 0.0;
  if (x == 0.0) {
    if (p.alpha > 1.0) return 0.0;
    if (p.alpha == 1.0) return 1.0 / p.beta;
    return HUGE_VAL;
  }
  return bm::gamma_p_derivative(p.alpha, x / p.beta) / p.beta;
}

double gamma_cdf(double x, const GammaParams& p) {
  require_valid(p);
  require_argument(x);
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return bm::gamma_p(p.alpha, x / p.beta);
}

double gamma_tail(double x, const GammaParams& p) {
  require_valid(p);
  require_argument(x);
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return bm::gamma_q(p.alpha, x / p.beta);
}

double gamma_quantile(double u, const GammaParams& p) {
  require_valid(p);
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("gamma quantile needs u in (0, 1)");
  return bm::gamma_p_inv(p.alpha, u) * p.beta;
}

namespace {

// Marsaglia & Tsang (2000) for shape >= 1, unit scale.
double standard_gamma_large(double alpha, RngStream& rng) {
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double gamma_sample(const GammaParams& p, RngStream& rng) {
  require_valid(p);
  if (p.alpha >= 1.0) return standard_gamma_large(p.alpha, rng) * p.beta;
  const double g = standard_gamma_large(p.alpha + 1.0, rng);
  return g * std::pow(rng.uniform(), 1.0 / p.alpha) * p.beta;
}

void BetaGrid::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && lo < hi) || count < 2) {
    throw ValidationError("beta grid needs 0 < lo < hi and count >= 2");
  }
}

std::string FitResult::flag_string() const {
  std::string out;
  if (clamped()) out = "clamped-average";
  if (unsatisfiable()) {
    if (!out.empty()) out += '|';
    out += "constraint-unsatisfiable";
  }
  return out;
}

FitResult fit_gamma(const FitInput& input, const BetaGrid& grid, BetaRule rule,
                    double zero_average_clamp) {
  grid.validate();
  if (!std::isfinite(input.average) || input.average < 0.0) {
    throw ValidationError("batting average must be finite and nonnegative");
  }
  if (input.highest < 0) throw ValidationError("highest score must be nonnegative");
  if (static_cast<double>(input.highest) < input.average) {
    throw ValidationError("highest score " + std::to_string(input.highest) +
                          " is below the average " + std::to_string(input.average));
  }
  if (!(input.tail_cap > 0.0 && input.tail_cap < 1.0)) {
    throw ValidationError("tail cap must lie in (0, 1)");
  }
  if (!(zero_average_clamp > 0.0)) throw ValidationError("zero-average clamp must be positive");

  FitResult result;
  double mean = input.average;
  if (mean == 0.0) {
    mean = zero_average_clamp;
    result.flags |= kFitClampedAverage;
  }
  const double highest = static_cast<double>(input.highest);
  auto feasible = [&](std::size_t k) {
    const double beta = grid.candidate(k);
    const GammaParams p{mean / beta, beta};
    return gamma_tail(highest, p) <= input.tail_cap;
  };

  // At fixed mean the tail rises with beta, peaks, then falls again as alpha -> 0, so the
  // feasible set is a prefix plus (often) a suffix of near-degenerate priors. MaxFeasible
  // takes the top of the prefix; either rule falls back to the start of the suffix when the
  // prefix is empty.
  auto tail_at = [&](std::size_t k) {
    const double beta = grid.candidate(k);
    return gamma_tail(highest, GammaParams{mean / beta, beta});
  };
  auto find_peak = [&] {
    std::size_t lo = 0;
    std::size_t hi = grid.count - 1;
    while (hi - lo > 2) {
      const std::size_t m1 = lo + (hi - lo) / 3;
      const std::size_t m2 = hi - (hi - lo) / 3;
      if (tail_at(m1) <= tail_at(m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    std::size_t peak = lo;
    for (std::size_t k = lo + 1; k <= hi; ++k) {
      if (tail_at(k) > tail_at(peak)) peak = k;
    }
    return peak;
  };

  std::size_t chosen = 0;
  if (feasible(0)) {
    if (rule == BetaRule::MaxFeasible) {
      const std::size_t peak = find_peak();
      if (feasible(peak)) {
        chosen = grid.count - 1;
      } else {
        std::size_t a = 0;  // feasible(a), !feasible(b)
        std::size_t b = peak;
        while (b - a > 1) {
          const std::size_t mid = a + (b - a) / 2;
          (feasible(mid) ? a : b) = mid;
        }
        chosen = a;
      }
    }
  } else {
    const std::size_t last = grid.count - 1;
    if (!feasible(last)) {
      result.flags |= kFitUnsatisfiable;
    } else {
      std::size_t a = find_peak();  // !feasible(a), feasible(b)
      std::size_t b = last;
      while (b - a > 1) {
        const std::size_t mid = a + (b - a) / 2;
        (feasible(mid) ? b : a) = mid;
      }
      chosen = b;
    }
  }
  const double beta = grid.candidate(chosen);
  result.params = GammaParams{mean / beta, beta};
  result.grid_index = chosen;
  return result;
}

FitResult fit_gamma(double average, int highest, const FitOptions& options) {
  return fit_gamma(FitInput{average, highest, options.tail_cap}, options.grid, options.rule,
                   options.zero_average_clamp);
}

}  // namespace wicketsim
