#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/fit_scan.hpp"
#include "support/oracle.hpp"
#include "wicketsim/error.hpp"
#include "wicketsim/priors.hpp"

namespace wicketsim {
namespace {

using testing::QuadratureGamma;

const GammaParams kWilliamson{86.68, 0.63};

// Integrates the library density with a substitution that removes the x^(alpha-1)
// singularity at zero.
double library_pdf_mass(const GammaParams& p) {
  const long double a = p.alpha;
  const long double head_end = p.beta;
  auto head = [&](long double s) -> long double {
    if (s <= 0.0L) return 0.0L;
    const long double x = std::pow(s, 1.0L / a);
    return gamma_pdf(static_cast<double>(x), p) * (1.0L / a) * x / s;
  };
  const double sd = p.sd();
  const long double tail_end = p.mean() + 60 * sd + 80 * p.beta;
  auto body = [&](long double x) -> long double { return gamma_pdf(static_cast<double>(x), p); };
  const long double mode = std::max(0.0, (p.alpha - 1) * p.beta);
  long double total = testing::integrate(head, 0.0L, std::pow(head_end, a), 1e-12L);
  long double lo = head_end;
  for (long double m : {mode - 8 * sd, mode, mode + 8 * sd}) {
    if (m > lo) {
      total += testing::integrate(body, lo, m, 1e-12L);
      lo = m;
    }
  }
  total += testing::integrate(body, lo, tail_end, 1e-12L);
  return static_cast<double>(total);
}

TEST(GammaPdf, TrivialValues) {
  EXPECT_EQ(gamma_pdf(0.0, {2.0, 1.0}), 0.0);
  EXPECT_NEAR(gamma_pdf(1.0, {1.0, 1.0}), std::exp(-1.0), 1e-15);
  EXPECT_EQ(gamma_pdf(-1.0, {2.0, 1.0}), 0.0);
  EXPECT_TRUE(std::isinf(gamma_pdf(0.0, {0.5, 1.0})));
}

TEST(GammaPdf, WilliamsonMatchesQuadratureOracle) {
  const QuadratureGamma oracle(86.68L, 0.63L);
  const double expected = static_cast<double>(oracle.pdf(54.61L));
  EXPECT_NEAR(gamma_pdf(54.61, kWilliamson) / expected, 1.0, 1e-9);
}

TEST(GammaPdf, AgreesWithOracleAcrossShapes) {
  for (const GammaParams p : {GammaParams{0.3, 4.0}, GammaParams{1.0, 10.0}, GammaParams{2.5, 12.0},
                              GammaParams{40.0, 0.9}, GammaParams{0.9, 60.0}}) {
    const QuadratureGamma oracle(p.alpha, p.beta);
    for (double q : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double x = q * p.mean();
      EXPECT_NEAR(gamma_pdf(x, p) / static_cast<double>(oracle.pdf(x)), 1.0, 1e-9)
          << "alpha=" << p.alpha << " beta=" << p.beta << " x=" << x;
    }
  }
}

TEST(GammaPdf, IntegratesToOne) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> log_alpha(std::log(0.2), std::log(200.0));
  std::uniform_real_distribution<double> log_beta(std::log(0.05), std::log(100.0));
  for (int i = 0; i < 25; ++i) {
    const GammaParams p{std::exp(log_alpha(gen)), std::exp(log_beta(gen))};
    EXPECT_NEAR(library_pdf_mass(p), 1.0, 1e-6) << p.alpha << ", " << p.beta;
  }
}

TEST(GammaTail, TrivialValuesAndShape) {
  EXPECT_NEAR(gamma_tail(1.0, {1.0, 1.0}), std::exp(-1.0), 1e-15);
  EXPECT_EQ(gamma_tail(0.0, {3.0, 2.0}), 1.0);
  double prev = 1.0;
  for (double x = 0.0; x < 60.0; x += 0.5) {
    const double t = gamma_tail(x, {2.5, 8.0});
    EXPECT_LE(t, prev);
    EXPECT_NEAR(t + gamma_cdf(x, {2.5, 8.0}), 1.0, 1e-14);
    prev = t;
  }
}

TEST(GammaTail, WilliamsonUpperTailIsNegligible) {
  const double t = gamma_tail(118.0, kWilliamson);
  EXPECT_LT(t, 1e-6);
  const QuadratureGamma oracle(86.68L, 0.63L);
  EXPECT_NEAR(t / static_cast<double>(oracle.tail(118.0L)), 1.0, 1e-6);
}

TEST(GammaTail, AgreesWithOracle) {
  for (const GammaParams p : {GammaParams{0.4, 30.0}, GammaParams{1.7, 14.0}, GammaParams{9.0, 3.0}}) {
    const QuadratureGamma oracle(p.alpha, p.beta);
    for (double x : {1.0, 10.0, 40.0, 90.0}) {
      EXPECT_NEAR(gamma_tail(x, p) / static_cast<double>(oracle.tail(x)), 1.0, 1e-8)
          << p.alpha << ", " << p.beta << " at " << x;
    }
  }
}

TEST(GammaQuantile, InvertsCdfAndIsMonotone) {
  const GammaParams p{2.2, 13.0};
  double prev = 0.0;
  for (double u = 0.01; u < 1.0; u += 0.01) {
    const double x = gamma_quantile(u, p);
    EXPECT_NEAR(gamma_cdf(x, p), u, 1e-10);
    EXPECT_GT(x, prev);
    prev = x;
    EXPECT_LE(x, gamma_quantile(u, {2.3, 13.0}));
    EXPECT_LE(x, gamma_quantile(u, {2.2, 13.5}));
  }
}

TEST(GammaSample, WilliamsonMean) {
  RngStream rng(2019);
  constexpr int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += gamma_sample(kWilliamson, rng);
  EXPECT_NEAR(sum / n, 54.61, 0.1);
}

TEST(GammaSample, ExponentialVariance) {
  RngStream rng(7);
  constexpr int n = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = gamma_sample({1.0, 10.0}, rng);
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  EXPECT_NEAR(s2 / n - mean * mean, 100.0, 5.0);
}

TEST(GammaSample, MatchesOracleDistributionForSmallShape) {
  // Chi-square goodness of fit on ten oracle-equiprobable bins.
  const GammaParams p{0.45, 20.0};
  const QuadratureGamma oracle(p.alpha, p.beta);
  std::vector<double> edges;
  for (int k = 1; k < 10; ++k) {
    double lo = 0.0, hi = 500.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (oracle.cdf(mid) < k / 10.0L ? lo : hi) = mid;
    }
    edges.push_back(0.5 * (lo + hi));
  }
  RngStream rng(99);
  constexpr int n = 50000;
  std::vector<int> bins(10, 0);
  for (int i = 0; i < n; ++i) {
    const double x = gamma_sample(p, rng);
    ASSERT_GE(x, 0.0);
    bins[std::upper_bound(edges.begin(), edges.end(), x) - edges.begin()]++;
  }
  double chi2 = 0.0;
  for (int b : bins) chi2 += (b - n / 10.0) * (b - n / 10.0) / (n / 10.0);
  EXPECT_GT(testing::chi_square_tail(chi2, 9), 0.001) << "chi2=" << chi2;
}

TEST(GammaSample, ExceedanceFrequencyMatchesTail) {
  const GammaParams p{3.0, 9.0};
  const double h = 60.0;
  const double expected = static_cast<double>(QuadratureGamma(3.0L, 9.0L).tail(h));
  RngStream rng(123);
  constexpr int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += gamma_sample(p, rng) > h;
  EXPECT_TRUE(testing::within_binomial_band(double(hits) / n, expected, n, 4.0));
}

TEST(GammaSample, SameStreamSameDraws) {
  RngStream a(77), b(77);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(gamma_sample({0.7, 5.0}, a), gamma_sample({0.7, 5.0}, b));
}

TEST(GammaParams, Validity) {
  EXPECT_TRUE((GammaParams{1.0, 2.0}).valid());
  EXPECT_FALSE((GammaParams{0.0, 2.0}).valid());
  EXPECT_FALSE((GammaParams{1.0, -1.0}).valid());
  EXPECT_THROW(require_valid({1.0, std::nan("")}), std::domain_error);
  EXPECT_DOUBLE_EQ((GammaParams{3.0, 2.0}).variance(), 12.0);
}

TEST(FitGamma, WilliamsonPublishedPairSatisfiesConstraint) {
  EXPECT_NEAR(54.61 / 0.63, 86.68, 0.01);
  EXPECT_LE(gamma_tail(118.0, {54.61 / 0.63, 0.63}), 0.05);
}

TEST(FitGamma, WilliamsonFitIsMaximalAndConsistent) {
  const BetaGrid grid;
  const FitResult r = fit_gamma(FitInput{54.61, 118, 0.05}, grid);
  EXPECT_EQ(r.flags, 0u);
  EXPECT_NEAR(r.params.alpha * r.params.beta, 54.61, 1e-9);
  EXPECT_EQ(r.params.beta, grid.candidate(r.grid_index));
  EXPECT_LE(gamma_tail(118.0, r.params), 0.05);
  const double next = grid.candidate(r.grid_index + 1);
  EXPECT_GT(gamma_tail(118.0, {54.61 / next, next}), 0.05);
  bool unsat = false;
  EXPECT_EQ(r.grid_index, testing::fit_scan_index(54.61, 118, 0.05, grid, &unsat));
  // The bound binds a little above beta = 20.
  EXPECT_GT(r.params.beta, 19.0);
  EXPECT_LT(r.params.beta, 21.0);
}

TEST(FitGamma, SingleInningsOfOneRun) {
  const BetaGrid grid;
  const FitResult r = fit_gamma(FitInput{1.0, 1, 0.05}, grid);
  EXPECT_FALSE(r.unsatisfiable());
  EXPECT_EQ(r.params.beta, grid.candidate(r.grid_index));
  EXPECT_LE(gamma_tail(1.0, r.params), 0.05);
  bool unsat = true;
  EXPECT_EQ(r.grid_index, testing::fit_scan_index(1.0, 1, 0.05, grid, &unsat));
  EXPECT_FALSE(unsat);
  // Smallest feasible: the previous candidate violates the cap.
  ASSERT_GT(r.grid_index, 0u);
  const double prev = grid.candidate(r.grid_index - 1);
  EXPECT_GT(gamma_tail(1.0, {1.0 / prev, prev}), 0.05);
}

TEST(FitGamma, MatchesLinearScanOnRandomInputs) {
  const BetaGrid grid;
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> avg(0.0, 70.0);
  std::uniform_real_distribution<double> stretch(1.0, 5.0);
  for (int i = 0; i < 12; ++i) {
    const double a = avg(gen);
    const int h = static_cast<int>(std::ceil(a * stretch(gen)));
    const FitResult r = fit_gamma(FitInput{a, h, 0.05}, grid);
    bool unsat = false;
    const double mean = r.clamped() ? 0.1 : a;
    EXPECT_EQ(r.grid_index, testing::fit_scan_index(mean, h, 0.05, grid, &unsat)) << a << " / " << h;
    EXPECT_EQ(r.unsatisfiable(), unsat);
    EXPECT_DOUBLE_EQ(r.params.alpha, mean / r.params.beta);
  }
}

TEST(FitGamma, ZeroAverageIsClamped) {
  const FitResult r = fit_gamma(FitInput{0.0, 0, 0.05});
  EXPECT_TRUE(r.clamped());
  EXPECT_NEAR(r.params.mean(), 0.1, 1e-12);
  EXPECT_EQ(r.flag_string().find("clamped-average"), 0u);
}

TEST(FitGamma, UnsatisfiableReturnsSmallestCandidate) {
  const BetaGrid narrow{0.01, 1.0, 100};
  const FitResult r = fit_gamma(FitInput{50.0, 50, 0.05}, narrow);
  EXPECT_TRUE(r.unsatisfiable());
  EXPECT_EQ(r.grid_index, 0u);
  EXPECT_DOUBLE_EQ(r.params.beta, 0.01);
  EXPECT_EQ(r.flag_string(), "constraint-unsatisfiable");
}

TEST(FitGamma, MinFeasibleRule) {
  const FitResult r = fit_gamma(FitInput{30.0, 120, 0.05}, {}, BetaRule::MinFeasible);
  EXPECT_EQ(r.grid_index, 0u);
  EXPECT_DOUBLE_EQ(r.params.beta, 0.01);
}

TEST(FitGamma, TailCapIsRespectedAndMonotone) {
  const FitResult loose = fit_gamma(FitInput{40.0, 150, 0.10});
  const FitResult tight = fit_gamma(FitInput{40.0, 150, 0.01});
  EXPECT_LE(gamma_tail(150, tight.params), 0.01);
  EXPECT_GE(loose.params.beta, tight.params.beta);
}

TEST(FitGamma, RejectsBadInput) {
  EXPECT_THROW(fit_gamma(FitInput{-1.0, 10, 0.05}), ValidationError);
  EXPECT_THROW(fit_gamma(FitInput{20.0, 10, 0.05}), ValidationError);
  EXPECT_THROW(fit_gamma(FitInput{20.0, 40, 0.0}), ValidationError);
  EXPECT_THROW(fit_gamma(FitInput{20.0, 40, 1.0}), ValidationError);
  EXPECT_THROW(fit_gamma(FitInput{std::nan(""), 40, 0.05}), ValidationError);
  EXPECT_THROW(fit_gamma(FitInput{20.0, 40, 0.05}, BetaGrid{1.0, 0.5, 10}), ValidationError);
}

}  // namespace
}  // namespace wicketsim
