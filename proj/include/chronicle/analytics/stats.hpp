#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/analytics/trace.hpp"

namespace chronicle::analytics {

enum class TestMode { kExact, kApprox, kAuto };

// Auto mode switches to the normal approximation above these sizes.
inline constexpr std::size_t kSignedRankExactMax = 25;
inline constexpr std::size_t kRankSumExactMax = 20;  // n + m

struct HypothesisTestResult {
  std::string method;
  double statistic = 0.0;   // W+ (signed rank) or U of the first sample
  std::optional<double> z;  // set for approximate results
  bool exact = false;
  double p = 1.0;           // two-sided
  double p_greater = 1.0;   // one-sided, statistic larger than under H0
  double p_less = 1.0;      // one-sided, statistic smaller than under H0
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<double> estimate;
};

// Paired test on a - b. Zero differences are discarded; tied magnitudes get
// average ranks. The exact distribution counts all 2^n sign assignments.
// Approximate results use tie and continuity corrections.
HypothesisTestResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs,
                                          TestMode mode = TestMode::kAuto);

// Mann-Whitney U for x against y with average ranks for ties. The exact
// distribution counts all C(n+m, n) splits of the pooled ranks.
HypothesisTestResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y,
                                       TestMode mode = TestMode::kAuto);

// Signed-rank test of x - mu0; the estimate is the pseudo-median of x.
HypothesisTestResult wilcoxon_one_sample(std::span<const double> x, double mu0,
                                         TestMode mode = TestMode::kAuto);

// Median of all Walsh averages (x_i + x_j) / 2 with i <= j.
double pseudo_median(std::span<const double> x);

struct HolmResult {
  std::vector<bool> reject;        // input order
  std::vector<double> thresholds;  // by ascending rank: alpha / (m - j)
  std::vector<double> adjusted;    // input order
};

HolmResult holm_bonferroni(std::span<const double> pvals, double alpha);

struct Correlation {
  double r = 0.0;
  double p = 1.0;  // two-sided, t distribution with n - 2 df
  std::size_t n = 0;
};

Correlation pearson_r(std::span<const double> x, std::span<const double> y);

struct MedianInterval {
  double median = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t k = 0;        // lo = x_(k), hi = x_(n-k+1), 1-based
  double coverage = 1.0;    // binomial coverage of the interval
  bool widest = false;      // sample too small for the level; (min, max) returned
};

// Distribution-free interval from order statistics.
MedianInterval median_ci(std::span<const double> sample, double level = 0.95);

double median(std::vector<double> values);

Json to_json(const HypothesisTestResult& result);

}  // namespace chronicle::analytics
