#include "chronicle/analytics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "chronicle/error.hpp"

namespace chronicle::analytics {

namespace {

// Exact counting stays in 64-bit integers up to these sizes.
constexpr std::size_t kSignedRankCountMax = 62;
constexpr std::size_t kRankSumCountMax = 60;

// Ranks are doubled so that average ranks of ties stay integral.
struct Ranking {
  std::vector<std::uint64_t> doubled;
  std::vector<std::size_t> tie_sizes;
};

Ranking rank_doubled(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  Ranking ranking;
  ranking.doubled.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i+1 .. j share the average rank (i+1+j)/2.
    const auto doubled = static_cast<std::uint64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranking.doubled[order[k]] = doubled;
    ranking.tie_sizes.push_back(j - i);
    i = j;
  }
  return ranking;
}

double tie_term(const std::vector<std::size_t>& tie_sizes) {
  double sum = 0.0;
  for (auto t : tie_sizes) {
    const auto td = static_cast<double>(t);
    sum += td * td * td - td;
  }
  return sum;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void fill_tails(HypothesisTestResult& r, std::uint64_t le, std::uint64_t ge,
                std::uint64_t total) {
  const auto t = static_cast<double>(total);
  r.p_less = static_cast<double>(le) / t;
  r.p_greater = static_cast<double>(ge) / t;
  r.p = std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / t);
}

void fill_normal(HypothesisTestResult& r, double stat, double mean, double var) {
  r.exact = false;
  if (!(var > 0.0)) {
    r.z = 0.0;
    r.p = r.p_greater = r.p_less = 1.0;
    return;
  }
  const double sd = std::sqrt(var);
  const double dev = stat - mean;
  const double corrected = std::max(0.0, std::abs(dev) - 0.5);
  r.z = std::copysign(corrected / sd, dev);
  r.p = std::min(1.0, 2.0 * normal_cdf(-corrected / sd));
  r.p_greater = normal_cdf(-(dev - 0.5) / sd);
  r.p_less = normal_cdf((dev + 0.5) / sd);
}

HypothesisTestResult signed_rank_on_differences(std::vector<double> diffs, TestMode mode,
                                                std::string method) {
  diffs.erase(std::remove(diffs.begin(), diffs.end(), 0.0), diffs.end());
  if (diffs.empty()) {
    throw Error(ErrorCode::kDegenerateSample, method + ": all differences are zero");
  }
  const std::size_t n = diffs.size();
  std::vector<double> magnitude(n);
  std::transform(diffs.begin(), diffs.end(), magnitude.begin(),
                 [](double d) { return std::abs(d); });
  const auto ranking = rank_doubled(magnitude);

  std::uint64_t w2 = 0;
  std::uint64_t total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += ranking.doubled[i];
    if (diffs[i] > 0) w2 += ranking.doubled[i];
  }

  HypothesisTestResult r;
  r.method = std::move(method);
  r.statistic = static_cast<double>(w2) / 2.0;
  r.n = n;

  const bool exact = mode == TestMode::kExact ||
                     (mode == TestMode::kAuto && n <= kSignedRankExactMax);
  if (exact) {
    if (n > kSignedRankCountMax) {
      throw Error(ErrorCode::kConfiguration, "exact signed-rank test limited to n <= 62");
    }
    // counts[s]: sign assignments whose positive doubled-rank sum is s.
    std::vector<std::uint64_t> counts(total2 + 1, 0);
    counts[0] = 1;
    std::uint64_t reach = 0;
    for (auto rank : ranking.doubled) {
      for (std::uint64_t s = reach + 1; s-- > 0;) {
        if (counts[s] != 0) counts[s + rank] += counts[s];
      }
      reach += rank;
    }
    std::uint64_t le = 0;
    std::uint64_t ge = 0;
    for (std::uint64_t s = 0; s <= total2; ++s) {
      if (s <= w2) le += counts[s];
      if (s >= w2) ge += counts[s];
    }
    r.exact = true;
    fill_tails(r, le, ge, std::uint64_t{1} << n);
  } else {
    const auto nd = static_cast<double>(n);
    const double mean = nd * (nd + 1) / 4.0;
    const double var = nd * (nd + 1) * (2 * nd + 1) / 24.0 - tie_term(ranking.tie_sizes) / 48.0;
    fill_normal(r, r.statistic, mean, var);
  }
  return r;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kDegenerateSample, "median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double pseudo_median(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::kDegenerateSample, "pseudo-median of an empty sample");
  std::vector<double> walsh;
  walsh.reserve(x.size() * (x.size() + 1) / 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i; j < x.size(); ++j) walsh.push_back((x[i] + x[j]) / 2.0);
  }
  return median(std::move(walsh));
}

HypothesisTestResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> pairs,
                                          TestMode mode) {
  std::vector<double> diffs;
  diffs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) diffs.push_back(a - b);
  auto r = signed_rank_on_differences(diffs, mode, "wilcoxon_signed_rank");
  std::vector<double> nonzero;
  for (double d : diffs) {
    if (d != 0.0) nonzero.push_back(d);
  }
  r.estimate = pseudo_median(nonzero);
  return r;
}

HypothesisTestResult wilcoxon_one_sample(std::span<const double> x, double mu0,
                                         TestMode mode) {
  std::vector<double> diffs;
  diffs.reserve(x.size());
  for (double v : x) diffs.push_back(v - mu0);
  auto r = signed_rank_on_differences(diffs, mode, "wilcoxon_one_sample");
  r.estimate = pseudo_median(x);
  return r;
}

HypothesisTestResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y,
                                       TestMode mode) {
  if (x.empty() || y.empty()) {
    throw Error(ErrorCode::kDegenerateSample, "wilcoxon_rank_sum: both samples must be non-empty");
  }
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const std::size_t total = n + m;
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const auto ranking = rank_doubled(pooled);

  std::uint64_t r2 = 0;
  std::uint64_t all2 = 0;
  for (std::size_t i = 0; i < total; ++i) {
    all2 += ranking.doubled[i];
    if (i < n) r2 += ranking.doubled[i];
  }

  HypothesisTestResult r;
  r.method = "wilcoxon_rank_sum";
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  r.statistic = static_cast<double>(r2) / 2.0 - nd * (nd + 1) / 2.0;
  r.n = n;
  r.m = m;

  const bool exact = mode == TestMode::kExact ||
                     (mode == TestMode::kAuto && total <= kRankSumExactMax);
  if (exact) {
    if (total > kRankSumCountMax) {
      throw Error(ErrorCode::kConfiguration, "exact rank-sum test limited to n + m <= 60");
    }
    // ways[k][s]: size-k subsets of the pooled ranks with doubled sum s.
    std::vector<std::vector<std::uint64_t>> ways(n + 1, std::vector<std::uint64_t>(all2 + 1, 0));
    ways[0][0] = 1;
    std::uint64_t reach = 0;
    for (std::size_t i = 0; i < total; ++i) {
      const auto rank = ranking.doubled[i];
      for (std::size_t k = std::min(n, i + 1); k >= 1; --k) {
        for (std::uint64_t s = reach + 1; s-- > 0;) {
          if (ways[k - 1][s] != 0) ways[k][s + rank] += ways[k - 1][s];
        }
      }
      reach += rank;
    }
    std::uint64_t le = 0;
    std::uint64_t ge = 0;
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s <= all2; ++s) {
      count += ways[n][s];
      if (s <= r2) le += ways[n][s];
      if (s >= r2) ge += ways[n][s];
    }
    r.exact = true;
    fill_tails(r, le, ge, count);
  } else {
    const double nn = static_cast<double>(total);
    const double mean = nd * md / 2.0;
    const double var = nd * md / 12.0 * ((nn + 1) - tie_term(ranking.tie_sizes) / (nn * (nn - 1)));
    fill_normal(r, r.statistic, mean, var);
  }

  std::vector<double> shifts;
  shifts.reserve(n * m);
  for (double a : x) {
    for (double b : y) shifts.push_back(a - b);
  }
  r.estimate = median(std::move(shifts));
  return r;
}

HolmResult holm_bonferroni(std::span<const double> pvals, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kConfiguration, "alpha must lie in (0, 1)");
  }
  for (double p : pvals) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kConfiguration, "p-values must lie in [0, 1]");
  }
  const std::size_t m = pvals.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pvals[a] < pvals[b]; });

  HolmResult result;
  result.reject.assign(m, false);
  result.adjusted.assign(m, 1.0);
  result.thresholds.resize(m);
  bool still_rejecting = true;
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double remaining = static_cast<double>(m - j);
    result.thresholds[j] = alpha / remaining;
    const double p = pvals[order[j]];
    still_rejecting = still_rejecting && p <= result.thresholds[j];
    result.reject[order[j]] = still_rejecting;
    running = std::max(running, std::min(1.0, remaining * p));
    result.adjusted[order[j]] = running;
  }
  return result;
}

Correlation pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw Error(ErrorCode::kDegenerateSample, "pearson_r needs paired samples with n >= 3");
  }
  const std::size_t n = x.size();
  const auto nd = static_cast<double>(n);
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / nd;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / nd;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kDegenerateSample, "pearson_r: zero variance");
  }
  Correlation c;
  c.n = n;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = nd - 2.0;
  const double rest = 1.0 - c.r * c.r;
  if (rest <= 0.0) {
    c.p = 0.0;
  } else {
    const double t = c.r * std::sqrt(df / rest);
    boost::math::students_t dist(df);
    c.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
  }
  return c;
}

MedianInterval median_ci(std::span<const double> sample, double level) {
  if (sample.empty()) throw Error(ErrorCode::kDegenerateSample, "median_ci of an empty sample");
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::kConfiguration, "confidence level must lie in (0, 1)");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  MedianInterval ci;
  ci.median = median(sorted);
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), 0.5);
  const auto outside = [&](std::size_t k) {
    return 2.0 * boost::math::cdf(dist, static_cast<double>(k - 1));
  };
  for (std::size_t k = 1; k <= n / 2; ++k) {
    if (outside(k) <= (1.0 - level) + 1e-12) {
      ci.k = k;
    } else {
      break;
    }
  }
  if (ci.k == 0) {
    ci.widest = true;
    ci.k = 1;
  }
  ci.lo = sorted[ci.k - 1];
  ci.hi = sorted[n - ci.k];
  ci.coverage = n >= 2 ? 1.0 - outside(ci.k) : 0.0;
  return ci;
}

Json to_json(const HypothesisTestResult& result) {
  Json j;
  j["method"] = result.method;
  j["statistic"] = result.statistic;
  if (result.z) j["z"] = *result.z;
  j["exact"] = result.exact;
  j["p"] = result.p;
  j["p_greater"] = result.p_greater;
  j["p_less"] = result.p_less;
  j["n"] = result.n;
  if (result.m) j["m"] = result.m;
  if (result.estimate) j["estimate"] = *result.estimate;
  return j;
}

}  // namespace chronicle::analytics
