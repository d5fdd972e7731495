#include "chronicle/workload/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "chronicle/error.hpp"

namespace chronicle::workload {

namespace {

// Keeps summaries strictly inside their bands after the mean is recomputed
// from jittered points.
constexpr double kGuard = 1e-6;

Series make_series(double summary, sched::Rng& rng, const GenerationParams& params) {
  std::vector<double> jitter(static_cast<std::size_t>(params.points));
  double mean = 0.0;
  for (auto& j : jitter) {
    j = params.noise > 0.0 ? rng.uniform(-params.noise, params.noise) : 0.0;
    mean += j;
  }
  mean /= static_cast<double>(jitter.size());
  Series series;
  for (int i = 0; i < params.points; ++i) {
    series.push_back({params.first_x + i, summary + jitter[static_cast<std::size_t>(i)] - mean});
  }
  return series;
}

void validate(const TaskSpec& task, const GenerationParams& params) {
  if (task.facets.empty()) throw Error(ErrorCode::kGeneration, "task has no facets");
  std::set<Target> unique(task.facets.begin(), task.facets.end());
  if (unique.size() != task.facets.size()) {
    throw Error(ErrorCode::kGeneration, "task facets must be unique");
  }
  if (!(params.margin > 0.0)) throw Error(ErrorCode::kGeneration, "margin must be > 0");
  if (!(params.positive_rate >= 0.0 && params.positive_rate <= 1.0)) {
    throw Error(ErrorCode::kGeneration, "positive_rate must lie in [0, 1]");
  }
  if (params.points < 1) throw Error(ErrorCode::kGeneration, "series needs at least one point");
  if (!(params.lo < params.hi)) throw Error(ErrorCode::kGeneration, "empty value range");
}

std::vector<double> threshold_summaries(const TaskSpec& task, sched::Rng& rng,
                                        const GenerationParams& p, bool positive) {
  const double below = task.cutoff - p.margin - kGuard;
  const double above = task.cutoff + p.margin + kGuard;
  if (below < p.lo || above > p.hi) {
    throw Error(ErrorCode::kGeneration, "margin too large for the value range around the cutoff");
  }
  std::vector<double> s(task.facets.size());
  for (auto& v : s) v = rng.uniform(p.lo, below);
  if (positive) {
    s[rng.uniform_int(s.size())] = rng.uniform(above, p.hi);
  }
  return s;
}

std::vector<double> maximum_summaries(const TaskSpec& task, sched::Rng& rng,
                                      const GenerationParams& p) {
  if (p.lo + p.margin + 2 * kGuard >= p.hi) {
    throw Error(ErrorCode::kGeneration, "margin too large for the value range");
  }
  const auto n = task.facets.size();
  const auto top = rng.uniform_int(n);
  const double peak = rng.uniform(p.lo + p.margin + 2 * kGuard, p.hi);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = i == top ? peak : rng.uniform(p.lo, peak - p.margin - kGuard);
  }
  return s;
}

std::vector<double> trend_summaries(const TaskSpec& task, sched::Rng& rng,
                                    const GenerationParams& p, TrendLabel label) {
  const auto n = task.facets.size();
  if (n < 3) throw Error(ErrorCode::kGeneration, "trend task needs at least 3 facets");
  const double span = p.hi - p.lo;
  std::vector<double> s(n);
  if (label == TrendLabel::kFluctuating) {
    const double mid = (p.lo + p.hi) / 2;
    const double low_top = mid - p.margin / 2 - kGuard;
    const double high_bottom = mid + p.margin / 2 + kGuard;
    if (low_top <= p.lo || high_bottom >= p.hi) {
      throw Error(ErrorCode::kGeneration, "margin too large for the value range");
    }
    bool high = rng.bernoulli(0.5);
    for (auto& v : s) {
      v = high ? rng.uniform(high_bottom, p.hi) : rng.uniform(p.lo, low_top);
      high = !high;
    }
    return s;
  }
  const double unit = span / static_cast<double>(n - 1);
  std::vector<double> steps(n - 1);
  double total = 0.0;
  for (auto& step : steps) {
    step = rng.uniform(0.45 * unit, 0.9 * unit);
    total += step;
  }
  s[0] = p.lo + rng.uniform01() * (span - total);
  for (std::size_t i = 1; i < n; ++i) s[i] = s[i - 1] + steps[i - 1];
  if (label == TrendLabel::kDecreasing) std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

Assignment generate_assignment(const TaskSpec& task, sched::Rng& rng,
                               const GenerationParams& params) {
  validate(task, params);
  Assignment a;
  a.task = task;
  std::vector<double> summaries;
  switch (task.kind) {
    case TaskKind::kThreshold: {
      const bool positive = rng.bernoulli(params.positive_rate);
      summaries = threshold_summaries(task, rng, params, positive);
      a.ground_truth = Answer::threshold(positive);
      break;
    }
    case TaskKind::kMaximum: {
      summaries = maximum_summaries(task, rng, params);
      auto top = std::max_element(summaries.begin(), summaries.end()) - summaries.begin();
      a.ground_truth = Answer::maximum(task.facets[static_cast<std::size_t>(top)]);
      break;
    }
    case TaskKind::kTrend: {
      const auto label = static_cast<TrendLabel>(rng.uniform_int(3));
      summaries = trend_summaries(task, rng, params, label);
      a.ground_truth = Answer::of_trend(label);
      break;
    }
  }
  for (std::size_t i = 0; i < task.facets.size(); ++i) {
    a.data[task.facets[i]] = make_series(summaries[i], rng, params);
  }
  return a;
}

Answer oracle_answer(const Assignment& assignment) {
  const auto& task = assignment.task;
  const auto summaries = assignment.summaries();
  switch (task.kind) {
    case TaskKind::kThreshold:
      return Answer::threshold(std::any_of(summaries.begin(), summaries.end(),
                                           [&](double v) { return v > task.cutoff; }));
    case TaskKind::kMaximum: {
      auto top = std::max_element(summaries.begin(), summaries.end());
      if (std::count(summaries.begin(), summaries.end(), *top) > 1) {
        throw Error(ErrorCode::kDegenerateData, "maximum is not unique");
      }
      return Answer::maximum(task.facets[static_cast<std::size_t>(top - summaries.begin())]);
    }
    case TaskKind::kTrend:
      return Answer::of_trend(classify_trend(summaries));
  }
  throw Error(ErrorCode::kDegenerateData, "unknown task kind");
}

}  // namespace chronicle::workload
