#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "chronicle/analytics/trace.hpp"
#include "chronicle/types.hpp"

namespace oracle {

using chronicle::ReqId;
using chronicle::Seconds;

struct ExactTest {
  double statistic = 0.0;  // W+ or U
  std::uint64_t le = 0;    // assignments with statistic <= observed
  std::uint64_t ge = 0;
  std::uint64_t total = 0;
  double p = 1.0;
  double p_greater = 1.0;
  double p_less = 1.0;
};

// Average ranks of `values` (1-based), by counting smaller and equal values.
std::vector<double> average_ranks(const std::vector<double>& values);

// Walks all 2^n sign patterns of the non-zero differences.
ExactTest signed_rank_by_enumeration(const std::vector<double>& diffs);

// Walks all C(n+m, n) ways to pick the first sample's positions.
ExactTest rank_sum_by_enumeration(const std::vector<double>& x, const std::vector<double>& y);

// Median of every (x_i + x_j) / 2, i <= j, by explicit listing.
double walsh_median(const std::vector<double>& x);

// P(X <= k) for X ~ Binomial(n, 1/2) from Pascal's triangle.
double binomial_half_cdf(unsigned n, int k);

// In-flight intervals sampled at cell midpoints of width `resolution`.
double concurrency_by_grid(const chronicle::analytics::Trace& trace, double resolution);

// All (i, j) with i issued before j and j answered before i, over all pairs.
std::vector<std::pair<ReqId, ReqId>> inversions_by_pairs(const chronicle::analytics::Trace& trace);

// req_ids of render_applied events older than the newest request at that point.
std::vector<ReqId> mismatches_by_scan(const chronicle::analytics::Trace& trace);

// Screen rebuilt only from the directive stream.
class ScreenModel {
 public:
  void apply(const chronicle::RenderDirective& d);
  void apply(const chronicle::Directives& ds) {
    for (const auto& d : ds) apply(d);
  }
  std::vector<chronicle::VisibleEntry> visible() const;
  bool shows(ReqId id) const;
  // Live req_ids currently on screen, smallest first.
  std::vector<ReqId> ids() const;

 private:
  std::map<int, chronicle::VisibleEntry> slots_;
};

}  // namespace oracle
