#include "chronicle/analytics/report.hpp"

#include <iomanip>
#include <map>
#include <sstream>

#include "chronicle/error.hpp"
#include "chronicle/text.hpp"

namespace chronicle::analytics {

namespace {

constexpr std::pair<Metric, std::string_view> kMetricNames[] = {
    {Metric::kCompletionTime, "completion_time"},
    {Metric::kAccuracy, "accuracy"},
    {Metric::kConcurrencyFraction, "concurrency_fraction"},
    {Metric::kOutOfOrder, "out_of_order"},
    {Metric::kMismatch, "mismatch"},
    {Metric::kFlashing, "flashing"},
};

std::string config_field(const Trace& trace, const std::string& field) {
  const Json* config = trace.config();
  if (config == nullptr || !config->contains(field)) return "-";
  const auto& v = config->at(field);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// Config minus the grouping field; traces with equal keys are paired.
std::string pairing_key(const Trace& trace, const std::string& group_by) {
  const Json* config = trace.config();
  if (config == nullptr) return {};
  Json key = *config;
  key.erase(group_by);
  key.erase("pace");
  return key.dump();
}

}  // namespace

std::string_view to_string(Metric metric) {
  for (const auto& [m, name] : kMetricNames) {
    if (m == metric) return name;
  }
  return "?";
}

std::vector<Metric> all_metrics() {
  std::vector<Metric> out;
  for (const auto& entry : kMetricNames) out.push_back(entry.first);
  return out;
}

std::vector<Metric> parse_metric_list(std::string_view text) {
  std::vector<Metric> out;
  for (auto name : text::split(text, ',')) {
    bool found = false;
    for (const auto& [m, known] : kMetricNames) {
      if (name == known) {
        out.push_back(m);
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::kConfiguration, "unknown metric '" + std::string(name) + "'");
  }
  return out;
}

double metric_value(const MetricReport& report, Metric metric) {
  switch (metric) {
    case Metric::kCompletionTime: return report.completion_time;
    case Metric::kAccuracy: return report.accuracy ? 1.0 : 0.0;
    case Metric::kConcurrencyFraction: return report.concurrency_fraction;
    case Metric::kOutOfOrder: return static_cast<double>(report.out_of_order_count);
    case Metric::kMismatch: return static_cast<double>(report.mismatch_count);
    case Metric::kFlashing: return static_cast<double>(report.flashing_count);
  }
  return 0.0;
}

TwoSampleTest parse_two_sample_test(std::string_view text) {
  if (text == "signed-rank") return TwoSampleTest::kSignedRank;
  if (text == "rank-sum") return TwoSampleTest::kRankSum;
  throw Error(ErrorCode::kConfiguration,
              "unknown test '" + std::string(text) + "' (expected signed-rank|rank-sum)");
}

std::string participant_of(const Trace& trace) {
  auto participant = config_field(trace, "participant");
  if (participant != "-") return participant;
  auto agent = config_field(trace, "agent");
  return agent != "-" ? agent : "anonymous";
}

AnalysisReport analyze(std::vector<LabeledTrace> traces, const AnalysisOptions& options) {
  AnalysisReport report;
  if (options.clean) {
    auto cleaned = clean_traces(std::move(traces), options.max_completion);
    report.cleaning = cleaned.report;
    traces = std::move(cleaned.kept);
  }

  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& lt = traces[i];
    TraceRow row{lt.source, lt.participant, config_field(lt.trace, options.group_by),
                 compute_metrics(lt.trace, options.flash_window)};
    members[row.group].push_back(i);
    report.rows.push_back(std::move(row));
  }

  for (const auto& [group, indices] : members) {
    for (auto metric : options.metrics) {
      std::vector<double> values;
      for (auto i : indices) values.push_back(metric_value(report.rows[i].metrics, metric));
      report.groups.push_back({group, metric, values.size(), median_ci(values)});
    }
  }

  for (const auto& [a, b] : options.compare) {
    for (auto metric : options.metrics) {
      Comparison c{a, b, metric, std::nullopt, {}, options.alpha, false};
      try {
        const auto ia = members.find(a);
        const auto ib = members.find(b);
        if (ia == members.end() || ib == members.end()) {
          throw Error(ErrorCode::kDegenerateSample,
                      "no traces in group '" + (ia == members.end() ? a : b) + "'");
        }
        if (options.test == TwoSampleTest::kRankSum) {
          std::vector<double> x;
          std::vector<double> y;
          for (auto i : ia->second) x.push_back(metric_value(report.rows[i].metrics, metric));
          for (auto i : ib->second) y.push_back(metric_value(report.rows[i].metrics, metric));
          c.result = wilcoxon_rank_sum(x, y);
        } else {
          std::map<std::string, std::vector<std::size_t>> by_key;
          for (auto i : ib->second) by_key[pairing_key(traces[i].trace, options.group_by)].push_back(i);
          std::vector<std::pair<double, double>> pairs;
          std::map<std::string, std::size_t> used;
          for (auto i : ia->second) {
            const auto key = pairing_key(traces[i].trace, options.group_by);
            auto it = by_key.find(key);
            if (it == by_key.end() || used[key] >= it->second.size()) continue;
            const auto j = it->second[used[key]++];
            pairs.emplace_back(metric_value(report.rows[i].metrics, metric),
                               metric_value(report.rows[j].metrics, metric));
          }
          if (pairs.empty()) {
            throw Error(ErrorCode::kDegenerateSample, "no paired traces between the groups");
          }
          c.result = wilcoxon_signed_rank(pairs);
        }
      } catch (const Error& e) {
        c.issue = e.what();
      }
      report.comparisons.push_back(std::move(c));
    }
  }

  std::vector<std::size_t> tested;
  std::vector<double> pvals;
  for (std::size_t i = 0; i < report.comparisons.size(); ++i) {
    if (report.comparisons[i].result) {
      tested.push_back(i);
      pvals.push_back(report.comparisons[i].result->p);
    }
  }
  if (options.holm && !pvals.empty()) {
    const auto holm = holm_bonferroni(pvals, options.alpha);
    // Threshold reported per comparison is the one at its ascending rank.
    std::vector<std::size_t> order(pvals.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return pvals[l] < pvals[r]; });
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      auto& c = report.comparisons[tested[order[rank]]];
      c.threshold = holm.thresholds[rank];
      c.reject = holm.reject[order[rank]];
    }
  } else {
    for (auto i : tested) {
      auto& c = report.comparisons[i];
      c.reject = c.result->p <= options.alpha;
    }
  }
  return report;
}

Json to_json(const AnalysisReport& report) {
  Json j;
  if (report.cleaning) j["cleaning"] = to_json(*report.cleaning);
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r;
    r["source"] = row.source;
    r["participant"] = row.participant;
    r["group"] = row.group;
    r["metrics"] = to_json(row.metrics);
    rows.push_back(std::move(r));
  }
  j["traces"] = std::move(rows);
  Json groups = Json::array();
  for (const auto& g : report.groups) {
    groups.push_back({{"group", g.group},
                      {"metric", std::string(to_string(g.metric))},
                      {"n", g.n},
                      {"median", g.interval.median},
                      {"ci_lo", g.interval.lo},
                      {"ci_hi", g.interval.hi},
                      {"coverage", g.interval.coverage},
                      {"widest", g.interval.widest}});
  }
  j["groups"] = std::move(groups);
  Json comparisons = Json::array();
  for (const auto& c : report.comparisons) {
    Json cj{{"a", c.a}, {"b", c.b}, {"metric", std::string(to_string(c.metric))}};
    if (c.result) {
      cj["test"] = to_json(*c.result);
      cj["threshold"] = c.threshold;
      cj["reject"] = c.reject;
    } else {
      cj["issue"] = c.issue;
    }
    comparisons.push_back(std::move(cj));
  }
  j["comparisons"] = std::move(comparisons);
  return j;
}

namespace {

std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty()) return;
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      os << (c == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[c])) << row[c];
    }
    os << '\n';
  }
}

}  // namespace

std::string to_table(const AnalysisReport& report) {
  std::ostringstream os;
  if (report.cleaning) {
    const auto& c = *report.cleaning;
    os << "cleaning: removed " << c.majority_wrong << " (majority wrong), " << c.too_long
       << " (too long), " << c.no_interaction << " (no interaction); kept " << c.kept << "\n\n";
  }
  std::vector<std::vector<std::string>> traces{
      {"source", "group", "time", "correct", "concurrency", "ooo", "mismatch", "flashing"}};
  for (const auto& r : report.rows) {
    traces.push_back({r.source, r.group, fixed(r.metrics.completion_time),
                      r.metrics.accuracy ? "yes" : "no", fixed(r.metrics.concurrency_fraction),
                      std::to_string(r.metrics.out_of_order_count),
                      std::to_string(r.metrics.mismatch_count),
                      std::to_string(r.metrics.flashing_count)});
  }
  print_table(os, traces);

  os << '\n';
  std::vector<std::vector<std::string>> groups{
      {"group", "metric", "n", "median", "ci_lo", "ci_hi", "coverage"}};
  for (const auto& g : report.groups) {
    groups.push_back({g.group, std::string(to_string(g.metric)), std::to_string(g.n),
                      fixed(g.interval.median), fixed(g.interval.lo), fixed(g.interval.hi),
                      g.interval.widest ? "widest" : fixed(g.interval.coverage)});
  }
  print_table(os, groups);

  if (!report.comparisons.empty()) {
    os << '\n';
    std::vector<std::vector<std::string>> tests{
        {"a", "b", "metric", "method", "statistic", "z", "p", "threshold", "reject"}};
    for (const auto& c : report.comparisons) {
      if (!c.result) {
        tests.push_back({c.a, c.b, std::string(to_string(c.metric)), "-", "-", "-", "-", "-",
                         c.issue});
        continue;
      }
      const auto& r = *c.result;
      tests.push_back({c.a, c.b, std::string(to_string(c.metric)), r.method, fixed(r.statistic),
                       r.z ? fixed(*r.z) : "exact", fixed(r.p, 5), fixed(c.threshold, 5),
                       c.reject ? "yes" : "no"});
    }
    print_table(os, tests);
  }
  return os.str();
}

}  // namespace chronicle::analytics
