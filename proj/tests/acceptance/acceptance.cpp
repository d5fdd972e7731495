// Acceptance checks: one PASS/FAIL line per criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "buffer_props.hpp"
#include "chronicle/analytics/metrics.hpp"
#include "chronicle/analytics/stats.hpp"
#include "chronicle/error.hpp"
#include "chronicle/sched/latency.hpp"
#include "chronicle/session/replay.hpp"
#include "chronicle/session/simulation.hpp"
#include "chronicle/workload/generator.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chronicle;
using analytics::EventType;

namespace {

using Clock = std::chrono::steady_clock;

// Failure detail collected while a criterion runs; empty means pass.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_++ < 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& what) { notes_ += (notes_.empty() ? "" : "; ") + what; }
  bool ok() const { return failures_ == 0; }
  std::string text() const {
    if (ok()) return notes_;
    return std::to_string(failures_) + " failure(s): " + detail_;
  }

 private:
  std::size_t failures_ = 0;
  std::string detail_;
  std::string notes_;
};

int failures = 0;

void criterion(const std::string& name, double budget_ms, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (budget_ms > 0) {
    std::ostringstream limit;
    limit << "runtime " << ms << " ms exceeds " << budget_ms << " ms";
    v.require(ms < budget_ms, limit.str());
  }
  if (!v.ok()) ++failures;
  std::printf("%s  %-22s %10.2f ms  %s\n", v.ok() ? "PASS" : "FAIL", name.c_str(), ms,
              v.text().c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

session::SessionSummary scripted(const std::string& policy, std::vector<session::ScriptedHover> hovers,
                                 std::vector<Seconds> latencies, Seconds submit_at) {
  session::SessionConfig config;
  config.policy = parse_policy(policy);
  config.latency = sched::LatencyProfile::trace(std::move(latencies));
  return session::run_scripted(config, hovers, workload::Answer::threshold(false), submit_at);
}

session::SessionConfig agent_config(const std::string& policy, const std::string& latency,
                                    const std::string& task, const std::string& agent,
                                    std::uint64_t seed) {
  session::SessionConfig config;
  config.policy = parse_policy(policy);
  config.latency = sched::parse_latency(latency);
  config.task = workload::parse_task(task);
  config.agent = workload::parse_agent(agent);
  config.seed = seed;
  return config;
}

const std::vector<std::string> kPolicies{"blocking",          "naive",         "cumulative",
                                         "multiples:4",       "overlay:4:ordinal",
                                         "overlay:4:categorical", "animation:0.5"};
const std::vector<std::string> kTasks{"threshold:80", "maximum", "trend"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void holm_constant(Verdict& v) {
  std::vector<double> p(27, 0.5);
  p[0] = 0.001;
  const auto h = analytics::holm_bonferroni(p, 0.05);
  const double smallest = h.thresholds.front();
  v.require(std::abs(smallest - 0.05 / 27.0) <= 1e-12, "threshold " + fmt(smallest));
  v.require(std::abs(smallest - 0.0019) < 0.00005, "not 0.0019 after rounding");
  v.note("alpha_1 = " + fmt(smallest));
}

void signed_rank_exact(Verdict& v) {
  const std::vector<std::pair<double, double>> positive{{2, 1}, {4, 1}, {5, 1}, {9, 1}, {20, 1}};
  const auto r = analytics::wilcoxon_signed_rank(positive, analytics::TestMode::kExact);
  v.require(r.statistic == 15.0, "W = " + fmt(r.statistic));
  v.require(r.p_greater == 0.03125, "one-sided p = " + fmt(r.p_greater));
  v.require(r.p == 0.0625, "two-sided p = " + fmt(r.p));

  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> value(0, 9);
  int compared = 0;
  while (compared < 100) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<std::pair<double, double>> pairs;
    std::vector<double> diffs;
    for (std::size_t i = 0; i < n; ++i) {
      pairs.emplace_back(value(rng), value(rng));
      diffs.push_back(pairs.back().first - pairs.back().second);
    }
    if (std::all_of(diffs.begin(), diffs.end(), [](double d) { return d == 0.0; })) continue;
    const auto got = analytics::wilcoxon_signed_rank(pairs, analytics::TestMode::kExact);
    const auto want = oracle::signed_rank_by_enumeration(diffs);
    v.require(got.p == want.p && got.p_greater == want.p_greater && got.p_less == want.p_less,
              "sample " + std::to_string(compared) + " p " + fmt(got.p) + " vs " + fmt(want.p));
    ++compared;
  }
  v.note("W=15 p1=0.03125; 100/100 samples bit-identical");
}

void rank_sum_exact(Verdict& v) {
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> y{4, 5, 6};
  const auto r = analytics::wilcoxon_rank_sum(x, y, analytics::TestMode::kExact);
  v.require(r.statistic == 0.0, "U = " + fmt(r.statistic));
  v.require(std::abs(r.p - 0.1) <= 1e-15, "p = " + fmt(r.p));

  std::mt19937_64 rng(102);
  std::uniform_int_distribution<int> value(0, 9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 11;
    const std::size_t m = 1 + rng() % (12 - n);
    std::vector<double> a(n);
    std::vector<double> b(m);
    for (auto& e : a) e = value(rng);
    for (auto& e : b) e = value(rng);
    const auto got = analytics::wilcoxon_rank_sum(a, b, analytics::TestMode::kExact);
    const auto want = oracle::rank_sum_by_enumeration(a, b);
    v.require(a.size() + b.size() <= 12, "oversized sample");
    v.require(got.p == want.p && got.p_greater == want.p_greater && got.p_less == want.p_less,
              "sample " + std::to_string(i) + " p " + fmt(got.p) + " vs " + fmt(want.p));
  }
  v.note("U=0 p=0.1; 100/100 samples bit-identical");
}

void concurrency(Verdict& v) {
  const auto fixture = scripted("cumulative", {{0.0, "Jan"}, {1.0, "Feb"}, {2.0, "Mar"}}, {5, 5, 5}, 7.0);
  const double f = analytics::concurrency_fraction(fixture.trace);
  v.require(std::abs(f - 5.0 / 7.0) <= 1e-9, "fixture " + fmt(f));

  std::mt19937_64 rng(103);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = fixtures::run_random(rng, fixtures::random_policy(rng));
    const double diff =
        std::abs(analytics::concurrency_fraction(s.trace) - oracle::concurrency_by_grid(s.trace, 0.001));
    worst = std::max(worst, diff);
  }
  v.require(worst <= 1e-3, "oracle deviation " + fmt(worst));

  std::size_t serial = 0;
  for (const auto& policy : kPolicies) {
    for (const auto& task : kTasks) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = session::run_simulation(agent_config(policy, "uniform:0,5", task, "serial:0.5", seed));
        v.require(s.metrics.concurrency_fraction == 0.0,
                  policy + " serial trace has concurrency " + fmt(s.metrics.concurrency_fraction));
        ++serial;
      }
    }
  }
  std::ostringstream note;
  note << "fixture " << f << "; max oracle deviation " << worst << "; " << serial
       << " serial traces at 0";
  v.note(note.str());
}

void ordering(Verdict& v) {
  const auto crossing = scripted("naive", {{0.0, "Jan"}, {1.0, "Feb"}}, {4, 1}, 5.0);
  const auto pairs = analytics::detect_out_of_order(crossing.trace);
  v.require(pairs == std::vector<std::pair<ReqId, ReqId>>{{1, 2}}, "crossing fixture");

  const auto stale = scripted("naive", {{0.0, "Jan"}, {1.0, "Feb"}, {2.0, "Mar"}}, {2.5, 2.5, 2.5}, 6.0);
  const auto flagged = analytics::detect_mismatch(stale.trace);
  v.require(!flagged.empty() && flagged.front().req_id == ReqId{1} && flagged.front().t == 2.5,
            "stale-render fixture");

  std::mt19937_64 rng(104);
  std::size_t inversions = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = fixtures::run_random(rng, fixtures::random_policy(rng));
    const auto got = analytics::detect_out_of_order(s.trace);
    v.require(got == oracle::inversions_by_pairs(s.trace), "trace " + std::to_string(i));
    inversions += got.size();
  }
  v.note("1000 traces, " + std::to_string(inversions) + " inversions matched");
}

void buffer_safety(Verdict& v) {
  std::mt19937_64 rng(105);
  props::SequenceStats stats;
  const int sequences = 100000;
  for (int i = 0; i < sequences; ++i) {
    const auto policy = fixtures::random_policy(rng);
    if (auto failure = props::check_random_sequence(rng, policy, 1 + rng() % 40, stats)) {
      v.require(false, to_string(policy) + " " + *failure);
    }
  }
  v.require(stats.evictions > 0 && stats.renders > 0 && stats.releases > 0, "generator too weak");
  std::ostringstream note;
  note << sequences << " sequences, " << stats.ops << " ops, " << stats.evictions << " evictions";
  v.note(note.str());
}

void determinism(Verdict& v) {
  const auto dir = std::filesystem::temp_directory_path() / "chronicle-acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> agents{"serial:0.5", "eager:0.5"};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto config = agent_config(kPolicies[seed % kPolicies.size()], "uniform:0,5",
                                     kTasks[seed % kTasks.size()], agents[seed % 2], seed);
    const auto a_path = (dir / ("a-" + std::to_string(seed) + ".jsonl")).string();
    const auto b_path = (dir / ("b-" + std::to_string(seed) + ".jsonl")).string();
    const auto a = session::run_simulation(config, a_path);
    session::run_simulation(config, b_path);
    const auto bytes = read_file(a_path);
    v.require(!bytes.empty() && bytes == read_file(b_path), "seed " + std::to_string(seed) + " files differ");
    const auto replayed = session::replay(a.trace);
    v.require(replayed.history == a.directives, "seed " + std::to_string(seed) + " replay history");
  }
  std::filesystem::remove_all(dir);
  v.note("100 seeds byte-identical and replayed");
}

void latency_sampler(Verdict& v) {
  sched::LatencySampler sampler(sched::parse_latency("uniform:0,5"), sched::Rng(106, sched::kLatencyStream));
  const std::size_t n = 100000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = sampler.sample();
  v.require(std::all_of(xs.begin(), xs.end(), [](double x) { return x >= 0.0 && x < 5.0; }),
            "sample outside [0,5)");
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  v.require(mean >= 2.45 && mean <= 2.55, "mean " + fmt(mean));
  std::sort(xs.begin(), xs.end());
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = xs[i] / 5.0;
    sup = std::max({sup, std::abs(static_cast<double>(i + 1) / n - cdf), std::abs(static_cast<double>(i) / n - cdf)});
  }
  v.require(sup < 0.01, "KS deviation " + fmt(sup));
  std::ostringstream note;
  note << "mean " << mean << ", sup deviation " << sup;
  v.note(note.str());
}

std::uint64_t negative_threshold_seed() {
  for (std::uint64_t seed = 0;; ++seed) {
    sched::Rng rng(seed, sched::kDataStream);
    if (!workload::generate_assignment(workload::TaskSpec{}, rng).ground_truth.exceeds) return seed;
  }
}

void agents(Verdict& v) {
  const auto seed = negative_threshold_seed();
  const auto serial = session::run_simulation(agent_config("blocking", "fixed:5", "threshold:80", "serial:0.5", seed));
  const auto eager = session::run_simulation(agent_config("cumulative", "fixed:5", "threshold:80", "eager:0.5", seed));
  const double slow = serial.metrics.completion_time;
  const double fast = eager.metrics.completion_time;
  v.require(std::abs(slow - 66.0) <= 1e-6, "serial+blocking " + fmt(slow));
  v.require(std::abs(fast - 11.0) <= 1e-6, "eager+cumulative " + fmt(fast));
  v.require(serial.correct && eager.correct, "wrong answer");
  v.require(fast < slow, "direction");
  std::ostringstream note;
  note << "serial+blocking " << slow << " s, eager+cumulative " << fast << " s";
  v.note(note.str());
}

void generator(Verdict& v) {
  const double cutoff = 80.0;
  const double margin = workload::GenerationParams{}.margin;
  std::size_t positives = 0;
  for (const auto& text : kTasks) {
    const auto task = workload::parse_task(text);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      sched::Rng rng(seed, sched::kDataStream);
      const auto a = workload::generate_assignment(task, rng);
      v.require(a.ground_truth == workload::oracle_answer(a), text + " seed " + std::to_string(seed));
      if (task.kind != workload::TaskKind::kThreshold) continue;
      const auto summaries = a.summaries();
      const auto above = std::count_if(summaries.begin(), summaries.end(),
                                       [&](double s) { return s >= cutoff + margin; });
      const auto near = std::count_if(summaries.begin(), summaries.end(), [&](double s) {
        return s > cutoff - margin && s < cutoff + margin;
      });
      v.require(near == 0, "summary within margin, seed " + std::to_string(seed));
      if (a.ground_truth.exceeds) {
        ++positives;
        v.require(above == 1, "positive with " + std::to_string(above) + " exceeding facets");
      } else {
        v.require(above == 0, "negative with an exceeding facet");
      }
    }
  }
  v.note("3 x 10000 assignments; " + std::to_string(positives) + " threshold positives");
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion("holm_constant", 1.0, holm_constant);
  criterion("signed_rank_exact", 5000.0, signed_rank_exact);
  criterion("rank_sum_exact", 10000.0, rank_sum_exact);
  criterion("concurrency_oracle", 0, concurrency);
  criterion("ordering_detectors", 0, ordering);
  criterion("buffer_safety", 0, buffer_safety);
  criterion("determinism_replay", 0, determinism);
  criterion("latency_sampler", 0, latency_sampler);
  criterion("agent_end_to_end", 0, agents);
  criterion("generator_round_trip", 0, generator);
  const double total = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%d criteria failed; total %.2f s\n", failures, total);
  return failures == 0 ? 0 : 1;
}
