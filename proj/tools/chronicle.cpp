// chronicle: simulate sessions, analyze traces, serve live sessions, replay logs.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "chronicle/analytics/report.hpp"
#include "chronicle/analytics/trace_io.hpp"
#include "chronicle/error.hpp"
#include "chronicle/session/protocol.hpp"
#include "chronicle/session/replay.hpp"
#include "chronicle/session/server.hpp"
#include "chronicle/session/simulation.hpp"

namespace fs = std::filesystem;
using namespace chronicle;
using analytics::Json;

namespace {

int fail(std::string_view code, std::string_view detail) {
  Json j{{"error", {{"code", std::string(code)}, {"detail", std::string(detail)}}}};
  std::cerr << j.dump() << std::endl;
  return 1;
}

struct SimulateArgs {
  std::string policy = "blocking";
  std::string latency = "none";
  std::string task = "threshold:80";
  std::string agent = "serial:0.5";
  std::uint64_t seed = 0;
  std::string out;
  std::size_t runs = 1;
  std::string participant;
};

int simulate(const SimulateArgs& args) {
  session::SessionConfig config;
  config.policy = parse_policy(args.policy);
  config.latency = sched::parse_latency(args.latency);
  config.task = workload::parse_task(args.task);
  config.agent = workload::parse_agent(args.agent);
  config.participant = args.participant;

  if (args.runs > 1 && !args.out.empty()) fs::create_directories(args.out);
  for (std::size_t run = 0; run < args.runs; ++run) {
    config.seed = args.seed + run;
    std::optional<std::string> out;
    if (!args.out.empty()) {
      out = args.runs > 1 ? (fs::path(args.out) / ("run-" + std::to_string(config.seed) + ".jsonl")).string()
                          : args.out;
    }
    const auto summary = session::run_simulation(config, out);
    Json line;
    line["config"] = session::to_json(summary.config);
    line["metrics"] = analytics::to_json(summary.metrics);
    line["answer"] = summary.answer ? session::answer_to_json(*summary.answer) : Json();
    line["correct"] = summary.correct;
    if (!summary.trace_path.empty()) line["trace_path"] = summary.trace_path;
    std::cout << line.dump() << '\n';
  }
  return 0;
}

std::vector<std::string> expand_paths(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

struct AnalyzeArgs {
  std::vector<std::string> paths;
  bool clean = false;
  std::string metrics;
  std::vector<std::string> compare;
  std::string test = "rank-sum";
  std::string group_by = "policy";
  double alpha = 0.05;
  std::string correction = "none";
  double flash_window = analytics::kDefaultFlashWindow;
  bool json = false;
};

int analyze(const AnalyzeArgs& args) {
  analytics::AnalysisOptions options;
  options.clean = args.clean;
  if (!args.metrics.empty()) options.metrics = analytics::parse_metric_list(args.metrics);
  options.group_by = args.group_by;
  options.test = analytics::parse_two_sample_test(args.test);
  options.alpha = args.alpha;
  options.flash_window = args.flash_window;
  if (args.correction == "holm") {
    options.holm = true;
  } else if (args.correction != "none") {
    throw Error(ErrorCode::kConfiguration, "unknown correction '" + args.correction + "'");
  }
  for (std::size_t i = 0; i + 1 < args.compare.size(); i += 2) {
    options.compare.emplace_back(args.compare[i], args.compare[i + 1]);
  }

  std::vector<analytics::LabeledTrace> traces;
  for (const auto& file : expand_paths(args.paths)) {
    auto loaded = analytics::load_trace(file);
    const auto participant = analytics::participant_of(loaded.trace);
    traces.push_back({participant, std::move(loaded.trace), file});
  }
  if (traces.empty()) throw Error(ErrorCode::kIo, "no trace files found");

  const auto report = analytics::analyze(std::move(traces), options);
  if (args.json) {
    std::cout << analytics::to_json(report).dump(2) << '\n';
  } else {
    std::cout << analytics::to_table(report);
  }
  return 0;
}

int serve(unsigned short port, const std::string& config_path, const std::string& trace_dir,
          const std::string& address) {
  session::Server::Options options;
  options.address = address;
  options.port = port;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + config_path + "'");
    Json config;
    try {
      config = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParse, config_path + ": " + e.what());
    }
    options.defaults = session::config_from_json(config);
  }
  options.defaults.agent.reset();
  options.defaults.pace = session::Pace::kRealtime;
  if (!trace_dir.empty()) options.trace_dir = trace_dir;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  session::Server server(std::move(options));
  std::cout << Json{{"listening", {{"address", address}, {"port", server.port()}}}}.dump()
            << std::endl;
  std::thread io([&server] { server.run(); });
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  io.join();
  return 0;
}

int replay(const std::string& path, bool verify, bool print) {
  auto loaded = analytics::load_trace(path);
  const auto result = session::replay(loaded.trace, verify);
  if (print) {
    for (const auto& d : result.history) std::cout << session::to_json(d).dump() << '\n';
  }
  std::cout << Json{{"events", result.events_checked},
                    {"directives", result.history.size()},
                    {"verified", verify}}
                   .dump()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous rendering chronicle: simulation, analysis, live sessions, replay"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run agent-driven sessions headless");
  simulate_cmd->add_option("--policy", sim.policy,
                           "blocking|naive|cumulative|multiples:K|overlay:K:ordinal|"
                           "overlay:K:categorical|animation:DWELL")
      ->capture_default_str();
  simulate_cmd->add_option("--latency", sim.latency, "none|fixed:S|uniform:LO,HI|trace:PATH")
      ->capture_default_str();
  simulate_cmd->add_option("--task", sim.task, "threshold:CUT|maximum|trend")->capture_default_str();
  simulate_cmd->add_option("--agent", sim.agent, "serial:THINK|eager:THINK")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Seed of the first run")->capture_default_str();
  simulate_cmd->add_option("--out", sim.out, "Trace file (a directory when --runs > 1)");
  simulate_cmd->add_option("--runs", sim.runs, "Number of runs with consecutive seeds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate_cmd->add_option("--participant", sim.participant, "Participant label stored in the trace");

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Metrics and tests over trace files");
  analyze_cmd->add_option("paths", an.paths, "Trace files or directories of .jsonl")->required();
  analyze_cmd->add_flag("--clean", an.clean, "Apply the log-cleaning rules first");
  analyze_cmd->add_option("--metrics", an.metrics,
                          "Comma list: completion_time,accuracy,concurrency_fraction,"
                          "out_of_order,mismatch,flashing");
  analyze_cmd->add_option("--compare", an.compare, "Compare group A against group B (repeatable)")
      ->expected(2)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  analyze_cmd->add_option("--test", an.test, "signed-rank|rank-sum")->capture_default_str();
  analyze_cmd->add_option("--group-by", an.group_by, "policy|latency|task|agent|participant")
      ->capture_default_str();
  analyze_cmd->add_option("--alpha", an.alpha)->capture_default_str();
  analyze_cmd->add_option("--correction", an.correction, "none|holm")->capture_default_str();
  analyze_cmd->add_option("--flash-window", an.flash_window, "Seconds")->capture_default_str();
  analyze_cmd->add_flag("--json", an.json, "JSON instead of tables");

  unsigned short port = 8765;
  std::string config_path;
  std::string trace_dir;
  std::string address = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Serve live sessions over WebSocket");
  serve_cmd->add_option("--port", port, "0 picks a free port")->capture_default_str();
  serve_cmd->add_option("--config", config_path, "JSON file with default session settings");
  serve_cmd->add_option("--trace-dir", trace_dir, "Where finished sessions are written");
  serve_cmd->add_option("--address", address)->capture_default_str();

  std::string replay_path;
  bool verify = false;
  bool print = false;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a trace through a fresh buffer");
  replay_cmd->add_option("path", replay_path)->required();
  replay_cmd->add_flag("--verify", verify, "Fail on the first event that differs");
  replay_cmd->add_flag("--print", print, "Print the reconstructed directives");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate_cmd) return simulate(sim);
    if (*analyze_cmd) return analyze(an);
    if (*serve_cmd) return serve(port, config_path, trace_dir, address);
    if (*replay_cmd) return replay(replay_path, verify, print);
  } catch (const Error& e) {
    return fail(error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
