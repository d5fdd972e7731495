#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <random>

#include "chronicle/analytics/trace_io.hpp"
#include "chronicle/error.hpp"
#include "chronicle/session/engine.hpp"
#include "chronicle/session/protocol.hpp"
#include "chronicle/session/replay.hpp"
#include "chronicle/session/simulation.hpp"
#include "fixtures.hpp"

using namespace chronicle;
using namespace chronicle::session;
using analytics::EventType;

namespace {

SessionConfig agent_config(const std::string& policy, const std::string& latency,
                           const std::string& task, const std::string& agent, std::uint64_t seed) {
  SessionConfig config;
  config.policy = parse_policy(policy);
  config.latency = sched::parse_latency(latency);
  config.task = workload::parse_task(task);
  config.agent = workload::parse_agent(agent);
  config.seed = seed;
  return config;
}

std::size_t line_of(const std::string& what) {
  const auto at = what.find("line ");
  REQUIRE(at != std::string::npos);
  return std::stoul(what.substr(at + 5));
}

std::vector<std::string> types_of(const std::vector<Json>& messages) {
  std::vector<std::string> out;
  for (const auto& m : messages) {
    out.push_back(m.at("type").get<std::string>());
    if (out.back() == "render") out.back() += ":" + m.at("directive").at("kind").get<std::string>();
  }
  return out;
}

}  // namespace

TEST_SUITE("session") {
  TEST_CASE("config JSON round trip") {
    auto config = agent_config("overlay:3:categorical", "uniform:0,5", "threshold:75", "eager:0.25", 9);
    config.participant = "p7";
    const auto j = to_json(config);
    CHECK(j.at("policy") == "overlay:3:categorical");
    CHECK(j.at("latency") == "uniform:0,5");
    const auto back = config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.seed == 9);

    const auto partial = config_from_json(Json{{"policy", "naive"}}, config);
    CHECK(partial.policy.kind == PolicyKind::kNaive);
    CHECK(partial.seed == 9);
    CHECK_THROWS_AS(config_from_json(Json{{"policy", "fancy"}}), Error);
  }

  TEST_CASE("engine logs every directive once") {
    SessionConfig config;
    config.policy = PolicySpec::small_multiples(2);
    config.latency = sched::LatencyProfile::fixed_delay(1.0);
    SessionEngine engine(config);
    CHECK(engine.trace().events.front().type == EventType::kSessionStart);
    engine.issue("Jan", 0.0);
    engine.issue("Feb", 0.5);
    engine.issue("Mar", 0.7);
    CHECK_THROWS_AS(engine.issue("Smarch", 0.8), Error);
    CHECK_THROWS_AS(engine.issue("Apr", 0.1), Error);
    engine.advance_until(10.0);
    CHECK_FALSE(engine.next_due());
    std::size_t logged = 0;
    for (const auto& e : engine.trace().events) {
      switch (e.type) {
        case EventType::kSessionStart:
        case EventType::kRequestIssued:
        case EventType::kResponseArrived:
        case EventType::kDroppedResponse:
        case EventType::kAnswerSubmitted:
        case EventType::kSessionEnd: break;
        default: ++logged;
      }
    }
    CHECK(logged == engine.directives().size());
    CHECK(engine.trace().count(EventType::kDroppedResponse) == 1);
    CHECK(engine.submit(engine.assignment().ground_truth, 11.0));
    engine.end(11.0);
    engine.end(12.0);
    CHECK(engine.trace().count(EventType::kSessionEnd) == 1);
  }

  TEST_CASE("replay verifies simulated traces") {
    const char* policies[] = {"blocking", "naive", "cumulative", "multiples:4",
                              "overlay:3:ordinal", "overlay:5:categorical", "animation:0.5",
                              "animation:0.25:unordered"};
    const char* tasks[] = {"threshold:80", "maximum", "trend"};
    const char* agents[] = {"serial:0.5", "eager:0.3"};
    std::size_t runs = 0;
    for (const char* policy : policies) {
      for (const char* task : tasks) {
        for (const char* agent : agents) {
          for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const auto s = run_simulation(agent_config(policy, "uniform:0,5", task, agent, seed));
            const auto r = replay(s.trace);
            CHECK(r.history == s.directives);
            CHECK(r.events_checked + 1 == s.trace.events.size());
            ++runs;
          }
        }
      }
    }
    CHECK(runs == 192);
  }

  TEST_CASE("replay detects tampering") {
    const auto s = run_simulation(agent_config("multiples:3", "uniform:0,5", "maximum", "eager:0.5", 3));
    auto trace = s.trace;
    std::size_t index = 0;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      if (trace.events[i].type == EventType::kRenderApplied) {
        index = i;
        break;
      }
    }
    REQUIRE(index > 0);
    trace.events[index].slot = 9;
    try {
      replay(trace);
      FAIL("expected a divergence");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kReplayDivergence);
      CHECK(line_of(e.what()) == index + 1);
    }
    CHECK_NOTHROW(replay(trace, false));

    analytics::Trace empty;
    CHECK_THROWS_AS(replay(empty), Error);
  }

  TEST_CASE("simulations are deterministic and persisted byte for byte") {
    const auto config = agent_config("overlay:4:ordinal", "uniform:0,5", "trend", "eager:0.5", 42);
    const auto a = run_simulation(config, "det_a.jsonl");
    const auto b = run_simulation(config, "det_b.jsonl");
    CHECK(a.trace_path == "det_a.jsonl");
    CHECK(a.trace == b.trace);
    std::ifstream fa("det_a.jsonl");
    std::ifstream fb("det_b.jsonl");
    std::stringstream sa;
    std::stringstream sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK_FALSE(sa.str().empty());
    const auto other = run_simulation(agent_config("overlay:4:ordinal", "uniform:0,5", "trend", "eager:0.5", 43));
    CHECK_FALSE(other.trace == a.trace);
  }

  TEST_CASE("simulation errors") {
    auto config = agent_config("naive", "fixed:1", "maximum", "serial:0.5", 1);
    config.latency = sched::LatencyProfile::trace({1.0, 1.0});
    try {
      run_simulation(config);
      FAIL("expected the latency trace to run out");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kExhaustedProfile);
    }
    SessionConfig no_agent;
    CHECK_THROWS_AS(run_simulation(no_agent), Error);
  }

  TEST_CASE("directive JSON round trip") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 50; ++round) {
      const auto s = fixtures::run_random(rng, fixtures::random_policy(rng));
      for (const auto& d : s.directives) CHECK(directive_from_json(to_json(d)) == d);
    }
    CHECK_THROWS_AS(directive_from_json(Json{{"kind", "explode"}}), Error);
  }

  TEST_CASE("live session protocol") {
    const auto dir = std::filesystem::path("live_traces");
    std::filesystem::remove_all(dir);
    SessionConfig defaults;
    defaults.latency = sched::LatencyProfile::fixed_delay(2.0);
    LiveSession live(defaults, dir.string());

    auto out = live.handle_client_text(R"({"type":"interact","target":"Jan"})", 0.0);
    REQUIRE(out.size() == 1);
    CHECK(out[0].at("code") == "protocol");
    out = live.handle_client_text("{nope", 0.0);
    CHECK(out[0].at("code") == "malformed");
    out = live.handle_client_text(R"({"type":"hello","config":{"agent":"serial:1"}})", 0.0);
    CHECK(out[0].at("code") == "configuration");
    CHECK_FALSE(live.established());

    out = live.handle_client_text(R"({"type":"hello","config":{"policy":"cumulative","seed":5}})", 10.0);
    REQUIRE(out.size() == 1);
    CHECK(out[0].at("type") == "config_ack");
    CHECK(out[0].at("facets").size() == 12);
    CHECK(out[0].at("policy") == "cumulative");
    CHECK(live.engine()->config().pace == Pace::kRealtime);

    out = live.handle_client_text(R"({"type":"interact","target":"Smarch"})", 10.5);
    CHECK(out[0].at("code") == "unknown_facet");
    out = live.handle_client_text(R"({"type":"interact","target":"Jan","client_time":0.5})", 10.5);
    CHECK(types_of(out) == std::vector<std::string>{"render:SpinnerOn"});
    CHECK(out[0].at("directive").at("at") == 0.5);
    REQUIRE(live.next_due());
    CHECK(*live.next_due() == 12.5);
    CHECK(live.poll(11.0).empty());
    out = live.poll(12.6);
    CHECK(types_of(out) == std::vector<std::string>{"render:RenderResponse", "render:SpinnerOff"});
    CHECK_FALSE(out[0].at("directive").at("series").empty());

    const auto truth = answer_to_json(live.engine()->assignment().ground_truth);
    out = live.handle_client_message(Json{{"type", "submit_answer"}, {"answer", truth}}, 13.0);
    REQUIRE(out.back().at("type") == "summary");
    CHECK(out.back().at("correct") == true);
    CHECK(out.back().at("metrics").at("completion_time") == 3.0);
    REQUIRE(live.last_trace_path());
    CHECK(out.back().at("trace_path") == *live.last_trace_path());
    CHECK(live.finished());

    const auto saved = analytics::load_trace(*live.last_trace_path()).trace;
    CHECK(saved == live.engine()->trace());
    CHECK_NOTHROW(replay(saved));

    out = live.handle_client_text(R"({"type":"interact","target":"Jan"})", 14.0);
    CHECK(out[0].at("code") == "protocol");
    out = live.handle_client_text(R"({"type":"hello"})", 20.0);
    CHECK(out[0].at("type") == "config_ack");
    CHECK(live.engine()->config().policy.kind == PolicyKind::kBlocking);
  }

  TEST_CASE("live and headless runs agree") {
    std::mt19937_64 rng(22);
    for (int round = 0; round < 100; ++round) {
      const auto policy = fixtures::random_policy(rng);
      const auto schedule = fixtures::random_schedule(rng);
      SessionConfig defaults;
      defaults.policy = policy;
      defaults.latency = sched::LatencyProfile::trace(schedule.latencies);
      defaults.seed = round;
      LiveSession live(defaults);
      const double origin = 100.0;
      live.handle_client_message(Json{{"type", "hello"}}, origin);
      Directives streamed;
      auto collect = [&](const std::vector<Json>& messages) {
        for (const auto& m : messages) {
          if (m.at("type") == "render") streamed.push_back(directive_from_json(m.at("directive")));
        }
      };
      for (const auto& hover : schedule.hovers) {
        while (live.next_due() && *live.next_due() - origin <= hover.at) {
          collect(live.poll(*live.next_due()));
        }
        collect(live.handle_client_message(Json{{"type", "interact"}, {"target", hover.target}},
                                           origin + hover.at));
      }
      collect(live.handle_client_message(Json{{"type", "submit_answer"}, {"answer", false}},
                                         origin + schedule.submit_at));
      const auto& live_trace = live.engine()->trace();

      const auto recorded = recorded_schedule(live_trace);
      SessionConfig headless = live.engine()->config();
      headless.pace = Pace::kVirtual;
      headless.latency = sched::LatencyProfile::trace(recorded.latencies);
      const auto end = live_trace.end_time();
      const auto s = run_scripted(headless, recorded.hovers, workload::Answer::threshold(false), end);
      CHECK(s.directives == streamed);
      CHECK(s.directives == live.engine()->directives());
    }
  }
}
