#include "chronicle/workload/agent.hpp"

#include <algorithm>

#include "chronicle/error.hpp"
#include "chronicle/text.hpp"

namespace chronicle::workload {

AgentSpec parse_agent(std::string_view text) {
  auto colon = text.find(':');
  auto head = text.substr(0, colon);
  AgentSpec spec;
  if (head == "serial") {
    spec.kind = AgentKind::kSelfSerializing;
  } else if (head == "eager") {
    spec.kind = AgentKind::kEager;
  } else {
    throw Error(ErrorCode::kConfiguration, "unrecognized agent '" + std::string(text) +
                                               "' (expected serial:THINK|eager:THINK)");
  }
  if (colon != std::string_view::npos) {
    spec.think = text::parse_double(text.substr(colon + 1), "agent think time");
  }
  if (!(spec.think >= 0.0)) throw Error(ErrorCode::kConfiguration, "think time must be >= 0");
  return spec;
}

std::string to_string(const AgentSpec& agent) {
  return std::string(agent.kind == AgentKind::kEager ? "eager:" : "serial:") +
         text::format_double(agent.think);
}

Agent::Agent(AgentSpec spec, TaskSpec task) : spec_(spec), task_(std::move(task)) {}

void Agent::observe(const std::vector<VisibleEntry>& view) {
  for (const auto& entry : view) {
    if (entry.state != EntryState::kRendered || !entry.series) continue;
    if (!read_.insert(entry.target).second) continue;
    const double value = series_mean(*entry.series);
    if (task_.kind == TaskKind::kThreshold && value > task_.cutoff) saw_exceeding_ = true;
    memory_.emplace_back(entry.target, value);
    if (spec_.mem_size && memory_.size() > *spec_.mem_size) memory_.pop_front();
  }
}

std::optional<double> Agent::remembered(const Target& facet) const {
  for (const auto& [name, value] : memory_) {
    if (name == facet) return value;
  }
  return std::nullopt;
}

std::optional<Answer> Agent::conclusion() const {
  const bool all_read = read_.size() == task_.facets.size();
  switch (task_.kind) {
    case TaskKind::kThreshold:
      if (saw_exceeding_) return Answer::threshold(true);
      if (all_read) return Answer::threshold(false);
      return std::nullopt;
    case TaskKind::kMaximum: {
      if (!all_read || memory_.empty()) return std::nullopt;
      auto best = std::max_element(memory_.begin(), memory_.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
      return Answer::maximum(best->first);
    }
    case TaskKind::kTrend: {
      if (spec_.early_exit_k && *spec_.early_exit_k >= 1 &&
          *spec_.early_exit_k < task_.facets.size()) {
        std::vector<double> prefix;
        for (std::size_t i = 0; i <= *spec_.early_exit_k; ++i) {
          auto v = remembered(task_.facets[i]);
          if (!v) break;
          prefix.push_back(*v);
        }
        if (prefix.size() == *spec_.early_exit_k + 1) {
          bool up = true;
          bool down = true;
          for (std::size_t i = 1; i < prefix.size(); ++i) {
            up = up && prefix[i] > prefix[i - 1];
            down = down && prefix[i] < prefix[i - 1];
          }
          if (up) return Answer::of_trend(TrendLabel::kIncreasing);
          if (down) return Answer::of_trend(TrendLabel::kDecreasing);
        }
      }
      if (!all_read) return std::nullopt;
      std::vector<double> ordered;
      for (const auto& facet : task_.facets) {
        if (auto v = remembered(facet)) ordered.push_back(*v);
      }
      return Answer::of_trend(classify_trend(ordered));
    }
  }
  return std::nullopt;
}

std::optional<Target> Agent::next_unread(const std::vector<VisibleEntry>& view) const {
  for (const auto& facet : task_.facets) {
    if (read_.count(facet) != 0) continue;
    bool loading = std::any_of(view.begin(), view.end(), [&](const VisibleEntry& e) {
      return e.target == facet && e.state == EntryState::kPending;
    });
    if (!loading) return facet;
  }
  return std::nullopt;
}

Action Agent::serial_step(const std::vector<VisibleEntry>& view, Seconds now) {
  const bool loading = std::any_of(view.begin(), view.end(), [](const VisibleEntry& e) {
    return e.state == EntryState::kPending;
  });
  if (loading) {
    ready_since_.reset();
    return Wait{};
  }
  if (!ready_since_) ready_since_ = now;
  const Seconds next = *ready_since_ + spec_.think;
  if (now < next) return Wait{next};
  auto target = next_unread(view);
  if (!target) return Wait{};
  ready_since_.reset();
  ++hovers_;
  last_hover_ = now;
  return Hover{*target};
}

Action Agent::decide(const std::vector<VisibleEntry>& view, Seconds now) {
  observe(view);
  if (auto answer = conclusion()) return Submit{*answer};

  if (spec_.kind == AgentKind::kEager && sweep_cursor_ < task_.facets.size()) {
    const Seconds next = last_hover_ + spec_.think;
    if (now < next) return Wait{next};
    ++hovers_;
    last_hover_ = now;
    return Hover{task_.facets[sweep_cursor_++]};
  }
  return serial_step(view, now);
}

}  // namespace chronicle::workload
