#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chronicle/types.hpp"
#include "chronicle/workload/task.hpp"

namespace chronicle::workload {

enum class AgentKind { kSelfSerializing, kEager };

struct AgentSpec {
  AgentKind kind = AgentKind::kSelfSerializing;
  Seconds think = 0.5;
  // Facet values remembered at once; unset means unlimited.
  std::optional<std::size_t> mem_size;
  // Trend only: answer once the first k differences agree in sign.
  std::optional<std::size_t> early_exit_k;
};

// Text syntax: serial:THINK | eager:THINK
AgentSpec parse_agent(std::string_view text);
std::string to_string(const AgentSpec& agent);

struct Hover {
  Target target;
};
struct Wait {
  std::optional<Seconds> until;  // unset: until the next screen change
};
struct Submit {
  Answer answer;
};
using Action = std::variant<Hover, Wait, Submit>;

// A simulated participant. Its only input is the visible screen state; it
// reads every rendered entry it sees and remembers the facet summaries.
//
// SelfSerializing waits until nothing is loading, pauses `think`, then hovers
// the next unread facet. Eager hovers a new facet every `think` seconds
// regardless of loading state until every facet was hovered once; facets whose
// responses never became visible are then retried one at a time.
class Agent {
 public:
  Agent(AgentSpec spec, TaskSpec task);

  Action decide(const std::vector<VisibleEntry>& view, Seconds now);

  const AgentSpec& spec() const { return spec_; }
  std::size_t facts_read() const { return read_.size(); }
  std::size_t hovers() const { return hovers_; }

 private:
  void observe(const std::vector<VisibleEntry>& view);
  std::optional<Answer> conclusion() const;
  std::optional<Target> next_unread(const std::vector<VisibleEntry>& view) const;
  std::optional<double> remembered(const Target& facet) const;
  Action serial_step(const std::vector<VisibleEntry>& view, Seconds now);

  AgentSpec spec_;
  TaskSpec task_;
  std::set<Target> read_;
  std::deque<std::pair<Target, double>> memory_;
  bool saw_exceeding_ = false;
  std::size_t sweep_cursor_ = 0;
  std::size_t hovers_ = 0;
  Seconds last_hover_ = 0.0;
  std::optional<Seconds> ready_since_;
};

}  // namespace chronicle::workload
