#pragma once

#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/error.hpp"
#include "chronicle/types.hpp"

namespace chronicle::sched {

class VirtualClock {
 public:
  Seconds now() const { return now_; }

  void advance_to(Seconds t) {
    if (t < now_) {
      throw Error(ErrorCode::kScheduling, "virtual clock cannot move backward");
    }
    now_ = t;
  }

 private:
  Seconds now_ = 0.0;
};

template <typename Payload>
struct ScheduledEvent {
  Seconds due_at = 0.0;
  std::uint64_t seq = 0;
  Payload payload;
};

// Discrete-event queue over a virtual clock. Events come out in
// lexicographic (due_at, seq) order, so equal due times are FIFO.
template <typename Payload>
class EventQueue {
 public:
  ScheduledEvent<Payload> schedule(Payload payload, Seconds due_at) {
    if (due_at < clock_.now()) {
      throw Error(ErrorCode::kScheduling,
                  "cannot schedule at " + std::to_string(due_at) + ", clock is at " +
                      std::to_string(clock_.now()));
    }
    ScheduledEvent<Payload> event{due_at, next_seq_++, std::move(payload)};
    heap_.push(event);
    return event;
  }

  ScheduledEvent<Payload> advance() {
    if (heap_.empty()) throw Error(ErrorCode::kEmptyQueue, "advance on an empty event queue");
    ScheduledEvent<Payload> event = heap_.top();
    heap_.pop();
    clock_.advance_to(event.due_at);
    return event;
  }

  const ScheduledEvent<Payload>& peek() const {
    if (heap_.empty()) throw Error(ErrorCode::kEmptyQueue, "peek on an empty event queue");
    return heap_.top();
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Seconds now() const { return clock_.now(); }
  void advance_clock(Seconds t) { clock_.advance_to(t); }
  const VirtualClock& clock() const { return clock_; }

 private:
  struct Later {
    bool operator()(const ScheduledEvent<Payload>& a, const ScheduledEvent<Payload>& b) const {
      if (a.due_at != b.due_at) return a.due_at > b.due_at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<ScheduledEvent<Payload>, std::vector<ScheduledEvent<Payload>>, Later> heap_;
  VirtualClock clock_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace chronicle::sched
