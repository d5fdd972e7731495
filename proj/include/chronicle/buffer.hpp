#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "chronicle/policy.hpp"
#include "chronicle/types.hpp"

namespace chronicle {

// The chronicle: a bounded, req_id-ordered set of request/response pairs
// together with their slots and correspondence encodings.
//
// Every mutation returns the directives a renderer needs to apply to stay in
// sync; snapshot() always equals the cumulative effect of those directives.
//
// Single-slot policies (Blocking, Naive, Animation) keep at most one live
// entry, the one currently owning slot 0. Under Naive and Animation a pending
// entry that loses the slot is "detached": it stays in flight and its response
// still renders in place when it arrives. Under Blocking it is cancelled.
//
// Not thread-safe; one buffer per session.
class ChronicleBuffer {
 public:
  enum class Fate { kLive, kDetached, kCancelled, kEvicted };

  // `targets` lists the facet identifiers; required for Cumulative, where
  // each target owns a fixed placeholder slot.
  explicit ChronicleBuffer(PolicySpec policy, std::vector<Target> targets = {});

  Directives admit_request(const InteractionRequest& request);
  Directives admit_response(const ResponsePayload& payload);

  // Animation only: releases held responses whose order and dwell
  // constraints are satisfied at `now`. No-op for other policies.
  Directives release_due(Seconds now);
  std::optional<Seconds> next_release_at() const;

  std::map<ReqId, EncodingToken> assign_encoding(EncodingScheme scheme) const;
  std::vector<VisibleEntry> snapshot() const;

  // Most recent distinct targets among the last `depth` requests, ranked by
  // recency (0 = most recent).
  std::map<Target, unsigned> widget_history(std::size_t depth) const;

  const PolicySpec& policy() const { return policy_; }
  std::size_t capacity() const { return capacity_; }
  const std::vector<ChronicleEntry>& entries() const { return entries_; }
  const std::vector<Target>& targets() const { return targets_; }
  Seconds now() const { return now_; }
  std::size_t dropped_count() const { return dropped_; }
  std::size_t held_count() const { return held_.size(); }
  std::optional<Fate> fate(ReqId id) const;

 private:
  bool single_slot() const;
  int free_slot() const;
  EncodingToken token_for(ReqId id) const;
  void rerank();
  std::vector<ChronicleEntry>::iterator find_live(ReqId id);

  void evict_live(std::vector<ChronicleEntry>::iterator it, Seconds at,
                  Directives& out);
  void render_in_place(ReqId id, Series series, Seconds at, Directives& out);
  void release(ResponsePayload payload, Directives& out);
  void drain_releases(Directives& out);

  PolicySpec policy_;
  std::vector<Target> targets_;
  std::size_t capacity_ = 1;

  std::vector<ChronicleEntry> entries_;
  std::map<ReqId, ChronicleEntry> detached_;
  std::map<ReqId, Fate> fates_;
  std::set<ReqId> responded_;
  std::vector<InteractionRequest> requests_;

  // Animation bookkeeping.
  std::set<ReqId> awaiting_;
  std::deque<ResponsePayload> held_;
  std::optional<Seconds> last_release_;

  std::optional<ReqId> last_req_id_;
  Seconds now_ = 0.0;
  std::size_t dropped_ = 0;
};

}  // namespace chronicle
