#include "chronicle/buffer.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "chronicle/error.hpp"

namespace chronicle {

namespace {

RenderDirective make_directive(DirectiveKind kind, const ChronicleEntry& entry,
                               Seconds at) {
  RenderDirective d;
  d.kind = kind;
  d.req_id = entry.request.req_id;
  d.slot = entry.slot;
  d.at = at;
  d.target = entry.request.target;
  return d;
}

std::string id_text(ReqId id) { return "req " + std::to_string(id); }

}  // namespace

ChronicleBuffer::ChronicleBuffer(PolicySpec policy, std::vector<Target> targets)
    : policy_(policy), targets_(std::move(targets)) {
  switch (policy_.kind) {
    case PolicyKind::kBlocking:
    case PolicyKind::kNaive:
    case PolicyKind::kAnimation:
      policy_.cap = 1;
      break;
    case PolicyKind::kCumulative:
      if (targets_.empty()) {
        throw Error(ErrorCode::kConfiguration,
                    "cumulative policy needs the list of targets");
      }
      policy_.cap = targets_.size();
      break;
    case PolicyKind::kSmallMultiples:
    case PolicyKind::kOverlay:
      break;
  }
  if (policy_.cap < 1) {
    throw Error(ErrorCode::kConfiguration, "buffer capacity must be >= 1");
  }
  if (policy_.kind == PolicyKind::kAnimation && !(policy_.min_dwell >= 0.0)) {
    throw Error(ErrorCode::kConfiguration, "animation dwell must be >= 0");
  }
  capacity_ = policy_.cap;
}

bool ChronicleBuffer::single_slot() const { return is_single_slot(policy_.kind); }

std::optional<ChronicleBuffer::Fate> ChronicleBuffer::fate(ReqId id) const {
  auto it = fates_.find(id);
  if (it == fates_.end()) return std::nullopt;
  return it->second;
}

std::vector<ChronicleEntry>::iterator ChronicleBuffer::find_live(ReqId id) {
  return std::find_if(entries_.begin(), entries_.end(),
                      [id](const ChronicleEntry& e) { return e.request.req_id == id; });
}

int ChronicleBuffer::free_slot() const {
  for (int slot = 0;; ++slot) {
    bool used = std::any_of(entries_.begin(), entries_.end(),
                            [slot](const ChronicleEntry& e) { return e.slot == slot; });
    if (!used) return slot;
  }
}

EncodingToken ChronicleBuffer::token_for(ReqId id) const {
  if (policy_.scheme == EncodingScheme::kCategorical) {
    return {EncodingScheme::kCategorical,
            static_cast<unsigned>(id % kCategoricalPaletteSize)};
  }
  return {EncodingScheme::kOrdinal, 0};
}

void ChronicleBuffer::rerank() {
  if (policy_.scheme != EncodingScheme::kOrdinal) return;
  // entries_ is ordered by req_id, so the last entry is the most recent.
  const auto n = static_cast<unsigned>(entries_.size());
  for (unsigned i = 0; i < n; ++i) {
    entries_[i].encoding = {EncodingScheme::kOrdinal, n - 1 - i};
  }
}

void ChronicleBuffer::evict_live(std::vector<ChronicleEntry>::iterator it,
                                 Seconds at, Directives& out) {
  out.push_back(make_directive(DirectiveKind::kEvict, *it, at));
  fates_[it->request.req_id] = Fate::kEvicted;
  entries_.erase(it);
}

Directives ChronicleBuffer::admit_request(const InteractionRequest& request) {
  if (last_req_id_ && request.req_id <= *last_req_id_) {
    throw Error(ErrorCode::kProtocolViolation,
                id_text(request.req_id) + " is not greater than last admitted " +
                    id_text(*last_req_id_));
  }
  if (request.issued_at < now_) {
    throw Error(ErrorCode::kProtocolViolation,
                id_text(request.req_id) + " issued before current buffer time");
  }
  int slot = 0;
  if (policy_.kind == PolicyKind::kCumulative) {
    auto pos = std::find(targets_.begin(), targets_.end(), request.target);
    if (pos == targets_.end()) {
      throw Error(ErrorCode::kProtocolViolation,
                  "unknown target '" + request.target + "'");
    }
    slot = static_cast<int>(pos - targets_.begin());
  }

  const Seconds at = request.issued_at;
  now_ = at;
  last_req_id_ = request.req_id;
  requests_.push_back(request);
  fates_[request.req_id] = Fate::kLive;
  if (policy_.kind == PolicyKind::kAnimation) awaiting_.insert(request.req_id);

  Directives out;
  switch (policy_.kind) {
    case PolicyKind::kBlocking:
    case PolicyKind::kNaive:
    case PolicyKind::kAnimation:
      if (!entries_.empty()) {
        auto owner = entries_.begin();
        if (owner->state == EntryState::kRendered) {
          evict_live(owner, at, out);
        } else if (policy_.kind == PolicyKind::kBlocking) {
          out.push_back(make_directive(DirectiveKind::kCancel, *owner, at));
          fates_[owner->request.req_id] = Fate::kCancelled;
          entries_.erase(owner);
        } else {
          fates_[owner->request.req_id] = Fate::kDetached;
          detached_.emplace(owner->request.req_id, std::move(*owner));
          entries_.erase(owner);
        }
      }
      slot = 0;
      break;
    case PolicyKind::kCumulative: {
      auto same = std::find_if(entries_.begin(), entries_.end(),
                               [slot](const ChronicleEntry& e) { return e.slot == slot; });
      if (same != entries_.end()) evict_live(same, at, out);
      break;
    }
    case PolicyKind::kSmallMultiples:
    case PolicyKind::kOverlay:
      if (entries_.size() >= capacity_) evict_live(entries_.begin(), at, out);
      slot = free_slot();
      break;
  }

  ChronicleEntry entry;
  entry.request = request;
  entry.slot = slot;
  entry.encoding = token_for(request.req_id);
  entry.state = EntryState::kPending;
  entries_.push_back(std::move(entry));
  rerank();

  auto& added = entries_.back();
  auto spinner = make_directive(DirectiveKind::kSpinnerOn, added, at);
  spinner.encoding = added.encoding;
  out.push_back(std::move(spinner));

  // Ordinal ranks are relative, so any change in membership re-sends the ramp.
  if (!single_slot() && policy_.scheme == EncodingScheme::kOrdinal &&
      entries_.size() >= 2) {
    for (const auto& e : entries_) {
      auto d = make_directive(DirectiveKind::kRecolor, e, at);
      d.encoding = e.encoding;
      out.push_back(std::move(d));
    }
  }
  return out;
}

void ChronicleBuffer::render_in_place(ReqId id, Series series, Seconds at,
                                      Directives& out) {
  ChronicleEntry entry;
  if (auto it = find_live(id); it != entries_.end()) {
    entry = std::move(*it);
    entries_.erase(it);
  } else {
    auto node = detached_.extract(id);
    entry = std::move(node.mapped());
    if (!entries_.empty()) {
      auto owner = entries_.begin();
      if (owner->state == EntryState::kRendered) {
        evict_live(owner, at, out);
      } else {
        fates_[owner->request.req_id] = Fate::kDetached;
        detached_.emplace(owner->request.req_id, std::move(*owner));
        entries_.erase(owner);
      }
    }
  }
  entry.slot = 0;
  entry.encoding = token_for(id);
  entry.state = EntryState::kRendered;
  entry.response = ResponsePayload{id, series, at};
  fates_[id] = Fate::kLive;

  auto render = make_directive(DirectiveKind::kReplaceInPlace, entry, at);
  render.encoding = entry.encoding;
  render.series = std::move(series);
  out.push_back(std::move(render));
  out.push_back(make_directive(DirectiveKind::kSpinnerOff, entry, at));
  entries_.push_back(std::move(entry));
}

void ChronicleBuffer::release(ResponsePayload payload, Directives& out) {
  const ReqId id = payload.req_id;
  RenderDirective d;
  d.kind = DirectiveKind::kRelease;
  d.req_id = id;
  d.slot = 0;
  d.at = now_;
  auto req = std::find_if(requests_.begin(), requests_.end(),
                          [id](const InteractionRequest& r) { return r.req_id == id; });
  d.target = req->target;
  out.push_back(std::move(d));
  last_release_ = now_;
  render_in_place(id, std::move(payload.series), now_, out);
}

Directives ChronicleBuffer::admit_response(const ResponsePayload& payload) {
  const ReqId id = payload.req_id;
  auto fate_it = fates_.find(id);
  if (fate_it == fates_.end()) {
    throw Error(ErrorCode::kUnknownRequest, id_text(id) + " was never admitted");
  }
  if (responded_.count(id) != 0) {
    throw Error(ErrorCode::kDuplicateResponse, "duplicate response for " + id_text(id));
  }
  if (payload.arrived_at < now_) {
    throw Error(ErrorCode::kProtocolViolation,
                "response for " + id_text(id) + " arrives before current buffer time");
  }
  if (payload.series.empty()) {
    throw Error(ErrorCode::kProtocolViolation,
                "response for " + id_text(id) + " has an empty series");
  }
  auto req = std::find_if(requests_.begin(), requests_.end(),
                          [id](const InteractionRequest& r) { return r.req_id == id; });
  if (payload.arrived_at < req->issued_at) {
    throw Error(ErrorCode::kProtocolViolation,
                "response for " + id_text(id) + " arrives before its request");
  }

  now_ = payload.arrived_at;
  responded_.insert(id);

  Directives out;
  const Fate fate = fate_it->second;
  if (fate == Fate::kCancelled || fate == Fate::kEvicted) {
    ++dropped_;
    return out;
  }

  switch (policy_.kind) {
    case PolicyKind::kBlocking:
    case PolicyKind::kNaive:
      render_in_place(id, payload.series, now_, out);
      break;
    case PolicyKind::kAnimation: {
      awaiting_.erase(id);
      if (policy_.in_order) {
        auto pos = std::find_if(held_.begin(), held_.end(),
                                [id](const ResponsePayload& p) { return p.req_id > id; });
        held_.insert(pos, payload);
      } else {
        held_.push_back(payload);
      }
      Directives released;
      drain_releases(released);
      const bool shown = std::any_of(released.begin(), released.end(), [id](const auto& d) {
        return d.kind == DirectiveKind::kRelease && d.req_id == id;
      });
      if (!shown) {
        RenderDirective d;
        d.kind = DirectiveKind::kHold;
        d.req_id = id;
        d.slot = 0;
        d.at = now_;
        d.target = req->target;
        out.push_back(std::move(d));
      }
      out.insert(out.end(), released.begin(), released.end());
      break;
    }
    case PolicyKind::kCumulative:
    case PolicyKind::kSmallMultiples:
    case PolicyKind::kOverlay: {
      auto it = find_live(id);
      it->state = EntryState::kRendered;
      it->response = payload;
      auto render = make_directive(DirectiveKind::kRenderResponse, *it, now_);
      render.encoding = it->encoding;
      render.series = payload.series;
      out.push_back(std::move(render));
      out.push_back(make_directive(DirectiveKind::kSpinnerOff, *it, now_));
      break;
    }
  }
  return out;
}

std::optional<Seconds> ChronicleBuffer::next_release_at() const {
  if (policy_.kind != PolicyKind::kAnimation || held_.empty()) return std::nullopt;
  const ReqId head = held_.front().req_id;
  if (policy_.in_order && !awaiting_.empty() && *awaiting_.begin() < head) {
    return std::nullopt;
  }
  if (!last_release_) return now_;
  return std::max(now_, *last_release_ + policy_.min_dwell);
}

Directives ChronicleBuffer::release_due(Seconds now) {
  Directives out;
  if (policy_.kind != PolicyKind::kAnimation) return out;
  if (now < now_) {
    throw Error(ErrorCode::kProtocolViolation, "release time before current buffer time");
  }
  now_ = now;
  drain_releases(out);
  return out;
}

void ChronicleBuffer::drain_releases(Directives& out) {
  while (true) {
    auto due = next_release_at();
    if (!due || *due > now_) break;
    auto payload = std::move(held_.front());
    held_.pop_front();
    release(std::move(payload), out);
  }
}

std::map<ReqId, EncodingToken> ChronicleBuffer::assign_encoding(
    EncodingScheme scheme) const {
  std::map<ReqId, EncodingToken> mapping;
  const auto n = static_cast<unsigned>(entries_.size());
  for (unsigned i = 0; i < n; ++i) {
    const ReqId id = entries_[i].request.req_id;
    if (scheme == EncodingScheme::kOrdinal) {
      mapping[id] = {EncodingScheme::kOrdinal, n - 1 - i};
    } else {
      mapping[id] = {EncodingScheme::kCategorical,
                     static_cast<unsigned>(id % kCategoricalPaletteSize)};
    }
  }
  return mapping;
}

std::vector<VisibleEntry> ChronicleBuffer::snapshot() const {
  std::vector<VisibleEntry> view;
  view.reserve(entries_.size());
  for (const auto& e : entries_) {
    VisibleEntry v;
    v.slot = e.slot;
    v.req_id = e.request.req_id;
    v.target = e.request.target;
    v.state = e.state;
    v.encoding = e.encoding;
    if (e.response) v.series = e.response->series;
    view.push_back(std::move(v));
  }
  return view;
}

std::map<Target, unsigned> ChronicleBuffer::widget_history(std::size_t depth) const {
  if (depth < 1) {
    throw Error(ErrorCode::kConfiguration, "widget history depth must be >= 1");
  }
  std::map<Target, unsigned> ranks;
  unsigned next_rank = 0;
  std::size_t seen = 0;
  for (auto it = requests_.rbegin(); it != requests_.rend() && seen < depth; ++it, ++seen) {
    if (ranks.emplace(it->target, next_rank).second) ++next_rank;
  }
  return ranks;
}

}  // namespace chronicle
