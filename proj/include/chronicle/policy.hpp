#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "chronicle/types.hpp"

namespace chronicle {

enum class PolicyKind {
  kBlocking,
  kNaive,
  kCumulative,
  kSmallMultiples,
  kOverlay,
  kAnimation,
};

// Declarative rendering policy.
//
// `cap` is meaningful for SmallMultiples and Overlay. Blocking, Naive and
// Animation render in place and always use capacity 1; Cumulative uses one
// placeholder per target, so its capacity is the number of targets and is
// resolved when the buffer is built.
struct PolicySpec {
  PolicyKind kind = PolicyKind::kBlocking;
  std::size_t cap = 1;
  EncodingScheme scheme = EncodingScheme::kOrdinal;
  Seconds min_dwell = 1.0;
  bool in_order = true;

  static PolicySpec blocking();
  static PolicySpec naive();
  static PolicySpec cumulative();
  static PolicySpec small_multiples(std::size_t cap);
  static PolicySpec overlay(std::size_t cap, EncodingScheme scheme);
  static PolicySpec animation(Seconds min_dwell = 1.0, bool in_order = true);

  bool operator==(const PolicySpec&) const = default;
};

// True for the policies that draw every response into one shared slot.
bool is_single_slot(PolicyKind kind);

// Text syntax: blocking | naive | cumulative | multiples:K |
// overlay:K:ordinal | overlay:K:categorical | animation:DWELL[:unordered]
PolicySpec parse_policy(std::string_view text);
std::string to_string(const PolicySpec& policy);
std::string_view to_string(PolicyKind kind);

}  // namespace chronicle
