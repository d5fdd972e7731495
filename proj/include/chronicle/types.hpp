#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chronicle {

using ReqId = std::uint64_t;
using Seconds = double;
using Target = std::string;

// One sample of a response series: ordinal x position and its value.
struct Point {
  int x = 0;
  double value = 0.0;

  bool operator==(const Point&) const = default;
};

using Series = std::vector<Point>;

// Arithmetic mean of the series values; the per-facet summary that tasks read.
double series_mean(const Series& series);

struct InteractionRequest {
  ReqId req_id = 0;
  Target target;
  Seconds issued_at = 0.0;
};

struct ResponsePayload {
  ReqId req_id = 0;
  Series series;
  Seconds arrived_at = 0.0;
};

enum class EncodingScheme { kOrdinal, kCategorical };

// Ordinal: recency rank among live entries, 0 = most recent.
// Categorical: stable hue index for the lifetime of the entry.
struct EncodingToken {
  EncodingScheme scheme = EncodingScheme::kOrdinal;
  unsigned level = 0;

  bool operator==(const EncodingToken&) const = default;
};

inline constexpr unsigned kCategoricalPaletteSize = 8;

enum class EntryState { kPending, kRendered, kCancelled };

struct ChronicleEntry {
  InteractionRequest request;
  std::optional<ResponsePayload> response;
  int slot = 0;
  EncodingToken encoding;
  EntryState state = EntryState::kPending;
};

enum class DirectiveKind {
  kSpinnerOn,
  kSpinnerOff,
  kRenderResponse,
  kReplaceInPlace,
  kEvict,
  kCancel,
  kRecolor,
  kHold,
  kRelease,
};

// An atomic screen mutation. Directives are self-contained: SpinnerOn carries
// the target, render directives carry the series, so a renderer needs nothing
// else to rebuild the screen.
struct RenderDirective {
  DirectiveKind kind = DirectiveKind::kSpinnerOn;
  ReqId req_id = 0;
  int slot = 0;
  std::optional<EncodingToken> encoding;
  Seconds at = 0.0;
  Target target;
  std::optional<Series> series;

  bool operator==(const RenderDirective&) const = default;
};

using Directives = std::vector<RenderDirective>;

// One row of the visible state. A pending row shows a spinner.
struct VisibleEntry {
  int slot = 0;
  ReqId req_id = 0;
  Target target;
  EntryState state = EntryState::kPending;
  EncodingToken encoding;
  std::optional<Series> series;

  bool operator==(const VisibleEntry&) const = default;
};

std::string_view to_string(EncodingScheme scheme);
std::string_view to_string(EntryState state);
std::string_view to_string(DirectiveKind kind);
std::optional<DirectiveKind> directive_kind_from_string(std::string_view name);

}  // namespace chronicle
