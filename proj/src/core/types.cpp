#include "chronicle/types.hpp"

#include <array>
#include <utility>

namespace chronicle {

double series_mean(const Series& series) {
  if (series.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& p : series) sum += p.value;
  return sum / static_cast<double>(series.size());
}

std::string_view to_string(EncodingScheme scheme) {
  return scheme == EncodingScheme::kOrdinal ? "ordinal" : "categorical";
}

std::string_view to_string(EntryState state) {
  switch (state) {
    case EntryState::kPending: return "pending";
    case EntryState::kRendered: return "rendered";
    case EntryState::kCancelled: return "cancelled";
  }
  return "pending";
}

namespace {

constexpr std::array<std::pair<DirectiveKind, std::string_view>, 9> kDirectiveNames{{
    {DirectiveKind::kSpinnerOn, "SpinnerOn"},
    {DirectiveKind::kSpinnerOff, "SpinnerOff"},
    {DirectiveKind::kRenderResponse, "RenderResponse"},
    {DirectiveKind::kReplaceInPlace, "ReplaceInPlace"},
    {DirectiveKind::kEvict, "Evict"},
    {DirectiveKind::kCancel, "Cancel"},
    {DirectiveKind::kRecolor, "Recolor"},
    {DirectiveKind::kHold, "Hold"},
    {DirectiveKind::kRelease, "Release"},
}};

}  // namespace

std::string_view to_string(DirectiveKind kind) {
  for (const auto& [k, name] : kDirectiveNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<DirectiveKind> directive_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kDirectiveNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

}  // namespace chronicle
