#include "chronicle/policy.hpp"

#include <sstream>

#include "chronicle/error.hpp"
#include "chronicle/text.hpp"

namespace chronicle {

PolicySpec PolicySpec::blocking() { return {PolicyKind::kBlocking, 1}; }

PolicySpec PolicySpec::naive() { return {PolicyKind::kNaive, 1}; }

PolicySpec PolicySpec::cumulative() { return {PolicyKind::kCumulative, 0}; }

PolicySpec PolicySpec::small_multiples(std::size_t cap) {
  return {PolicyKind::kSmallMultiples, cap};
}

PolicySpec PolicySpec::overlay(std::size_t cap, EncodingScheme scheme) {
  PolicySpec spec{PolicyKind::kOverlay, cap};
  spec.scheme = scheme;
  return spec;
}

PolicySpec PolicySpec::animation(Seconds min_dwell, bool in_order) {
  PolicySpec spec{PolicyKind::kAnimation, 1};
  spec.min_dwell = min_dwell;
  spec.in_order = in_order;
  return spec;
}

bool is_single_slot(PolicyKind kind) {
  return kind == PolicyKind::kBlocking || kind == PolicyKind::kNaive ||
         kind == PolicyKind::kAnimation;
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kBlocking: return "blocking";
    case PolicyKind::kNaive: return "naive";
    case PolicyKind::kCumulative: return "cumulative";
    case PolicyKind::kSmallMultiples: return "multiples";
    case PolicyKind::kOverlay: return "overlay";
    case PolicyKind::kAnimation: return "animation";
  }
  return "?";
}

namespace {

std::size_t parse_cap(std::string_view field) {
  auto cap = text::parse_uint(field, "policy capacity");
  if (cap < 1) {
    throw Error(ErrorCode::kConfiguration, "policy capacity must be >= 1");
  }
  return static_cast<std::size_t>(cap);
}

[[noreturn]] void bad_policy(std::string_view text) {
  throw Error(ErrorCode::kConfiguration,
              "unrecognized policy '" + std::string(text) +
                  "' (expected blocking|naive|cumulative|multiples:K|"
                  "overlay:K:ordinal|overlay:K:categorical|animation:DWELL)");
}

}  // namespace

PolicySpec parse_policy(std::string_view text) {
  auto parts = text::split(text, ':');
  const auto head = parts.front();
  if (parts.size() == 1) {
    if (head == "blocking") return PolicySpec::blocking();
    if (head == "naive") return PolicySpec::naive();
    if (head == "cumulative") return PolicySpec::cumulative();
    if (head == "animation") return PolicySpec::animation();
    bad_policy(text);
  }
  if (head == "multiples" && parts.size() == 2) {
    return PolicySpec::small_multiples(parse_cap(parts[1]));
  }
  if (head == "overlay" && parts.size() == 3) {
    const auto cap = parse_cap(parts[1]);
    if (parts[2] == "ordinal") return PolicySpec::overlay(cap, EncodingScheme::kOrdinal);
    if (parts[2] == "categorical") {
      return PolicySpec::overlay(cap, EncodingScheme::kCategorical);
    }
    bad_policy(text);
  }
  if (head == "animation" && (parts.size() == 2 || parts.size() == 3)) {
    const double dwell = text::parse_double(parts[1], "animation dwell");
    if (!(dwell >= 0.0)) {
      throw Error(ErrorCode::kConfiguration, "animation dwell must be >= 0");
    }
    bool in_order = true;
    if (parts.size() == 3) {
      if (parts[2] == "unordered") {
        in_order = false;
      } else if (parts[2] != "ordered") {
        bad_policy(text);
      }
    }
    return PolicySpec::animation(dwell, in_order);
  }
  bad_policy(text);
}

std::string to_string(const PolicySpec& policy) {
  std::ostringstream os;
  os << to_string(policy.kind);
  switch (policy.kind) {
    case PolicyKind::kSmallMultiples:
      os << ':' << policy.cap;
      break;
    case PolicyKind::kOverlay:
      os << ':' << policy.cap << ':' << to_string(policy.scheme);
      break;
    case PolicyKind::kAnimation:
      os << ':' << text::format_double(policy.min_dwell);
      if (!policy.in_order) os << ":unordered";
      break;
    default:
      break;
  }
  return os.str();
}

}  // namespace chronicle
