#include "chronicle/sched/latency.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "chronicle/error.hpp"
#include "chronicle/text.hpp"

namespace chronicle::sched {

LatencyProfile LatencyProfile::none() { return {}; }

LatencyProfile LatencyProfile::fixed_delay(Seconds d) {
  if (!(d >= 0.0)) throw Error(ErrorCode::kConfiguration, "fixed latency must be >= 0");
  LatencyProfile p;
  p.kind = LatencyKind::kFixed;
  p.fixed = d;
  return p;
}

LatencyProfile LatencyProfile::uniform(Seconds lo, Seconds hi) {
  if (!(lo >= 0.0 && lo < hi)) {
    throw Error(ErrorCode::kConfiguration, "uniform latency needs 0 <= lo < hi");
  }
  LatencyProfile p;
  p.kind = LatencyKind::kUniform;
  p.lo = lo;
  p.hi = hi;
  return p;
}

LatencyProfile LatencyProfile::trace(std::vector<Seconds> samples, std::string source) {
  for (double s : samples) {
    if (!(s >= 0.0)) throw Error(ErrorCode::kConfiguration, "trace latency must be >= 0");
  }
  LatencyProfile p;
  p.kind = LatencyKind::kTrace;
  p.samples = std::move(samples);
  p.source = std::move(source);
  return p;
}

std::vector<Seconds> load_latency_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open latency trace '" + path + "'");
  std::vector<Seconds> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      samples.push_back(text::parse_double(line, "latency sample"));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return samples;
}

LatencyProfile parse_latency(std::string_view text) {
  if (text == "none") return LatencyProfile::none();
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kConfiguration, "unrecognized latency '" + std::string(text) +
                                               "' (expected none|fixed:S|uniform:LO,HI|trace:PATH)");
  }
  auto head = text.substr(0, colon);
  auto rest = text.substr(colon + 1);
  if (head == "fixed") return LatencyProfile::fixed_delay(text::parse_double(rest, "fixed latency"));
  if (head == "uniform") {
    auto bounds = text::split(rest, ',');
    if (bounds.size() != 2) {
      throw Error(ErrorCode::kConfiguration, "uniform latency needs LO,HI");
    }
    return LatencyProfile::uniform(text::parse_double(bounds[0], "uniform lo"),
                                   text::parse_double(bounds[1], "uniform hi"));
  }
  if (head == "trace") {
    constexpr std::string_view kInline = "inline:";
    if (rest.substr(0, kInline.size()) == kInline) {
      std::vector<Seconds> samples;
      auto values = rest.substr(kInline.size());
      if (!values.empty()) {
        for (auto field : text::split(values, ',')) {
          samples.push_back(text::parse_double(field, "latency sample"));
        }
      }
      return LatencyProfile::trace(std::move(samples));
    }
    std::string path(rest);
    return LatencyProfile::trace(load_latency_trace(path), path);
  }
  throw Error(ErrorCode::kConfiguration, "unrecognized latency '" + std::string(text) + "'");
}

std::string to_string(const LatencyProfile& profile) {
  switch (profile.kind) {
    case LatencyKind::kNone:
      return "none";
    case LatencyKind::kFixed:
      return "fixed:" + text::format_double(profile.fixed);
    case LatencyKind::kUniform:
      return "uniform:" + text::format_double(profile.lo) + "," + text::format_double(profile.hi);
    case LatencyKind::kTrace: {
      if (!profile.source.empty()) return "trace:" + profile.source;
      std::string out = "trace:inline:";
      for (std::size_t i = 0; i < profile.samples.size(); ++i) {
        if (i) out += ',';
        out += text::format_double(profile.samples[i]);
      }
      return out;
    }
  }
  return "none";
}

Seconds sample_latency(const LatencyProfile& profile, Rng& rng, std::size_t& cursor) {
  switch (profile.kind) {
    case LatencyKind::kNone:
      return 0.0;
    case LatencyKind::kFixed:
      return profile.fixed;
    case LatencyKind::kUniform:
      return rng.uniform(profile.lo, profile.hi);
    case LatencyKind::kTrace:
      if (cursor >= profile.samples.size()) {
        throw Error(ErrorCode::kExhaustedProfile,
                    "latency trace exhausted after " + std::to_string(cursor) + " samples");
      }
      return profile.samples[cursor++];
  }
  return 0.0;
}

LatencySampler::LatencySampler(LatencyProfile profile, Rng rng)
    : profile_(std::move(profile)), rng_(std::move(rng)) {}

Seconds LatencySampler::sample() { return sample_latency(profile_, rng_, drawn_); }

}  // namespace chronicle::sched
