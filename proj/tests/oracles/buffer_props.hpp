#pragma once

// Random operation sequences against ChronicleBuffer with every safety
// property checked after each step. Returns a description of the first
// violation, or nothing.

#include <optional>
#include <random>
#include <string>

#include "chronicle/buffer.hpp"

namespace props {

struct SequenceStats {
  std::size_t ops = 0;
  std::size_t evictions = 0;
  std::size_t renders = 0;
  std::size_t releases = 0;
};

std::optional<std::string> check_random_sequence(std::mt19937_64& rng,
                                                 const chronicle::PolicySpec& policy,
                                                 std::size_t ops, SequenceStats& stats);

}  // namespace props
