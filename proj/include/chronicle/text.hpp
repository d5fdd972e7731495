#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chronicle::text {

std::vector<std::string_view> split(std::string_view text, char sep);

// Strict numeric parsing: the whole field must be consumed. Failures throw
// Error(kConfiguration) naming `what`.
double parse_double(std::string_view field, std::string_view what);
std::uint64_t parse_uint(std::string_view field, std::string_view what);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace chronicle::text
