#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bankbench {

// Shortest round-trip decimal rendering (std::to_chars). Used everywhere a
// double lands in an artifact so reruns are byte-identical.
std::string format_double(double v);

// Fixed-point rendering with the given number of decimals (LLM serialization).
std::string format_fixed(double v, int decimals);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// FNV-1a 64-bit. Content addressing for the run manifest and prompt hashes.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

double mean_of(const std::vector<double>& v);
// Sample standard deviation (n-1 denominator); 0 for n < 2.
double sample_stddev(const std::vector<double>& v);

} // namespace bankbench
