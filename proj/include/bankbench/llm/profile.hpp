#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bankbench::llm {

struct ProbabilityProfile {
    std::size_t n = 0;
    std::size_t distinct_values = 0;
    std::vector<std::pair<double, std::size_t>> value_freq; // sorted by value
    std::vector<double> top_mass; // top_mass[k-1] = share held by the k most frequent values
    std::array<std::size_t, 20> histogram{}; // bin width 0.05 over [0, 1], last bin closed
};

// Tallies self-reported probabilities exactly: distinct-value frequencies,
// cumulative mass of the most frequent values, and a 20-bin histogram.
// Inputs must be in [0, 1]; empty input is an error.
ProbabilityProfile analyze_probability_profile(const std::vector<double>& probabilities, std::size_t top_k = 4);

nlohmann::json profile_json(const ProbabilityProfile& profile);

// Plot-ready histogram table: bin_low,bin_high,count per line.
std::string profile_histogram_csv(const ProbabilityProfile& profile);

} // namespace bankbench::llm
