#include "bankbench/llm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bankbench/core/error.hpp"
#include "bankbench/core/numeric.hpp"

namespace bankbench::llm {

ProbabilityProfile analyze_probability_profile(const std::vector<double>& probabilities, std::size_t top_k) {
    if (probabilities.empty()) throw data_error("probability profile: empty input");
    if (top_k < 1) throw config_error("probability profile: top_k must be >= 1");

    ProbabilityProfile profile;
    profile.n = probabilities.size();

    std::map<double, std::size_t> tally;
    for (double p : probabilities) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0)
            throw data_error("probability profile: value outside [0, 1]");
        tally[p] += 1;
        std::size_t bin = static_cast<std::size_t>(p / 0.05);
        profile.histogram[std::min<std::size_t>(bin, 19)] += 1;
    }

    profile.value_freq.assign(tally.begin(), tally.end());
    profile.distinct_values = profile.value_freq.size();

    std::vector<std::pair<double, std::size_t>> by_freq = profile.value_freq;
    std::sort(by_freq.begin(), by_freq.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::size_t cumulative = 0;
    for (std::size_t k = 0; k < std::min(top_k, by_freq.size()); ++k) {
        cumulative += by_freq[k].second;
        profile.top_mass.push_back(static_cast<double>(cumulative) / static_cast<double>(profile.n));
    }
    return profile;
}

nlohmann::json profile_json(const ProbabilityProfile& profile) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& [value, freq] : profile.value_freq)
        values.push_back({{"value", value}, {"count", freq}});
    nlohmann::json hist = nlohmann::json::array();
    for (std::size_t b = 0; b < profile.histogram.size(); ++b)
        hist.push_back({{"low", 0.05 * static_cast<double>(b)},
                        {"high", 0.05 * static_cast<double>(b + 1)},
                        {"count", profile.histogram[b]}});
    return nlohmann::json{{"n", profile.n},
                          {"distinct_values", profile.distinct_values},
                          {"value_frequencies", values},
                          {"top_mass", profile.top_mass},
                          {"histogram", hist}};
}

std::string profile_histogram_csv(const ProbabilityProfile& profile) {
    std::string out = "bin_low,bin_high,count\n";
    for (std::size_t b = 0; b < profile.histogram.size(); ++b) {
        out += format_fixed(0.05 * static_cast<double>(b), 2) + "," +
               format_fixed(0.05 * static_cast<double>(b + 1), 2) + "," + std::to_string(profile.histogram[b]) +
               "\n";
    }
    return out;
}

} // namespace bankbench::llm
