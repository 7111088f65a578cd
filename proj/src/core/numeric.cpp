#include "bankbench/core/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

namespace bankbench {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double out = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return out;
}

std::optional<long long> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    long long out = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf, 16);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

} // namespace bankbench
