#include "bankbench/llm/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace bankbench::llm {

const char* parse_mode_name(ParseMode mode) { return mode == ParseMode::strict ? "strict" : "lenient"; }

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

ParsedResponse parse_strict(const std::string& text) {
    ParsedResponse fail;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n && is_space(text[i])) ++i;
    if (i >= n || (text[i] != '0' && text[i] != '1')) return fail;
    const int label = text[i] - '0';
    ++i;
    while (i < n && is_space(text[i])) ++i;
    if (i >= n || text[i] != ',') return fail;
    ++i;
    while (i < n && is_space(text[i])) ++i;
    std::size_t end = n;
    while (end > i && is_space(text[end - 1])) --end;
    if (i >= end) return fail;

    double p = 0.0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + end, p);
    if (ec != std::errc() || ptr != text.data() + end) return fail;
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) return fail;
    return {true, label, p, ParseMode::strict};
}

ParsedResponse parse_lenient(const std::string& text) {
    const std::size_t n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (text[i] != '0' && text[i] != '1') continue;
        if (i > 0 && is_digit(text[i - 1])) continue;
        const int label = text[i] - '0';
        std::size_t j = i + 1;
        while (j < n && is_space(text[j])) ++j;
        if (j >= n || text[j] != ',') continue;
        ++j;
        while (j < n && is_space(text[j])) ++j;
        if (j >= n) continue;
        double p = 0.0;
        auto [ptr, ec] = std::from_chars(text.data() + j, text.data() + n, p);
        if (ec != std::errc() || ptr == text.data() + j) continue;
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) continue;
        return {true, label, p, ParseMode::lenient};
    }
    return {};
}

} // namespace

ParsedResponse parse_response(const std::string& text, ParseMode mode) {
    ParsedResponse strict = parse_strict(text);
    if (strict.ok || mode == ParseMode::strict) return strict;
    return parse_lenient(text);
}

} // namespace bankbench::llm
