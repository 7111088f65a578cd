#pragma once

#include <string>

namespace bankbench::llm {

enum class ParseMode { strict, lenient };

const char* parse_mode_name(ParseMode mode);

struct ParsedResponse {
    bool ok = false;
    int label = 0;
    double probability = 0.0;
    ParseMode mode_used = ParseMode::strict;
};

// Strict mode accepts only "<label>,<probability>" with optional surrounding
// whitespace, label in {0,1}, probability in [0,1]. Lenient mode first tries
// strict, then extracts the first such pattern found anywhere in the text and
// marks mode_used=lenient. Out-of-range probabilities fail, never clamp.
ParsedResponse parse_response(const std::string& text, ParseMode mode);

} // namespace bankbench::llm
