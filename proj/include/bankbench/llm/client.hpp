#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bankbench/llm/parse.hpp"

namespace bankbench::llm {

struct EndpointConfig {
    std::string base_url = "http://127.0.0.1:8080";
    std::string model = "llama-3.3-70b-instruct";
    std::string api_key_env; // empty sends no Authorization header
    int max_concurrent = 8;
    int timeout_s = 30;
    int retries = 3; // additional attempts after the first
    int backoff_initial_ms = 250;
    double backoff_multiplier = 2.0;
};

struct LLMExchange {
    std::size_t index = 0;
    std::string prompt;
    std::string raw_response;
    bool transport_failed = false;
    bool parsed_ok = false;
    int label = 0;
    double probability = 0.0;
    ParseMode parse_mode_used = ParseMode::strict;
    double latency_ms = 0.0;
    int attempts = 0;
};

struct QueryStats {
    int in_flight_peak = 0;
    std::size_t transport_failures = 0;
    std::size_t parse_failures = 0;
};

// Sends every prompt to the chat-completions endpoint with at most
// max_concurrent requests in flight, retrying transient failures with
// exponential backoff. Results come back in input order; a request that
// exhausts its retries is marked transport_failed and the run continues.
// Throws client_error at startup when api_key_env names an unset variable.
std::vector<LLMExchange> query_endpoint(const EndpointConfig& config, const std::vector<std::string>& prompts,
                                        ParseMode parse_mode, QueryStats* stats = nullptr);

} // namespace bankbench::llm
