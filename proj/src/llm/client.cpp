#include "bankbench/llm/client.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "bankbench/core/error.hpp"

namespace bankbench::llm {

namespace {

bool transient_status(int status) { return status == 429 || status >= 500; }

// Pulls choices[0].message.content out of a chat-completions body; nullopt
// when the body is not in that shape.
std::optional<std::string> extract_content(const std::string& body) {
    auto parsed = nlohmann::json::parse(body, nullptr, false);
    if (parsed.is_discarded()) return std::nullopt;
    if (!parsed.contains("choices") || !parsed["choices"].is_array() || parsed["choices"].empty())
        return std::nullopt;
    const auto& message = parsed["choices"][0];
    if (!message.contains("message") || !message["message"].contains("content")) return std::nullopt;
    if (!message["message"]["content"].is_string()) return std::nullopt;
    return message["message"]["content"].get<std::string>();
}

} // namespace

std::vector<LLMExchange> query_endpoint(const EndpointConfig& config, const std::vector<std::string>& prompts,
                                        ParseMode parse_mode, QueryStats* stats) {
    if (config.max_concurrent < 1) throw config_error("llm client: max_concurrent must be >= 1");
    if (config.retries < 0) throw config_error("llm client: retries must be >= 0");

    std::string api_key;
    if (!config.api_key_env.empty()) {
        const char* value = std::getenv(config.api_key_env.c_str());
        if (value == nullptr || *value == '\0')
            throw client_error("llm client: environment variable " + config.api_key_env + " is not set");
        api_key = value;
    }

    std::vector<LLMExchange> exchanges(prompts.size());
    for (std::size_t i = 0; i < prompts.size(); ++i) {
        exchanges[i].index = i;
        exchanges[i].prompt = prompts[i];
    }
    if (prompts.empty()) return exchanges;

    std::atomic<std::size_t> next{0};
    std::atomic<int> in_flight{0};
    std::atomic<int> peak{0};

    auto worker = [&]() {
        httplib::Client client(config.base_url);
        client.set_connection_timeout(config.timeout_s, 0);
        client.set_read_timeout(config.timeout_s, 0);
        client.set_write_timeout(config.timeout_s, 0);

        httplib::Headers headers;
        if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= prompts.size()) break;
            LLMExchange& ex = exchanges[i];

            nlohmann::json request = {{"model", config.model},
                                      {"messages", nlohmann::json::array({nlohmann::json{
                                                       {"role", "user"}, {"content", prompts[i]}}})},
                                      {"temperature", 0}};
            const std::string body = request.dump();

            double backoff_ms = config.backoff_initial_ms;
            for (int attempt = 0; attempt <= config.retries; ++attempt) {
                if (attempt > 0) {
                    std::this_thread::sleep_for(
                        std::chrono::milliseconds(static_cast<long long>(backoff_ms)));
                    backoff_ms *= config.backoff_multiplier;
                }
                ex.attempts = attempt + 1;

                const int now = in_flight.fetch_add(1) + 1;
                int seen = peak.load();
                while (now > seen && !peak.compare_exchange_weak(seen, now)) {
                }
                const auto start = std::chrono::steady_clock::now();
                auto result = client.Post("/v1/chat/completions", headers, body, "application/json");
                const auto elapsed = std::chrono::steady_clock::now() - start;
                in_flight.fetch_sub(1);
                ex.latency_ms += std::chrono::duration<double, std::milli>(elapsed).count();

                if (!result) {
                    ex.transport_failed = true;
                    continue;
                }
                if (result->status != 200) {
                    ex.transport_failed = true;
                    if (transient_status(result->status)) continue;
                    break;
                }
                auto content = extract_content(result->body);
                if (!content) {
                    ex.transport_failed = true;
                    continue;
                }
                ex.transport_failed = false;
                ex.raw_response = *content;
                ParsedResponse parsed = parse_response(ex.raw_response, parse_mode);
                ex.parsed_ok = parsed.ok;
                ex.label = parsed.label;
                ex.probability = parsed.probability;
                ex.parse_mode_used = parsed.mode_used;
                break;
            }
        }
    };

    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(config.max_concurrent),
                                                        prompts.size());
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (stats != nullptr) {
        stats->in_flight_peak = peak.load();
        stats->transport_failures = 0;
        stats->parse_failures = 0;
        for (const LLMExchange& ex : exchanges) {
            if (ex.transport_failed) stats->transport_failures += 1;
            else if (!ex.parsed_ok) stats->parse_failures += 1;
        }
    }
    return exchanges;
}

} // namespace bankbench::llm
