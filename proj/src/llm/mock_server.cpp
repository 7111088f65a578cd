#include "bankbench/llm/mock_server.hpp"

#include <chrono>

#include "httplib.h"
#include "json.hpp"

#include "bankbench/core/error.hpp"

namespace bankbench::llm {

namespace {

bool flag_is_set(const std::string& text, std::size_t from, const std::string& key) {
    const std::size_t pos = text.find(key + "=1", from);
    return pos != std::string::npos;
}

} // namespace

std::string mock_llm_decision(const std::string& prompt) {
    static const std::string marker = "**Now analyze this company**:";
    std::size_t from = prompt.rfind(marker);
    from = from == std::string::npos ? 0 : from + marker.size();
    const bool insolvent = flag_is_set(prompt, from, "Insolvency_flag");
    const bool loss = flag_is_set(prompt, from, "Loss_flag");
    if (insolvent && loss) return "1,0.9";
    if (insolvent) return "1,0.7";
    if (loss) return "0,0.2";
    return "0,0.1";
}

MockLlmServer::MockLlmServer(Options options) : options_(options) {
    remaining_failures_.store(options_.transient_failures);
}

MockLlmServer::~MockLlmServer() { stop(); }

void MockLlmServer::start() {
    if (server_) throw client_error("mock llm server: already started");
    server_ = std::make_unique<httplib::Server>();

    server_->Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
        const int now = active_.fetch_add(1) + 1;
        int seen = peak_.load();
        while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
        }
        if (options_.response_delay_ms > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(options_.response_delay_ms));

        if (remaining_failures_.fetch_sub(1) > 0) {
            res.status = 503;
            res.set_content("{\"error\":\"temporarily unavailable\"}", "application/json");
            active_.fetch_sub(1);
            return;
        }

        std::string prompt;
        auto body = nlohmann::json::parse(req.body, nullptr, false);
        if (!body.is_discarded() && body.contains("messages") && body["messages"].is_array() &&
            !body["messages"].empty() && body["messages"].back().contains("content"))
            prompt = body["messages"].back()["content"].get<std::string>();

        nlohmann::json reply = {
            {"id", "mock-" + std::to_string(served_.fetch_add(1))},
            {"object", "chat.completion"},
            {"model", "mock-llm"},
            {"choices",
             nlohmann::json::array({nlohmann::json{
                 {"index", 0},
                 {"message", nlohmann::json{{"role", "assistant"}, {"content", mock_llm_decision(prompt)}}},
                 {"finish_reason", "stop"}}})}};
        res.set_content(reply.dump(), "application/json");
        active_.fetch_sub(1);
    });

    port_ = server_->bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw client_error("mock llm server: failed to bind a port");
    thread_ = std::thread([this]() { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void MockLlmServer::stop() {
    if (!server_) return;
    server_->stop();
    if (thread_.joinable()) thread_.join();
    server_.reset();
    port_ = 0;
}

std::string MockLlmServer::base_url() const {
    if (port_ <= 0) throw client_error("mock llm server: not started");
    return "http://127.0.0.1:" + std::to_string(port_);
}

} // namespace bankbench::llm
