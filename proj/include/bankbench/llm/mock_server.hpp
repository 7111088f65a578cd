#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace bankbench::llm {

// Deterministic stand-in for the chat endpoint so the whole LLM path runs
// offline. Answers are rule-based on the serialized risk flags of the target
// company, with probabilities drawn from the fixed set {0.1, 0.2, 0.7, 0.9}:
//   Insolvency_flag=1 and Loss_flag=1 -> "1,0.9"
//   Insolvency_flag=1 only           -> "1,0.7"
//   Loss_flag=1 only                 -> "0,0.2"
//   neither                          -> "0,0.1"
class MockLlmServer {
public:
    struct Options {
        int transient_failures = 0; // serve this many 503s before answering
        int response_delay_ms = 0;  // hold each request to expose concurrency
    };

    MockLlmServer() : MockLlmServer(Options{}) {}
    explicit MockLlmServer(Options options);
    ~MockLlmServer();

    MockLlmServer(const MockLlmServer&) = delete;
    MockLlmServer& operator=(const MockLlmServer&) = delete;

    void start();
    void stop();

    std::string base_url() const;
    int port() const { return port_; }
    int handler_peak() const { return peak_.load(); }
    int requests_served() const { return served_.load(); }

private:
    Options options_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> active_{0};
    std::atomic<int> peak_{0};
    std::atomic<int> served_{0};
    std::atomic<int> remaining_failures_{0};
};

// The decision rule by itself, exposed for direct tests: inspects the text
// after the final "**Now analyze this company**:" marker (or the whole text
// when absent) for Insolvency_flag=1/Loss_flag=1.
std::string mock_llm_decision(const std::string& prompt);

} // namespace bankbench::llm
