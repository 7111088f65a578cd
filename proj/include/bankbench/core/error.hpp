#pragma once

#include <stdexcept>
#include <string>

namespace bankbench {

// Error taxonomy. Everything user-facing derives from std::runtime_error so the
// CLI can catch one type; the subclasses exist so tests can assert the right
// failure surfaced from the right layer.

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct metric_error : std::runtime_error {
    explicit metric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct split_error : std::runtime_error {
    explicit split_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct training_error : std::runtime_error {
    explicit training_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct client_error : std::runtime_error {
    explicit client_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct pipeline_error : std::runtime_error {
    explicit pipeline_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bankbench
