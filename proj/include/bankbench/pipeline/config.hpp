#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bankbench/data/synthetic.hpp"
#include "bankbench/eval/split.hpp"
#include "bankbench/labeling/distress.hpp"
#include "bankbench/llm/client.hpp"

namespace bankbench::pipeline {

struct DataConfig {
    std::string source = "synthetic"; // synthetic | csv
    data::SynthConfig synth;
    std::string panel_csv; // csv source paths
    std::string macro_csv;
    bool include_operational_status = false;
};

struct ScalingConfig {
    bool enabled = false;
    std::vector<std::string> strategies = {"partition", "ensemble"};
    std::size_t min_samples_split = 10000;
    std::size_t ensemble_m = 8;
    std::size_t ensemble_n = 10000;
    int knn_k = 64;
    std::size_t leaf_capacity = 10000;
};

struct LlmConfig {
    bool enabled = false;
    bool mock = true;
    std::vector<std::string> modes = {"zero_shot", "icl"};
    std::size_t icl_k = 10;
    std::size_t max_rows = 2000;         // test rows queried per mode
    std::size_t calibration_rows = 5000; // validation subsample for the threshold
    llm::EndpointConfig endpoint;
    std::string parse_mode = "lenient"; // strict | lenient
};

struct TimingConfig {
    bool enabled = false;
    std::size_t batch_size = 1000;
    int runs = 5;
    int warmup = 1;
};

struct RunConfig {
    std::filesystem::path out_dir = "runs/out";
    std::uint64_t seed = 42;
    std::vector<int> horizons = {0, 1};
    DataConfig data;
    labeling::DistressRule rule;
    eval::SplitPlan split;
    std::vector<std::string> models = {"logreg", "xgboost"};
    int gbt_max_bins = 256;
    ScalingConfig scaling;
    LlmConfig llm;
    TimingConfig timing;
};

// Parses and validates a config tree. Unknown keys anywhere are rejected so
// typos fail loudly instead of silently using defaults.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

// The fully-resolved config, defaults included; hashing this snapshot makes
// stage skip checks sensitive to every knob.
nlohmann::json config_snapshot(const RunConfig& config);

} // namespace bankbench::pipeline
