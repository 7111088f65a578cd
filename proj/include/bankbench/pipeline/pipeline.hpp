#pragma once

#include <string>
#include <vector>

#include "bankbench/pipeline/config.hpp"
#include "bankbench/pipeline/manifest.hpp"

namespace bankbench::pipeline {

// Stage orchestration over one output directory. Construction takes the run
// lock; each stage hashes its inputs and is skipped when the manifest shows
// an identical prior run whose artifacts are intact (--force overrides).
class Pipeline {
public:
    Pipeline(RunConfig config, bool force = false, bool quiet = false);

    void generate();
    void label();
    void featurize();
    void train();
    void evaluate();
    void llm_run();
    void report();
    void run_all();

    const RunConfig& config() const { return cfg_; }
    const Manifest& manifest() const { return manifest_; }

private:
    RunConfig cfg_;
    bool force_;
    bool quiet_;
    std::filesystem::path out_;
    RunLock lock_;
    nlohmann::json snapshot_;
    Manifest manifest_;

    void note(const std::string& line) const;
    nlohmann::json section_inputs(const std::vector<std::string>& keys) const;
    std::string require_artifact(const std::string& rel_path, const std::string& producer) const;
    std::filesystem::path full(const std::string& rel_path) const { return out_ / rel_path; }
};

} // namespace bankbench::pipeline
