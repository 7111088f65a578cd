#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace bankbench::pipeline {

// Removes wall-clock measurement keys recursively so two runs of the same
// config can be compared byte-for-byte.
nlohmann::json strip_wallclock(nlohmann::json value);

// FNV-1a content hash of a file. JSON and JSON-lines artifacts are hashed in
// canonical form (parsed, wall-clock keys stripped, re-serialized) so timing
// jitter does not defeat idempotence; other files hash raw bytes.
std::string artifact_hash(const std::filesystem::path& path);
std::string bytes_hash(const std::string& bytes);

// Per-run record of what each stage consumed and produced. The manifest file
// is rewritten after every stage; a stage is skippable when its recorded
// input hashes match and every recorded artifact still hashes the same.
class Manifest {
public:
    static Manifest load_or_create(const std::filesystem::path& out_dir, const nlohmann::json& config_snapshot);

    bool stage_unchanged(const std::string& stage, const nlohmann::json& input_hashes) const;
    void stage_started(const std::string& stage, const nlohmann::json& input_hashes);
    // Paths are relative to the output directory; hashes are computed here.
    void stage_finished(const std::string& stage, const std::vector<std::string>& artifacts);

    const nlohmann::json& doc() const { return doc_; }
    const std::filesystem::path& file() const { return file_; }

private:
    std::filesystem::path out_dir_;
    std::filesystem::path file_;
    nlohmann::json doc_;

    void save() const;
};

// Exclusive ownership of an output directory for the duration of a command.
class RunLock {
public:
    explicit RunLock(const std::filesystem::path& out_dir);
    ~RunLock();

    RunLock(const RunLock&) = delete;
    RunLock& operator=(const RunLock&) = delete;

private:
    std::filesystem::path path_;
};

} // namespace bankbench::pipeline
