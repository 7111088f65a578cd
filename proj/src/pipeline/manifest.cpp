#include "bankbench/pipeline/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bankbench/core/error.hpp"
#include "bankbench/core/numeric.hpp"

namespace bankbench::pipeline {

namespace {

const char* k_wallclock_keys[] = {"started_at",   "finished_at", "elapsed_s",       "latency_ms",
                                  "mean_latency_ms", "run_seconds", "mean_seconds", "std_seconds",
                                  "rows_per_second", "total_seconds"};

bool is_wallclock_key(const std::string& key) {
    for (const char* k : k_wallclock_keys)
        if (key == k) return true;
    return false;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pipeline_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace

nlohmann::json strip_wallclock(nlohmann::json value) {
    if (value.is_object()) {
        nlohmann::json out = nlohmann::json::object();
        for (auto& [key, child] : value.items()) {
            if (is_wallclock_key(key)) continue;
            out[key] = strip_wallclock(child);
        }
        return out;
    }
    if (value.is_array()) {
        nlohmann::json out = nlohmann::json::array();
        for (auto& child : value) out.push_back(strip_wallclock(child));
        return out;
    }
    return value;
}

std::string bytes_hash(const std::string& bytes) { return fnv1a64_hex(bytes); }

std::string artifact_hash(const std::filesystem::path& path) {
    const std::string raw = read_file(path);
    const std::string ext = path.extension().string();
    if (ext == ".json") {
        auto parsed = nlohmann::json::parse(raw, nullptr, false);
        if (!parsed.is_discarded()) return bytes_hash(strip_wallclock(std::move(parsed)).dump());
    } else if (ext == ".jsonl") {
        std::string canonical;
        std::istringstream lines(raw);
        std::string line;
        bool all_parsed = true;
        while (std::getline(lines, line)) {
            if (line.empty()) continue;
            auto parsed = nlohmann::json::parse(line, nullptr, false);
            if (parsed.is_discarded()) {
                all_parsed = false;
                break;
            }
            canonical += strip_wallclock(std::move(parsed)).dump();
            canonical += '\n';
        }
        if (all_parsed) return bytes_hash(canonical);
    }
    return bytes_hash(raw);
}

Manifest Manifest::load_or_create(const std::filesystem::path& out_dir, const nlohmann::json& config_snapshot) {
    Manifest m;
    m.out_dir_ = out_dir;
    m.file_ = out_dir / "manifest.json";

    const std::string config_hash = bytes_hash(config_snapshot.dump());
    nlohmann::json stages = nlohmann::json::object();
    if (std::filesystem::exists(m.file_)) {
        auto parsed = nlohmann::json::parse(read_file(m.file_), nullptr, false);
        // Stage records survive config edits: each one is guarded by its own
        // input hashes, so only the stages whose inputs actually changed rerun.
        if (!parsed.is_discarded() && parsed.contains("stages") && parsed["stages"].is_object())
            stages = parsed["stages"];
    }
    m.doc_ = nlohmann::json{{"tool", "bankbench"},
                            {"tool_version", "0.1.0"},
                            {"config", config_snapshot},
                            {"config_hash", config_hash},
                            {"stages", std::move(stages)}};
    std::filesystem::create_directories(out_dir);
    m.save();
    return m;
}

bool Manifest::stage_unchanged(const std::string& stage, const nlohmann::json& input_hashes) const {
    if (!doc_.contains("stages") || !doc_["stages"].contains(stage)) return false;
    const nlohmann::json& record = doc_["stages"][stage];
    if (record.value("status", "") != "done") return false;
    if (!record.contains("input_hashes") || record["input_hashes"] != input_hashes) return false;
    if (!record.contains("artifacts")) return false;
    for (const auto& [rel_path, hash] : record["artifacts"].items()) {
        const std::filesystem::path full = out_dir_ / rel_path;
        if (!std::filesystem::exists(full)) return false;
        if (artifact_hash(full) != hash.get<std::string>()) return false;
    }
    return true;
}

void Manifest::stage_started(const std::string& stage, const nlohmann::json& input_hashes) {
    doc_["stages"][stage] = nlohmann::json{{"status", "running"},
                                           {"input_hashes", input_hashes},
                                           {"artifacts", nlohmann::json::object()},
                                           {"started_at", iso_timestamp()}};
    save();
}

void Manifest::stage_finished(const std::string& stage, const std::vector<std::string>& artifacts) {
    nlohmann::json& record = doc_["stages"][stage];
    nlohmann::json hashes = nlohmann::json::object();
    for (const std::string& rel_path : artifacts) hashes[rel_path] = artifact_hash(out_dir_ / rel_path);
    record["artifacts"] = hashes;
    record["status"] = "done";
    record["finished_at"] = iso_timestamp();
    save();
}

void Manifest::save() const {
    std::ofstream out(file_, std::ios::binary | std::ios::trunc);
    if (!out) throw pipeline_error("cannot write " + file_.string());
    out << doc_.dump(2) << "\n";
}

RunLock::RunLock(const std::filesystem::path& out_dir) : path_(out_dir / ".lock") {
    std::filesystem::create_directories(out_dir);
    FILE* f = std::fopen(path_.c_str(), "wx");
    if (f == nullptr)
        throw pipeline_error("output directory is locked by another run (remove " + path_.string() +
                             " if that run is dead)");
    std::fputs("bankbench\n", f);
    std::fclose(f);
}

RunLock::~RunLock() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

} // namespace bankbench::pipeline
