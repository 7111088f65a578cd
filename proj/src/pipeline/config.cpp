#include "bankbench/pipeline/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "bankbench/core/error.hpp"

namespace bankbench::pipeline {

namespace {

void expect_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw config_error("config: " + where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw config_error("config: unknown key \"" + key + "\" in " + where);
    }
}

template <typename T> void read_into(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

DataConfig parse_data(const nlohmann::json& j) {
    DataConfig d;
    expect_keys(j, {"source", "n_companies", "year_start", "year_end", "censor_year", "target_distress_rate",
                    "censored_fraction", "zombie_fraction", "leveraged_liquid_fraction", "illiquid_fraction",
                    "missing_rate", "panel_csv", "macro_csv", "include_operational_status"},
                "data");
    read_into(j, "source", d.source);
    if (d.source != "synthetic" && d.source != "csv")
        throw config_error("config: data.source must be \"synthetic\" or \"csv\"");
    read_into(j, "n_companies", d.synth.n_companies);
    read_into(j, "year_start", d.synth.year_start);
    read_into(j, "year_end", d.synth.year_end);
    read_into(j, "censor_year", d.synth.censor_year);
    read_into(j, "target_distress_rate", d.synth.target_distress_rate);
    read_into(j, "censored_fraction", d.synth.censored_fraction);
    read_into(j, "zombie_fraction", d.synth.zombie_fraction);
    read_into(j, "leveraged_liquid_fraction", d.synth.leveraged_liquid_fraction);
    read_into(j, "illiquid_fraction", d.synth.illiquid_fraction);
    read_into(j, "missing_rate", d.synth.missing_rate);
    read_into(j, "panel_csv", d.panel_csv);
    read_into(j, "macro_csv", d.macro_csv);
    read_into(j, "include_operational_status", d.include_operational_status);
    if (d.source == "csv" && d.panel_csv.empty())
        throw config_error("config: data.panel_csv is required when data.source is \"csv\"");
    return d;
}

ScalingConfig parse_scaling(const nlohmann::json& j) {
    ScalingConfig s;
    expect_keys(j, {"enabled", "strategies", "min_samples_split", "ensemble_m", "ensemble_n", "knn_k",
                    "leaf_capacity"},
                "scaling");
    read_into(j, "enabled", s.enabled);
    read_into(j, "strategies", s.strategies);
    for (const auto& strategy : s.strategies)
        if (strategy != "partition" && strategy != "ensemble")
            throw config_error("config: unknown scaling strategy \"" + strategy + "\"");
    read_into(j, "min_samples_split", s.min_samples_split);
    read_into(j, "ensemble_m", s.ensemble_m);
    read_into(j, "ensemble_n", s.ensemble_n);
    read_into(j, "knn_k", s.knn_k);
    read_into(j, "leaf_capacity", s.leaf_capacity);
    return s;
}

LlmConfig parse_llm(const nlohmann::json& j) {
    LlmConfig l;
    expect_keys(j, {"enabled", "mock", "modes", "icl_k", "max_rows", "calibration_rows", "base_url", "model",
                    "api_key_env", "max_concurrent", "timeout_s", "retries", "parse_mode"},
                "llm");
    read_into(j, "enabled", l.enabled);
    read_into(j, "mock", l.mock);
    read_into(j, "modes", l.modes);
    for (const auto& mode : l.modes)
        if (mode != "zero_shot" && mode != "icl")
            throw config_error("config: unknown llm mode \"" + mode + "\"");
    read_into(j, "icl_k", l.icl_k);
    read_into(j, "max_rows", l.max_rows);
    read_into(j, "calibration_rows", l.calibration_rows);
    read_into(j, "base_url", l.endpoint.base_url);
    read_into(j, "model", l.endpoint.model);
    read_into(j, "api_key_env", l.endpoint.api_key_env);
    read_into(j, "max_concurrent", l.endpoint.max_concurrent);
    read_into(j, "timeout_s", l.endpoint.timeout_s);
    read_into(j, "retries", l.endpoint.retries);
    read_into(j, "parse_mode", l.parse_mode);
    if (l.parse_mode != "strict" && l.parse_mode != "lenient")
        throw config_error("config: llm.parse_mode must be \"strict\" or \"lenient\"");
    if (!l.mock && l.endpoint.base_url.empty())
        throw config_error("config: llm.base_url is required when llm.mock is false");
    return l;
}

TimingConfig parse_timing(const nlohmann::json& j) {
    TimingConfig t;
    expect_keys(j, {"enabled", "batch_size", "runs", "warmup"}, "timing");
    read_into(j, "enabled", t.enabled);
    read_into(j, "batch_size", t.batch_size);
    read_into(j, "runs", t.runs);
    read_into(j, "warmup", t.warmup);
    return t;
}

} // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
    RunConfig c;
    expect_keys(j, {"out_dir", "seed", "horizons", "data", "rule", "split", "models", "gbt_max_bins", "scaling",
                    "llm", "timing"},
                "config root");
    std::string out_dir;
    read_into(j, "out_dir", out_dir);
    if (!out_dir.empty()) c.out_dir = out_dir;
    read_into(j, "seed", c.seed);
    read_into(j, "horizons", c.horizons);
    if (c.horizons.empty()) throw config_error("config: horizons must be non-empty");
    for (int h : c.horizons)
        if (h < 0 || h > 4) throw config_error("config: horizons must lie in {0..4}");
    std::sort(c.horizons.begin(), c.horizons.end());
    c.horizons.erase(std::unique(c.horizons.begin(), c.horizons.end()), c.horizons.end());

    if (j.contains("data")) c.data = parse_data(j.at("data"));
    c.data.synth.seed = c.seed;

    if (j.contains("rule")) {
        expect_keys(j.at("rule"), {"equity_ta_max", "ebitda_ta_max", "current_ratio_max", "censor_year"}, "rule");
        read_into(j.at("rule"), "equity_ta_max", c.rule.equity_ta_max);
        read_into(j.at("rule"), "ebitda_ta_max", c.rule.ebitda_ta_max);
        read_into(j.at("rule"), "current_ratio_max", c.rule.current_ratio_max);
        read_into(j.at("rule"), "censor_year", c.rule.censor_year);
    } else {
        c.rule.censor_year = c.data.synth.censor_year;
    }
    labeling::validate_rule(c.rule);

    if (j.contains("split")) {
        expect_keys(j.at("split"), {"test_size", "validation_fraction"}, "split");
        read_into(j.at("split"), "test_size", c.split.test_size);
        read_into(j.at("split"), "validation_fraction", c.split.validation_fraction);
    }
    c.split.seed = c.seed;

    read_into(j, "models", c.models);
    static const std::set<std::string> known_models = {"logreg", "xgboost", "lightgbm", "catboost", "mlp"};
    for (const auto& model : c.models)
        if (!known_models.count(model)) throw config_error("config: unknown model \"" + model + "\"");

    read_into(j, "gbt_max_bins", c.gbt_max_bins);
    if (j.contains("scaling")) c.scaling = parse_scaling(j.at("scaling"));
    if (j.contains("llm")) c.llm = parse_llm(j.at("llm"));
    if (j.contains("timing")) c.timing = parse_timing(j.at("timing"));
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto parsed = nlohmann::json::parse(buffer.str(), nullptr, false);
    if (parsed.is_discarded()) throw config_error("config: " + path.string() + " is not valid JSON");
    return parse_run_config(parsed);
}

// out_dir is deliberately absent: the snapshot captures what a run computes,
// not where it lives, so runs into different directories stay comparable.
nlohmann::json config_snapshot(const RunConfig& c) {
    return nlohmann::json{
        {"seed", c.seed},
        {"horizons", c.horizons},
        {"data",
         {{"source", c.data.source},
          {"n_companies", c.data.synth.n_companies},
          {"year_start", c.data.synth.year_start},
          {"year_end", c.data.synth.year_end},
          {"censor_year", c.data.synth.censor_year},
          {"target_distress_rate", c.data.synth.target_distress_rate},
          {"censored_fraction", c.data.synth.censored_fraction},
          {"zombie_fraction", c.data.synth.zombie_fraction},
          {"leveraged_liquid_fraction", c.data.synth.leveraged_liquid_fraction},
          {"illiquid_fraction", c.data.synth.illiquid_fraction},
          {"missing_rate", c.data.synth.missing_rate},
          {"panel_csv", c.data.panel_csv},
          {"macro_csv", c.data.macro_csv},
          {"include_operational_status", c.data.include_operational_status}}},
        {"rule",
         {{"equity_ta_max", c.rule.equity_ta_max},
          {"ebitda_ta_max", c.rule.ebitda_ta_max},
          {"current_ratio_max", c.rule.current_ratio_max},
          {"censor_year", c.rule.censor_year}}},
        {"split", {{"test_size", c.split.test_size}, {"validation_fraction", c.split.validation_fraction}}},
        {"models", c.models},
        {"gbt_max_bins", c.gbt_max_bins},
        {"scaling",
         {{"enabled", c.scaling.enabled},
          {"strategies", c.scaling.strategies},
          {"min_samples_split", c.scaling.min_samples_split},
          {"ensemble_m", c.scaling.ensemble_m},
          {"ensemble_n", c.scaling.ensemble_n},
          {"knn_k", c.scaling.knn_k},
          {"leaf_capacity", c.scaling.leaf_capacity}}},
        {"llm",
         {{"enabled", c.llm.enabled},
          {"mock", c.llm.mock},
          {"modes", c.llm.modes},
          {"icl_k", c.llm.icl_k},
          {"max_rows", c.llm.max_rows},
          {"calibration_rows", c.llm.calibration_rows},
          {"base_url", c.llm.endpoint.base_url},
          {"model", c.llm.endpoint.model},
          {"api_key_env", c.llm.endpoint.api_key_env},
          {"max_concurrent", c.llm.endpoint.max_concurrent},
          {"timeout_s", c.llm.endpoint.timeout_s},
          {"retries", c.llm.endpoint.retries},
          {"parse_mode", c.llm.parse_mode}}},
        {"timing",
         {{"enabled", c.timing.enabled},
          {"batch_size", c.timing.batch_size},
          {"runs", c.timing.runs},
          {"warmup", c.timing.warmup}}}};
}

} // namespace bankbench::pipeline
