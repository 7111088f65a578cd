#pragma once

#include <string>
#include <vector>

#include "bankbench/eval/metrics.hpp"

#include "json.hpp"

namespace bankbench::eval {

struct ModelEvalResult {
    std::string model;
    int horizon = 0;
    double threshold = 0.5;
    ConfusionMetrics confusion;
    double roc_auc = 0.0;
    long long evaluated = 0;      // rows actually scored
    long long parse_failures = 0; // LLM rows dropped before scoring
};

struct EvalReport {
    int horizon = 0;
    std::vector<ModelEvalResult> models;
    std::string best_f1_model;
    std::string best_auc_model;
};

EvalReport build_report(int horizon, std::vector<ModelEvalResult> results);

// CSV in the benchmark-table shape; one row per model.
// Header: Prediction Horizon,Model,Accuracy,Precision,Recall,F1-score,ROC-AUC
std::string report_csv(const std::vector<EvalReport>& reports);

nlohmann::json report_json(const EvalReport& report);

// Fixed-width text table for terminal output.
std::string render_table(const std::vector<EvalReport>& reports);

} // namespace bankbench::eval
