#include "bankbench/eval/report.hpp"

#include <algorithm>

#include "bankbench/core/error.hpp"
#include "bankbench/core/numeric.hpp"

namespace bankbench::eval {

EvalReport build_report(int horizon, std::vector<ModelEvalResult> results) {
    if (results.empty()) throw metric_error("build_report: no results");
    EvalReport rep;
    rep.horizon = horizon;
    rep.models = std::move(results);
    const ModelEvalResult* best_f1 = nullptr;
    const ModelEvalResult* best_auc = nullptr;
    for (const auto& r : rep.models) {
        if (!best_f1 || r.confusion.f1 > best_f1->confusion.f1) best_f1 = &r;
        if (!best_auc || r.roc_auc > best_auc->roc_auc) best_auc = &r;
    }
    rep.best_f1_model = best_f1->model;
    rep.best_auc_model = best_auc->model;
    return rep;
}

std::string report_csv(const std::vector<EvalReport>& reports) {
    std::string out = "Prediction Horizon,Model,Accuracy,Precision,Recall,F1-score,ROC-AUC\n";
    for (const auto& rep : reports) {
        for (const auto& r : rep.models) {
            out += std::to_string(rep.horizon);
            out += ',' + r.model;
            out += ',' + format_double(r.confusion.accuracy);
            out += ',' + format_double(r.confusion.precision);
            out += ',' + format_double(r.confusion.recall);
            out += ',' + format_double(r.confusion.f1);
            out += ',' + format_double(r.roc_auc);
            out += '\n';
        }
    }
    return out;
}

nlohmann::json report_json(const EvalReport& report) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& r : report.models) {
        models.push_back({
            {"model", r.model},
            {"threshold", r.threshold},
            {"accuracy", r.confusion.accuracy},
            {"precision", r.confusion.precision},
            {"recall", r.confusion.recall},
            {"f1", r.confusion.f1},
            {"roc_auc", r.roc_auc},
            {"tp", r.confusion.tp},
            {"fp", r.confusion.fp},
            {"tn", r.confusion.tn},
            {"fn", r.confusion.fn},
            {"evaluated", r.evaluated},
            {"parse_failures", r.parse_failures},
        });
    }
    return nlohmann::json{
        {"horizon", report.horizon},
        {"models", models},
        {"best_f1_model", report.best_f1_model},
        {"best_auc_model", report.best_auc_model},
    };
}

std::string render_table(const std::vector<EvalReport>& reports) {
    const std::vector<std::string> headers{"h", "model", "acc", "prec", "rec", "f1", "auc"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& rep : reports) {
        for (const auto& r : rep.models) {
            rows.push_back({std::to_string(rep.horizon), r.model,
                            format_fixed(r.confusion.accuracy, 4), format_fixed(r.confusion.precision, 4),
                            format_fixed(r.confusion.recall, 4), format_fixed(r.confusion.f1, 4),
                            format_fixed(r.roc_auc, 4)});
        }
    }
    std::vector<std::size_t> width(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

    auto emit = [&](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            line.append(width[c] - row[c].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        return line + "\n";
    };
    std::string out = emit(headers);
    std::string rule;
    for (std::size_t c = 0; c < headers.size(); ++c) rule += std::string(width[c], '-') + "  ";
    while (!rule.empty() && rule.back() == ' ') rule.pop_back();
    out += rule + "\n";
    for (const auto& row : rows) out += emit(row);
    return out;
}

} // namespace bankbench::eval
