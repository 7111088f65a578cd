#pragma once

#include <cstdint>
#include <vector>

namespace bankbench::eval {

struct ConfusionMetrics {
    long long tp = 0;
    long long fp = 0;
    long long tn = 0;
    long long fn = 0;
    double accuracy = 0.0;
    double precision = 0.0; // 0 when no positive predictions
    double recall = 0.0;    // 0 when no positive labels
    double f1 = 0.0;
};

// Rank-based ROC-AUC with average ranks for tied scores. Throws metric_error
// when labels are single-class.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Threshold predicate is score >= threshold.
ConfusionMetrics confusion_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                                   double threshold);

struct CalibrationResult {
    double threshold = 0.5;
    double f1 = 0.0;
};

// Scans every distinct score as a candidate threshold and returns the F1
// maximizer; exact integer tie-breaking keeps the smallest optimum (most
// recall). Throws metric_error when labels are single-class.
CalibrationResult calibrate_threshold(const std::vector<double>& scores, const std::vector<int>& labels);

} // namespace bankbench::eval
