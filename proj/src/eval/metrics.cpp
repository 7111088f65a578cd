#include "bankbench/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bankbench/core/error.hpp"

namespace bankbench::eval {

namespace {

void check_inputs(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw metric_error("metrics: scores and labels length mismatch");
    if (scores.empty()) throw metric_error("metrics: empty input");
    for (double s : scores) {
        if (std::isnan(s)) throw metric_error("metrics: NaN score");
    }
    for (int y : labels) {
        if (y != 0 && y != 1) throw metric_error("metrics: labels must be 0/1");
    }
}

} // namespace

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_inputs(scores, labels);
    std::size_t n = scores.size();
    long long n_pos = std::accumulate(labels.begin(), labels.end(), 0ll);
    long long n_neg = static_cast<long long>(n) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw metric_error("roc_auc: undefined for single-class labels");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // average ranks over tie groups, ranks are 1-based
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
        }
        i = j + 1;
    }
    double u = rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

ConfusionMetrics confusion_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                                   double threshold) {
    check_inputs(scores, labels);
    ConfusionMetrics m;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        bool pred = scores[i] >= threshold;
        if (pred && labels[i] == 1) ++m.tp;
        else if (pred) ++m.fp;
        else if (labels[i] == 1) ++m.fn;
        else ++m.tn;
    }
    auto total = static_cast<double>(scores.size());
    m.accuracy = static_cast<double>(m.tp + m.tn) / total;
    m.precision = (m.tp + m.fp) > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp) : 0.0;
    m.recall = (m.tp + m.fn) > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn) : 0.0;
    m.f1 = (2 * m.tp + m.fp + m.fn) > 0
               ? 2.0 * static_cast<double>(m.tp) / static_cast<double>(2 * m.tp + m.fp + m.fn)
               : 0.0;
    return m;
}

CalibrationResult calibrate_threshold(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_inputs(scores, labels);
    long long n_pos = std::accumulate(labels.begin(), labels.end(), 0ll);
    long long n_neg = static_cast<long long>(scores.size()) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw metric_error("calibrate_threshold: undefined for single-class labels");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    // Walk candidates from the highest score down. At threshold t = s every
    // row with score >= s is predicted positive, so tp/fp accumulate over
    // whole tie groups. F1 comparisons are exact: with f1 = 2tp / (2tp+fp+fn),
    // f1_a > f1_b  <=>  tp_a * (2tp_b + fp_b + fn_b) > tp_b * (2tp_a + fp_a + fn_a).
    long long tp = 0, fp = 0;
    long long best_tp = 0, best_fp = 0;
    double best_threshold = scores[order[0]];
    bool have_best = false;

    std::size_t i = 0;
    while (i < order.size()) {
        double t = scores[order[i]];
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == t) {
            if (labels[order[j]] == 1) ++tp;
            else ++fp;
            ++j;
        }
        long long fn = n_pos - tp;
        if (!have_best) {
            have_best = true;
            best_tp = tp;
            best_fp = fp;
            best_threshold = t;
        } else {
            long long best_fn = n_pos - best_tp;
            // cand >= best keeps the later (smaller) threshold on exact ties
            __int128 lhs = static_cast<__int128>(tp) * (2 * best_tp + best_fp + best_fn);
            __int128 rhs = static_cast<__int128>(best_tp) * (2 * tp + fp + fn);
            if (lhs >= rhs) {
                best_tp = tp;
                best_fp = fp;
                best_threshold = t;
            }
        }
        i = j;
    }

    CalibrationResult out;
    out.threshold = best_threshold;
    long long best_fn = n_pos - best_tp;
    out.f1 = (2 * best_tp + best_fp + best_fn) > 0
                 ? 2.0 * static_cast<double>(best_tp) / static_cast<double>(2 * best_tp + best_fp + best_fn)
                 : 0.0;
    return out;
}

} // namespace bankbench::eval
