#include "bankbench/scaling/leaf.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bankbench/core/error.hpp"

namespace bankbench::scaling {

KnnLeafLearner::KnnLeafLearner(KnnParams params) : params_(params) {
    if (params_.k < 1) throw config_error("knn leaf: k must be >= 1");
    if (params_.capacity < 1) throw config_error("knn leaf: capacity must be >= 1");
}

void KnnLeafLearner::fit(const Matrix& x, const std::vector<int>& y) {
    if (x.rows() == 0) throw training_error("knn leaf: empty training set");
    if (x.rows() != y.size()) throw training_error("knn leaf: label count does not match row count");
    if (x.rows() > params_.capacity)
        throw training_error("knn leaf: " + std::to_string(x.rows()) + " rows exceed capacity " +
                             std::to_string(params_.capacity));
    for (int label : y)
        if (label != 0 && label != 1) throw training_error("knn leaf: labels must be 0 or 1");
    train_ = x;
    labels_ = y;
    fitted_ = true;
}

std::vector<double> KnnLeafLearner::predict_proba(const Matrix& x) const {
    if (!fitted_) throw training_error("knn leaf: predict before fit");
    if (x.cols() != train_.cols()) throw data_error("knn leaf: feature count mismatch");

    const std::size_t n = train_.rows();
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(params_.k), n);
    std::vector<double> out(x.rows());
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto q = x.row(r);
        for (std::size_t i = 0; i < n; ++i) {
            auto t = train_.row(i);
            double sq = 0.0;
            for (std::size_t c = 0; c < q.size(); ++c) {
                double diff = q[c] - t[c];
                sq += diff * diff;
            }
            dist[i] = {std::sqrt(sq), i};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        double weight_sum = 0.0;
        double positive_sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double w = 1.0 / (dist[j].first + 1e-12);
            weight_sum += w;
            positive_sum += w * labels_[dist[j].second];
        }
        out[r] = positive_sum / weight_sum;
    }
    return out;
}

CappedAdapter::CappedAdapter(std::unique_ptr<models::ModelAdapter> inner, std::size_t capacity)
    : inner_(std::move(inner)), capacity_(capacity) {
    if (!inner_) throw config_error("capped adapter: null inner model");
    if (capacity_ < 1) throw config_error("capped adapter: capacity must be >= 1");
}

void CappedAdapter::fit(const Matrix& x, const std::vector<int>& y) {
    if (x.rows() > capacity_)
        throw training_error(inner_->name() + ": " + std::to_string(x.rows()) + " rows exceed capacity " +
                             std::to_string(capacity_));
    inner_->fit(x, y);
}

std::vector<double> CappedAdapter::predict_proba(const Matrix& x) const { return inner_->predict_proba(x); }

std::string CappedAdapter::name() const { return "capped_" + inner_->name(); }

} // namespace bankbench::scaling
