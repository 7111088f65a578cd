#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bankbench/core/matrix.hpp"
#include "bankbench/models/adapter.hpp"

namespace bankbench::scaling {

// A classifier with a declared training capacity. Unlike ModelAdapter it must
// tolerate single-class training data, because partition leaves can be pure.
class LeafLearner {
public:
    virtual ~LeafLearner() = default;
    virtual std::size_t max_fit_rows() const = 0;
    virtual void fit(const Matrix& x, const std::vector<int>& y) = 0;
    virtual std::vector<double> predict_proba(const Matrix& x) const = 0;
    virtual std::string name() const = 0;
};

using LeafFactory = std::function<std::unique_ptr<LeafLearner>()>;

struct KnnParams {
    int k = 64;
    std::size_t capacity = 10000;
};

// Distance-weighted k-nearest-neighbors scorer. Fitting memorizes the rows;
// prediction averages neighbor labels with weight 1/(distance + 1e-12).
// Neighbor ties are broken by (distance, row index), both ascending.
class KnnLeafLearner : public LeafLearner {
public:
    explicit KnnLeafLearner(KnnParams params = {});

    std::size_t max_fit_rows() const override { return params_.capacity; }
    void fit(const Matrix& x, const std::vector<int>& y) override;
    std::vector<double> predict_proba(const Matrix& x) const override;
    std::string name() const override { return "knn_leaf"; }

    const Matrix& memorized_rows() const { return train_; }

private:
    KnnParams params_;
    Matrix train_;
    std::vector<int> labels_;
    bool fitted_ = false;
};

// Adapts any ModelAdapter to the LeafLearner contract by bolting a capacity
// limit onto it. Single-class rejection by the inner model still applies.
class CappedAdapter : public LeafLearner {
public:
    explicit CappedAdapter(std::unique_ptr<models::ModelAdapter> inner, std::size_t capacity = 10000);

    std::size_t max_fit_rows() const override { return capacity_; }
    void fit(const Matrix& x, const std::vector<int>& y) override;
    std::vector<double> predict_proba(const Matrix& x) const override;
    std::string name() const override;

private:
    std::unique_ptr<models::ModelAdapter> inner_;
    std::size_t capacity_;
};

} // namespace bankbench::scaling
