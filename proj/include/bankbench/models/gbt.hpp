#pragma once

#include <cstdint>

#include "bankbench/models/adapter.hpp"

namespace bankbench::models {

// Gradient boosting on the logistic loss. Second-order (Newton) leaf values,
// exact greedy split search by default, optional quantile-histogram mode for
// large panels. Fully deterministic: no row or feature subsampling.
struct GbtParams {
    int n_estimators = 100;
    int max_depth = 3;
    double learning_rate = 0.1;
    double reg_lambda = 1.0;
    double min_split_gain = 1e-12;
    int min_child_samples = 1;
    int max_bins = 0; // 0 = exact; otherwise histogram mode, capped at 256
};

struct TreeNode {
    int feature = -1; // < 0 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0; // leaf value, learning-rate scaled
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(std::span<const double> row) const;
};

class GradientBoostedTrees : public ModelAdapter {
public:
    explicit GradientBoostedTrees(GbtParams params = {}) : params_(params) {}

    void fit(const Matrix& x, const std::vector<int>& y) override;
    std::vector<double> predict_proba(const Matrix& x) const override;
    std::string name() const override { return "gbt"; }
    nlohmann::json to_json() const override;
    static std::unique_ptr<GradientBoostedTrees> from_json(const nlohmann::json& j);

    const GbtParams& params() const { return params_; }
    double base_score() const { return base_score_; }
    const std::vector<Tree>& trees() const { return trees_; }
    // mean training log-loss recorded after every boosting round
    const std::vector<double>& train_logloss() const { return train_losses_; }

private:
    GbtParams params_;
    double base_score_ = 0.0;
    std::vector<Tree> trees_;
    std::vector<double> train_losses_;
};

std::unique_ptr<GradientBoostedTrees> fit_gbt(const Matrix& x, const std::vector<int>& y,
                                              const GbtParams& params = {});

} // namespace bankbench::models
