#pragma once

#include "bankbench/models/adapter.hpp"

namespace bankbench::models {

enum class ModelFamily { logreg, gbt, mlp };

// Hyperparameter grid. Candidates are enumerated by nested loops in declared
// member order (first member outermost) so the search order is part of the
// contract; exact F1 ties keep the earlier candidate.
struct GridSpec {
    ModelFamily family = ModelFamily::logreg;
    std::string label = "logreg";

    std::vector<double> logreg_c;

    std::vector<int> gbt_n_estimators;
    std::vector<int> gbt_max_depth;
    std::vector<double> gbt_learning_rate;
    int gbt_max_bins = 0;

    std::vector<std::vector<int>> mlp_hidden;
    std::vector<double> mlp_alpha;
    std::vector<double> mlp_learning_rate_init;
    int mlp_epochs = 200;
    int mlp_batch_size = 256;
    std::uint64_t seed = 42;

    // Reference grids: logreg spans five C values log-spaced over
    // [0.001, 1]; the three GBT presets mirror the usual xgboost / lightgbm /
    // catboost search spaces on the shared engine (depth -1 maps to the
    // engine's cap of 16).
    static GridSpec logreg_default();
    static GridSpec gbt_xgboost();
    static GridSpec gbt_lightgbm();
    static GridSpec gbt_catboost();
    static GridSpec mlp_default();
};

std::vector<nlohmann::json> enumerate_candidates(const GridSpec& spec);

std::unique_ptr<ModelAdapter> build_model(const GridSpec& spec, const nlohmann::json& params);

struct GridCandidateResult {
    nlohmann::json params;
    double validation_f1 = 0.0;
    double threshold = 0.5;
};

struct GridSearchResult {
    GridCandidateResult best;
    std::vector<GridCandidateResult> table; // enumeration order
    std::unique_ptr<ModelAdapter> model;    // the winning fit
};

// Fits every candidate on the train split, calibrates a decision threshold on
// the validation split and keeps the candidate with the best validation F1.
GridSearchResult grid_search(const GridSpec& spec, const Matrix& x_train, const std::vector<int>& y_train,
                             const Matrix& x_val, const std::vector<int>& y_val);

} // namespace bankbench::models
