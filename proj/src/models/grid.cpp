#include "bankbench/models/grid.hpp"

#include <cmath>

#include "bankbench/core/error.hpp"
#include "bankbench/eval/metrics.hpp"
#include "bankbench/models/gbt.hpp"
#include "bankbench/models/logreg.hpp"
#include "bankbench/models/mlp.hpp"

namespace bankbench::models {

GridSpec GridSpec::logreg_default() {
    GridSpec s;
    s.family = ModelFamily::logreg;
    s.label = "logreg";
    for (int i = 0; i < 5; ++i) s.logreg_c.push_back(std::pow(10.0, -3.0 + 3.0 * i / 4.0));
    return s;
}

GridSpec GridSpec::gbt_xgboost() {
    GridSpec s;
    s.family = ModelFamily::gbt;
    s.label = "xgboost";
    s.gbt_n_estimators = {100, 200, 500};
    s.gbt_max_depth = {3, 5, 7};
    s.gbt_learning_rate = {0.01, 0.05, 0.1, 0.2};
    return s;
}

GridSpec GridSpec::gbt_lightgbm() {
    GridSpec s;
    s.family = ModelFamily::gbt;
    s.label = "lightgbm";
    s.gbt_n_estimators = {100, 200};
    s.gbt_max_depth = {-1, 5, 10};
    s.gbt_learning_rate = {0.01, 0.05, 0.1, 0.2};
    return s;
}

GridSpec GridSpec::gbt_catboost() {
    GridSpec s;
    s.family = ModelFamily::gbt;
    s.label = "catboost";
    s.gbt_n_estimators = {100, 200};
    s.gbt_max_depth = {4, 6, 8};
    s.gbt_learning_rate = {0.01, 0.05, 0.1};
    return s;
}

GridSpec GridSpec::mlp_default() {
    GridSpec s;
    s.family = ModelFamily::mlp;
    s.label = "mlp";
    s.mlp_hidden = {{32, 32}, {64, 64}, {128, 128}, {256, 256}, {512, 512}};
    s.mlp_alpha = {1e-4, 1e-3, 1e-2};
    s.mlp_learning_rate_init = {1e-3, 1e-2};
    return s;
}

std::vector<nlohmann::json> enumerate_candidates(const GridSpec& spec) {
    std::vector<nlohmann::json> out;
    switch (spec.family) {
    case ModelFamily::logreg:
        if (spec.logreg_c.empty()) throw config_error("grid: empty logreg c grid");
        for (double c : spec.logreg_c) out.push_back({{"c", c}});
        break;
    case ModelFamily::gbt:
        if (spec.gbt_n_estimators.empty() || spec.gbt_max_depth.empty() || spec.gbt_learning_rate.empty())
            throw config_error("grid: empty gbt grid axis");
        for (int n : spec.gbt_n_estimators)
            for (int d : spec.gbt_max_depth)
                for (double lr : spec.gbt_learning_rate)
                    out.push_back({{"n_estimators", n}, {"max_depth", d}, {"learning_rate", lr}});
        break;
    case ModelFamily::mlp:
        if (spec.mlp_hidden.empty() || spec.mlp_alpha.empty() || spec.mlp_learning_rate_init.empty())
            throw config_error("grid: empty mlp grid axis");
        for (const auto& h : spec.mlp_hidden)
            for (double a : spec.mlp_alpha)
                for (double lr : spec.mlp_learning_rate_init)
                    out.push_back({{"hidden", h}, {"alpha", a}, {"learning_rate_init", lr}});
        break;
    }
    return out;
}

std::unique_ptr<ModelAdapter> build_model(const GridSpec& spec, const nlohmann::json& params) {
    switch (spec.family) {
    case ModelFamily::logreg: {
        LogregParams p;
        p.c = params.at("c").get<double>();
        return std::make_unique<LogisticRegression>(p);
    }
    case ModelFamily::gbt: {
        GbtParams p;
        p.n_estimators = params.at("n_estimators").get<int>();
        p.max_depth = params.at("max_depth").get<int>();
        if (p.max_depth == -1) p.max_depth = 16; // unlimited-depth preset entry
        p.learning_rate = params.at("learning_rate").get<double>();
        p.max_bins = spec.gbt_max_bins;
        return std::make_unique<GradientBoostedTrees>(p);
    }
    case ModelFamily::mlp: {
        MlpParams p;
        p.hidden = params.at("hidden").get<std::vector<int>>();
        p.alpha = params.at("alpha").get<double>();
        p.learning_rate_init = params.at("learning_rate_init").get<double>();
        p.epochs = spec.mlp_epochs;
        p.batch_size = spec.mlp_batch_size;
        p.seed = spec.seed;
        return std::make_unique<MlpClassifier>(p);
    }
    }
    throw config_error("grid: unknown model family");
}

GridSearchResult grid_search(const GridSpec& spec, const Matrix& x_train, const std::vector<int>& y_train,
                             const Matrix& x_val, const std::vector<int>& y_val) {
    auto candidates = enumerate_candidates(spec);
    GridSearchResult result;
    bool have_best = false;
    for (const auto& params : candidates) {
        auto model = build_model(spec, params);
        model->fit(x_train, y_train);
        auto val_scores = model->predict_proba(x_val);
        auto cal = eval::calibrate_threshold(val_scores, y_val);

        GridCandidateResult cand;
        cand.params = params;
        cand.validation_f1 = cal.f1;
        cand.threshold = cal.threshold;
        result.table.push_back(cand);
        // strict > keeps the earliest candidate on ties
        if (!have_best || cal.f1 > result.best.validation_f1) {
            have_best = true;
            result.best = cand;
            result.model = std::move(model);
        }
    }
    return result;
}

} // namespace bankbench::models
