#include "bankbench/scaling/ensemble.hpp"

#include <random>
#include <string>

#include "bankbench/core/error.hpp"

namespace bankbench::scaling {

void BootstrapEnsemble::fit(const Matrix& x, const std::vector<int>& y, const LeafFactory& factory,
                            const EnsembleConfig& config) {
    if (x.rows() == 0) throw training_error("ensemble: empty training set");
    if (x.rows() != y.size()) throw training_error("ensemble: label count does not match row count");
    if (config.m < 1) throw config_error("ensemble: m must be >= 1");
    if (config.n < 1) throw config_error("ensemble: n must be >= 1");

    members_.clear();
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::size_t> pick(0, x.rows() - 1);

    for (std::size_t member = 0; member < config.m; ++member) {
        auto learner = factory();
        if (!learner) throw training_error("ensemble member " + std::to_string(member) + ": factory returned null");
        if (config.n > learner->max_fit_rows())
            throw config_error("ensemble: subset size " + std::to_string(config.n) + " exceeds learner capacity " +
                               std::to_string(learner->max_fit_rows()));

        std::vector<std::size_t> rows(config.n);
        for (std::size_t i = 0; i < config.n; ++i) rows[i] = pick(rng);
        std::vector<int> subset_y(config.n);
        for (std::size_t i = 0; i < config.n; ++i) subset_y[i] = y[rows[i]];
        try {
            learner->fit(x.gather_rows(rows), subset_y);
        } catch (const std::exception& e) {
            throw training_error("ensemble member " + std::to_string(member) + ": " + e.what());
        }
        members_.push_back(std::move(learner));
    }
    fitted_ = true;
}

EnsemblePrediction BootstrapEnsemble::predict(const Matrix& x, double member_threshold) const {
    if (!fitted_) throw training_error("ensemble: predict before fit");

    EnsemblePrediction result;
    result.votes.assign(x.rows(), 0);
    result.mean_probability.assign(x.rows(), 0.0);

    std::vector<std::size_t> positive_votes(x.rows(), 0);
    for (const auto& member : members_) {
        auto scores = member->predict_proba(x);
        for (std::size_t r = 0; r < x.rows(); ++r) {
            result.mean_probability[r] += scores[r];
            if (scores[r] >= member_threshold) positive_votes[r] += 1;
        }
    }
    for (std::size_t r = 0; r < x.rows(); ++r) {
        result.mean_probability[r] /= static_cast<double>(members_.size());
        result.votes[r] = 2 * positive_votes[r] >= members_.size() ? 1 : 0;
    }
    return result;
}

} // namespace bankbench::scaling
