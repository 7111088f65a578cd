#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "bankbench/core/matrix.hpp"
#include "bankbench/scaling/leaf.hpp"

namespace bankbench::scaling {

struct EnsembleConfig {
    std::size_t m = 8;
    std::size_t n = 10000;
    std::uint64_t seed = 42;
};

struct EnsemblePrediction {
    std::vector<int> votes;
    std::vector<double> mean_probability;
};

// Fits m leaf learners on bootstrap subsets of size n and aggregates by
// majority vote over per-member thresholded labels. Vote ties go to the
// positive class. Mean member probability is reported alongside the votes.
class BootstrapEnsemble {
public:
    void fit(const Matrix& x, const std::vector<int>& y, const LeafFactory& factory, const EnsembleConfig& config);
    EnsemblePrediction predict(const Matrix& x, double member_threshold) const;

    std::size_t member_count() const { return members_.size(); }
    const LeafLearner& member(std::size_t index) const { return *members_.at(index); }

private:
    std::vector<std::unique_ptr<LeafLearner>> members_;
    bool fitted_ = false;
};

} // namespace bankbench::scaling
