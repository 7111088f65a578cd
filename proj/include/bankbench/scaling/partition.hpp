#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "json.hpp"

#include "bankbench/core/matrix.hpp"
#include "bankbench/scaling/leaf.hpp"

namespace bankbench::scaling {

struct PartitionConfig {
    std::size_t min_samples_split = 10000;
    int max_depth = 16;
    int max_bins = 256;
    double min_gain = 1e-12;
    // Drawn from only when a leaf exceeds the learner capacity and must be
    // subsampled; untouched otherwise so degenerate partitions stay
    // bit-identical to the bare learner.
    std::uint64_t seed = 42;
};

struct LeafInfo {
    std::size_t rows_routed = 0;
    std::size_t rows_fit = 0;
    int depth = 0;
    bool subsampled = false;
};

// Routes rows through a shallow gini decision tree and scores each row with
// the learner fitted on its leaf's training rows.
class PartitionedModel {
public:
    void fit(const Matrix& x, const std::vector<int>& y, const LeafFactory& factory,
             const PartitionConfig& config = {});
    std::vector<double> predict_proba(const Matrix& x) const;

    // Leaf index a feature row routes to; exposed for routing-consistency checks.
    std::size_t route(std::span<const double> row) const;

    std::size_t leaf_count() const { return leaves_.size(); }
    const std::vector<LeafInfo>& leaf_info() const { return leaves_; }
    const LeafLearner& leaf_model(std::size_t leaf) const { return *models_.at(leaf); }
    nlohmann::json partition_report() const;

private:
    struct Node {
        int feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        int leaf = -1;
    };

    std::vector<Node> nodes_;
    std::vector<LeafInfo> leaves_;
    std::vector<std::unique_ptr<LeafLearner>> models_;
    PartitionConfig config_;
    bool fitted_ = false;
};

} // namespace bankbench::scaling
