#include "bankbench/scaling/partition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "bankbench/core/error.hpp"

namespace bankbench::scaling {

namespace {

// Quantile bin edges per feature; a value's bin is the index of the first
// edge >= value, so bin <= b is exactly value <= edges[b].
std::vector<std::vector<double>> bin_edges(const Matrix& x, int max_bins) {
    std::vector<std::vector<double>> edges(x.cols());
    std::vector<double> column(x.rows());
    for (std::size_t c = 0; c < x.cols(); ++c) {
        for (std::size_t r = 0; r < x.rows(); ++r) column[r] = x.at(r, c);
        std::sort(column.begin(), column.end());
        std::vector<double>& e = edges[c];
        for (int b = 1; b < max_bins; ++b) {
            double v = column[(static_cast<std::size_t>(b) * column.size()) / static_cast<std::size_t>(max_bins)];
            if (e.empty() || v > e.back()) e.push_back(v);
        }
        while (!e.empty() && e.back() >= column.back()) e.pop_back();
    }
    return edges;
}

std::uint8_t bin_of(const std::vector<double>& edges, double v) {
    return static_cast<std::uint8_t>(std::lower_bound(edges.begin(), edges.end(), v) - edges.begin());
}

double gini(std::size_t n, std::size_t positives) {
    double p = static_cast<double>(positives) / static_cast<double>(n);
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

struct BestSplit {
    bool found = false;
    std::size_t feature = 0;
    int bin = 0;
    double gain = 0.0;
};

} // namespace

void PartitionedModel::fit(const Matrix& x, const std::vector<int>& y, const LeafFactory& factory,
                           const PartitionConfig& config) {
    if (x.rows() == 0) throw training_error("partition: empty training set");
    if (x.rows() != y.size()) throw training_error("partition: label count does not match row count");
    if (config.min_samples_split < 2) throw config_error("partition: min_samples_split must be >= 2");
    if (config.max_depth < 1 || config.max_depth > 16)
        throw config_error("partition: max_depth must be in [1, 16]");
    if (config.max_bins < 2 || config.max_bins > 256)
        throw config_error("partition: max_bins must be in [2, 256]");
    for (int label : y)
        if (label != 0 && label != 1) throw training_error("partition: labels must be 0 or 1");

    config_ = config;
    nodes_.clear();
    leaves_.clear();
    models_.clear();

    const auto edges = bin_edges(x, config.max_bins);
    const std::size_t d = x.cols();
    std::vector<std::uint8_t> codes(x.rows() * d);
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) codes[r * d + c] = bin_of(edges[c], x.at(r, c));

    std::vector<std::size_t> order(x.rows());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(config.seed);

    std::vector<std::size_t> bin_n(d * static_cast<std::size_t>(config.max_bins));
    std::vector<std::size_t> bin_pos(d * static_cast<std::size_t>(config.max_bins));

    auto make_leaf = [&](std::size_t begin, std::size_t end, int depth) {
        int leaf = static_cast<int>(leaves_.size());
        LeafInfo info;
        info.rows_routed = end - begin;
        info.depth = depth;

        std::vector<std::size_t> rows(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                      order.begin() + static_cast<std::ptrdiff_t>(end));
        try {
            auto learner = factory();
            if (!learner) throw training_error("factory returned null");
            if (rows.size() > learner->max_fit_rows()) {
                std::shuffle(rows.begin(), rows.end(), rng);
                rows.resize(learner->max_fit_rows());
                std::sort(rows.begin(), rows.end());
                info.subsampled = true;
            }
            info.rows_fit = rows.size();
            std::vector<int> leaf_y(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) leaf_y[i] = y[rows[i]];
            learner->fit(x.gather_rows(rows), leaf_y);
            models_.push_back(std::move(learner));
        } catch (const std::exception& e) {
            throw training_error("partition leaf " + std::to_string(leaf) + ": " + e.what());
        }
        leaves_.push_back(info);

        int node = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        nodes_[node].leaf = leaf;
        return node;
    };

    auto grow = [&](auto&& self, std::size_t begin, std::size_t end, int depth) -> int {
        const std::size_t n = end - begin;
        std::size_t positives = 0;
        for (std::size_t i = begin; i < end; ++i) positives += static_cast<std::size_t>(y[order[i]]);
        const bool pure = positives == 0 || positives == n;
        if (n < config.min_samples_split || depth >= config.max_depth || pure)
            return make_leaf(begin, end, depth);

        std::fill(bin_n.begin(), bin_n.end(), 0);
        std::fill(bin_pos.begin(), bin_pos.end(), 0);
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t row = order[i];
            const int label = y[row];
            const std::uint8_t* code = codes.data() + row * d;
            for (std::size_t c = 0; c < d; ++c) {
                std::size_t slot = c * static_cast<std::size_t>(config.max_bins) + code[c];
                bin_n[slot] += 1;
                bin_pos[slot] += static_cast<std::size_t>(label);
            }
        }

        const double parent = gini(n, positives);
        BestSplit best;
        for (std::size_t c = 0; c < d; ++c) {
            std::size_t left_n = 0;
            std::size_t left_pos = 0;
            const std::size_t base = c * static_cast<std::size_t>(config.max_bins);
            for (int b = 0; b + 1 < config.max_bins; ++b) {
                left_n += bin_n[base + static_cast<std::size_t>(b)];
                left_pos += bin_pos[base + static_cast<std::size_t>(b)];
                if (left_n == 0 || left_n == n) continue;
                const std::size_t right_n = n - left_n;
                const std::size_t right_pos = positives - left_pos;
                double weighted = (static_cast<double>(left_n) / static_cast<double>(n)) * gini(left_n, left_pos) +
                                  (static_cast<double>(right_n) / static_cast<double>(n)) * gini(right_n, right_pos);
                double gain = parent - weighted;
                if (gain <= config.min_gain) continue;
                if (!best.found || gain > best.gain) {
                    best.found = true;
                    best.feature = c;
                    best.bin = b;
                    best.gain = gain;
                }
            }
        }
        if (!best.found) return make_leaf(begin, end, depth);

        auto mid_it = std::stable_partition(
            order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(end),
            [&](std::size_t row) { return codes[row * d + best.feature] <= best.bin; });
        const std::size_t mid = static_cast<std::size_t>(mid_it - order.begin());

        int node = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        nodes_[node].feature = static_cast<int>(best.feature);
        nodes_[node].threshold = edges[best.feature][static_cast<std::size_t>(best.bin)];
        int left = self(self, begin, mid, depth + 1);
        int right = self(self, mid, end, depth + 1);
        nodes_[node].left = left;
        nodes_[node].right = right;
        return node;
    };

    grow(grow, 0, x.rows(), 0);
    fitted_ = true;
}

std::size_t PartitionedModel::route(std::span<const double> row) const {
    if (!fitted_) throw training_error("partition: route before fit");
    int node = 0;
    while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
        const Node& n = nodes_[static_cast<std::size_t>(node)];
        if (static_cast<std::size_t>(n.feature) >= row.size())
            throw data_error("partition: feature count mismatch");
        node = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return static_cast<std::size_t>(nodes_[static_cast<std::size_t>(node)].leaf);
}

std::vector<double> PartitionedModel::predict_proba(const Matrix& x) const {
    if (!fitted_) throw training_error("partition: predict before fit");

    std::vector<std::vector<std::size_t>> per_leaf(leaves_.size());
    for (std::size_t r = 0; r < x.rows(); ++r) per_leaf[route(x.row(r))].push_back(r);

    std::vector<double> out(x.rows());
    for (std::size_t leaf = 0; leaf < per_leaf.size(); ++leaf) {
        if (per_leaf[leaf].empty()) continue;
        auto scores = models_[leaf]->predict_proba(x.gather_rows(per_leaf[leaf]));
        for (std::size_t i = 0; i < per_leaf[leaf].size(); ++i) out[per_leaf[leaf][i]] = scores[i];
    }
    return out;
}

nlohmann::json PartitionedModel::partition_report() const {
    if (!fitted_) throw training_error("partition: report before fit");
    nlohmann::json leaves = nlohmann::json::array();
    int max_depth = 0;
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
        const LeafInfo& info = leaves_[i];
        leaves.push_back({{"leaf", i},
                          {"rows_routed", info.rows_routed},
                          {"rows_fit", info.rows_fit},
                          {"depth", info.depth},
                          {"subsampled", info.subsampled}});
        max_depth = std::max(max_depth, info.depth);
    }
    return nlohmann::json{{"leaf_count", leaves_.size()},
                          {"max_leaf_depth", max_depth},
                          {"min_samples_split", config_.min_samples_split},
                          {"leaves", leaves}};
}

} // namespace bankbench::scaling
