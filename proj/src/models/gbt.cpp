#include "bankbench/models/gbt.hpp"

#include <algorithm>
#include <cmath>

#include "bankbench/core/error.hpp"

namespace bankbench::models {

namespace {

constexpr double k_hessian_floor = 1e-16;

double leaf_value(double g, double h, const GbtParams& p) {
    return -g / (std::max(h, k_hessian_floor) + p.reg_lambda) * p.learning_rate;
}

double split_score(double g, double h, double lambda) { return g * g / (h + lambda); }

struct BestSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
    int bin = -1; // histogram mode only
};

// Shared state for growing one tree.
struct TreeBuilder {
    const Matrix& x;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    const GbtParams& params;
    // histogram mode
    const std::vector<std::vector<double>>* edges = nullptr; // per feature
    const std::vector<std::uint8_t>* codes = nullptr;        // row-major n x d
    Tree tree;
    std::vector<std::size_t> rows;
    std::vector<double>* out_updates = nullptr; // per-row F updates collected at leaves

    int build(std::size_t lo, std::size_t hi, int depth) {
        double g = 0.0, h = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            g += grad[rows[k]];
            h += hess[rows[k]];
        }
        auto count = hi - lo;
        BestSplit best;
        if (depth < params.max_depth && count >= 2 * static_cast<std::size_t>(params.min_child_samples)) {
            best = codes ? best_split_hist(lo, hi, g, h) : best_split_exact(lo, hi, g, h);
        }
        int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (!best.found) {
            double v = leaf_value(g, h, params);
            tree.nodes[node_id].value = v;
            for (std::size_t k = lo; k < hi; ++k) (*out_updates)[rows[k]] += v;
            return node_id;
        }

        auto mid_it = codes ? std::stable_partition(rows.begin() + lo, rows.begin() + hi,
                                                    [&](std::size_t r) {
                                                        return (*codes)[r * x.cols() + best.feature] <=
                                                               best.bin;
                                                    })
                            : std::stable_partition(rows.begin() + lo, rows.begin() + hi,
                                                    [&](std::size_t r) {
                                                        return x.at(r, best.feature) <= best.threshold;
                                                    });
        auto mid = static_cast<std::size_t>(mid_it - rows.begin());

        tree.nodes[node_id].feature = best.feature;
        tree.nodes[node_id].threshold = best.threshold;
        int left = build(lo, mid, depth + 1);
        int right = build(mid, hi, depth + 1);
        tree.nodes[node_id].left = left;
        tree.nodes[node_id].right = right;
        return node_id;
    }

    BestSplit best_split_exact(std::size_t lo, std::size_t hi, double g_total, double h_total) {
        BestSplit best;
        double parent = split_score(g_total, h_total, params.reg_lambda);
        auto count = hi - lo;
        std::vector<std::pair<double, std::size_t>> sorted(count);
        for (int f = 0; f < static_cast<int>(x.cols()); ++f) {
            for (std::size_t k = 0; k < count; ++k) {
                auto r = rows[lo + k];
                sorted[k] = {x.at(r, f), r};
            }
            std::sort(sorted.begin(), sorted.end());
            double gl = 0.0, hl = 0.0;
            for (std::size_t k = 0; k + 1 < count; ++k) {
                gl += grad[sorted[k].second];
                hl += hess[sorted[k].second];
                if (sorted[k].first == sorted[k + 1].first) continue;
                auto n_left = k + 1;
                auto n_right = count - n_left;
                if (n_left < static_cast<std::size_t>(params.min_child_samples) ||
                    n_right < static_cast<std::size_t>(params.min_child_samples))
                    continue;
                double gain = 0.5 * (split_score(gl, hl, params.reg_lambda) +
                                     split_score(g_total - gl, h_total - hl, params.reg_lambda) - parent);
                if (gain <= params.min_split_gain) continue;
                // strict > keeps the lowest feature index and lowest threshold on ties
                if (!best.found || gain > best.gain) {
                    best.found = true;
                    best.feature = f;
                    best.gain = gain;
                    double t = (sorted[k].first + sorted[k + 1].first) / 2.0;
                    if (t >= sorted[k + 1].first) t = sorted[k].first;
                    best.threshold = t;
                }
            }
        }
        return best;
    }

    BestSplit best_split_hist(std::size_t lo, std::size_t hi, double g_total, double h_total) {
        BestSplit best;
        double parent = split_score(g_total, h_total, params.reg_lambda);
        auto d = x.cols();
        std::size_t bins = static_cast<std::size_t>(params.max_bins);
        std::vector<double> hg(d * bins, 0.0), hh(d * bins, 0.0);
        std::vector<std::uint32_t> hc(d * bins, 0);
        for (std::size_t k = lo; k < hi; ++k) {
            auto r = rows[k];
            const std::uint8_t* rc = codes->data() + r * d;
            double g = grad[r], h = hess[r];
            for (std::size_t f = 0; f < d; ++f) {
                auto slot = f * bins + rc[f];
                hg[slot] += g;
                hh[slot] += h;
                hc[slot] += 1;
            }
        }
        auto count = hi - lo;
        for (std::size_t f = 0; f < d; ++f) {
            const auto& feature_edges = (*edges)[f];
            if (feature_edges.empty()) continue;
            double gl = 0.0, hl = 0.0;
            std::size_t cl = 0;
            for (std::size_t b = 0; b < feature_edges.size(); ++b) {
                auto slot = f * bins + b;
                gl += hg[slot];
                hl += hh[slot];
                cl += hc[slot];
                if (cl == 0 || cl == count) continue;
                if (cl < static_cast<std::size_t>(params.min_child_samples) ||
                    count - cl < static_cast<std::size_t>(params.min_child_samples))
                    continue;
                double gain = 0.5 * (split_score(gl, hl, params.reg_lambda) +
                                     split_score(g_total - gl, h_total - hl, params.reg_lambda) - parent);
                if (gain <= params.min_split_gain) continue;
                if (!best.found || gain > best.gain) {
                    best.found = true;
                    best.feature = static_cast<int>(f);
                    best.gain = gain;
                    best.threshold = feature_edges[b];
                    best.bin = static_cast<int>(b);
                }
            }
        }
        return best;
    }
};

double logit_logloss(const std::vector<double>& f, const std::vector<int>& y) {
    double loss = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double margin = y[i] == 1 ? f[i] : -f[i];
        loss += margin >= 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
    }
    return loss / static_cast<double>(f.size());
}

} // namespace

double Tree::predict(std::span<const double> row) const {
    int node = 0;
    while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
        const auto& n = nodes[static_cast<std::size_t>(node)];
        node = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(node)].value;
}

void GradientBoostedTrees::fit(const Matrix& x, const std::vector<int>& y) {
    check_training_inputs(x, y);
    if (params_.n_estimators < 1) throw training_error("gbt: n_estimators must be >= 1");
    if (params_.max_depth < 1 || params_.max_depth > 16)
        throw training_error("gbt: max_depth must be in [1, 16]");
    if (params_.max_bins < 0 || params_.max_bins > 256 || params_.max_bins == 1)
        throw training_error("gbt: max_bins must be 0 (exact) or in [2, 256]");
    if (!(params_.learning_rate > 0.0)) throw training_error("gbt: learning_rate must be positive");
    if (params_.reg_lambda < 0.0) throw training_error("gbt: reg_lambda must be >= 0");

    std::size_t n = x.rows();
    std::size_t d = x.cols();
    trees_.clear();
    train_losses_.clear();

    double pos_rate = 0.0;
    for (int v : y) pos_rate += v;
    pos_rate /= static_cast<double>(n);
    base_score_ = std::log(pos_rate / (1.0 - pos_rate));

    // Histogram preparation: per-feature quantile edges and row-major codes.
    std::vector<std::vector<double>> edges;
    std::vector<std::uint8_t> codes;
    bool hist = params_.max_bins > 0;
    if (hist) {
        auto bins = static_cast<std::size_t>(params_.max_bins);
        edges.resize(d);
        std::vector<double> column(n);
        for (std::size_t f = 0; f < d; ++f) {
            for (std::size_t i = 0; i < n; ++i) column[i] = x.at(i, f);
            std::sort(column.begin(), column.end());
            auto& e = edges[f];
            for (std::size_t b = 1; b < bins; ++b) {
                double q = column[(b * n) / bins];
                if (e.empty() || q > e.back()) e.push_back(q);
            }
            // the last candidate edge may swallow the whole range; drop it so
            // the top bin is never empty by construction
            if (!e.empty() && e.back() >= column[n - 1]) e.pop_back();
        }
        codes.assign(n * d, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t f = 0; f < d; ++f) {
                const auto& e = edges[f];
                auto it = std::lower_bound(e.begin(), e.end(), x.at(i, f));
                codes[i * d + f] = static_cast<std::uint8_t>(it - e.begin());
            }
        }
    }

    std::vector<double> f_scores(n, base_score_), grad(n), hess(n), updates(n);
    for (int round = 0; round < params_.n_estimators; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(f_scores[i]);
            grad[i] = p - static_cast<double>(y[i]);
            hess[i] = p * (1.0 - p);
        }
        TreeBuilder builder{x, grad, hess, params_};
        if (hist) {
            builder.edges = &edges;
            builder.codes = &codes;
        }
        builder.rows.resize(n);
        for (std::size_t i = 0; i < n; ++i) builder.rows[i] = i;
        std::fill(updates.begin(), updates.end(), 0.0);
        builder.out_updates = &updates;
        builder.build(0, n, 0);
        trees_.push_back(std::move(builder.tree));
        for (std::size_t i = 0; i < n; ++i) f_scores[i] += updates[i];
        train_losses_.push_back(logit_logloss(f_scores, y));
    }
}

std::vector<double> GradientBoostedTrees::predict_proba(const Matrix& x) const {
    if (trees_.empty()) throw training_error("gbt: predict before fit");
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double f = base_score_;
        auto row = x.row(i);
        for (const auto& tree : trees_) f += tree.predict(row);
        out[i] = sigmoid(f);
    }
    return out;
}

nlohmann::json GradientBoostedTrees::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : trees_) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& n : tree.nodes)
            nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
        trees.push_back(std::move(nodes));
    }
    return nlohmann::json{
        {"family", "gbt"},
        {"params",
         {{"n_estimators", params_.n_estimators},
          {"max_depth", params_.max_depth},
          {"learning_rate", params_.learning_rate},
          {"reg_lambda", params_.reg_lambda},
          {"min_split_gain", params_.min_split_gain},
          {"min_child_samples", params_.min_child_samples},
          {"max_bins", params_.max_bins}}},
        {"base_score", base_score_},
        {"trees", trees},
    };
}

std::unique_ptr<GradientBoostedTrees> GradientBoostedTrees::from_json(const nlohmann::json& j) {
    GbtParams p;
    const auto& jp = j.at("params");
    p.n_estimators = jp.at("n_estimators").get<int>();
    p.max_depth = jp.at("max_depth").get<int>();
    p.learning_rate = jp.at("learning_rate").get<double>();
    p.reg_lambda = jp.at("reg_lambda").get<double>();
    p.min_split_gain = jp.at("min_split_gain").get<double>();
    p.min_child_samples = jp.at("min_child_samples").get<int>();
    p.max_bins = jp.at("max_bins").get<int>();
    auto model = std::make_unique<GradientBoostedTrees>(p);
    model->base_score_ = j.at("base_score").get<double>();
    for (const auto& jt : j.at("trees")) {
        Tree tree;
        for (const auto& jn : jt) {
            TreeNode n;
            n.feature = jn.at(0).get<int>();
            n.threshold = jn.at(1).get<double>();
            n.left = jn.at(2).get<int>();
            n.right = jn.at(3).get<int>();
            n.value = jn.at(4).get<double>();
            tree.nodes.push_back(n);
        }
        model->trees_.push_back(std::move(tree));
    }
    return model;
}

std::unique_ptr<GradientBoostedTrees> fit_gbt(const Matrix& x, const std::vector<int>& y,
                                              const GbtParams& params) {
    auto model = std::make_unique<GradientBoostedTrees>(params);
    model->fit(x, y);
    return model;
}

} // namespace bankbench::models
