#include "bankbench/models/mlp.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "bankbench/core/error.hpp"

namespace bankbench::models {

namespace {

struct LayerView {
    std::size_t w_off, b_off, in, out;
};

std::vector<LayerView> layer_views(const std::vector<std::size_t>& shape) {
    std::vector<LayerView> views;
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < shape.size(); ++l) {
        LayerView v{off, off + shape[l] * shape[l + 1], shape[l], shape[l + 1]};
        views.push_back(v);
        off = v.b_off + v.out;
    }
    return views;
}

} // namespace

void MlpClassifier::configure(std::size_t input_dim) {
    if (input_dim == 0) throw training_error("mlp: zero input width");
    shape_.clear();
    shape_.push_back(input_dim);
    for (int h : params_.hidden) {
        if (h < 1) throw training_error("mlp: hidden sizes must be positive");
        shape_.push_back(static_cast<std::size_t>(h));
    }
    shape_.push_back(1);
}

std::size_t MlpClassifier::param_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < shape_.size(); ++l) n += shape_[l] * shape_[l + 1] + shape_[l + 1];
    return n;
}

std::vector<double> MlpClassifier::init_params(std::uint64_t seed) const {
    if (shape_.empty()) throw training_error("mlp: configure before init");
    std::vector<double> theta(param_count(), 0.0);
    std::mt19937_64 rng(seed);
    for (const auto& v : layer_views(shape_)) {
        double limit = std::sqrt(6.0 / static_cast<double>(v.in + v.out));
        std::uniform_real_distribution<double> dist(-limit, limit);
        for (std::size_t i = 0; i < v.in * v.out; ++i) theta[v.w_off + i] = dist(rng);
    }
    return theta;
}

double MlpClassifier::loss_and_grad(const Matrix& x, const std::vector<int>& y,
                                    const std::vector<std::size_t>& rows,
                                    const std::vector<double>& theta,
                                    std::vector<double>& grad) const {
    if (shape_.empty()) throw training_error("mlp: configure before use");
    if (theta.size() != param_count()) throw training_error("mlp: theta size mismatch");
    auto views = layer_views(shape_);
    std::size_t batch = rows.size();
    if (batch == 0) throw training_error("mlp: empty batch");

    grad.assign(theta.size(), 0.0);

    // activations per layer for the whole batch
    std::vector<std::vector<double>> acts(views.size() + 1);
    acts[0].resize(batch * shape_[0]);
    for (std::size_t i = 0; i < batch; ++i) {
        auto row = x.row(rows[i]);
        std::copy(row.begin(), row.end(), acts[0].begin() + static_cast<std::ptrdiff_t>(i * shape_[0]));
    }
    for (std::size_t l = 0; l < views.size(); ++l) {
        const auto& v = views[l];
        acts[l + 1].assign(batch * v.out, 0.0);
        for (std::size_t i = 0; i < batch; ++i) {
            const double* in = acts[l].data() + i * v.in;
            double* out = acts[l + 1].data() + i * v.out;
            for (std::size_t o = 0; o < v.out; ++o) {
                const double* w = theta.data() + v.w_off + o * v.in;
                double z = theta[v.b_off + o];
                for (std::size_t k = 0; k < v.in; ++k) z += w[k] * in[k];
                bool last = l + 1 == views.size();
                out[o] = last ? z : std::max(z, 0.0);
            }
        }
    }

    double loss = 0.0;
    std::vector<double> delta(batch); // dLoss/dlogit, mean-scaled
    const auto& logits = acts.back();
    for (std::size_t i = 0; i < batch; ++i) {
        double z = logits[i];
        double margin = y[rows[i]] == 1 ? z : -z;
        loss += margin >= 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
        delta[i] = (sigmoid(z) - static_cast<double>(y[rows[i]])) / static_cast<double>(batch);
    }
    loss /= static_cast<double>(batch);

    // backward pass
    std::vector<double> cur = delta; // gradient wrt current layer pre-activations, per row
    for (std::size_t lp = views.size(); lp-- > 0;) {
        const auto& v = views[lp];
        std::vector<double> prev_grad(batch * v.in, 0.0);
        for (std::size_t i = 0; i < batch; ++i) {
            const double* in = acts[lp].data() + i * v.in;
            const double* d = cur.data() + i * v.out;
            for (std::size_t o = 0; o < v.out; ++o) {
                double dz = d[o];
                if (dz == 0.0) continue;
                double* gw = grad.data() + v.w_off + o * v.in;
                const double* w = theta.data() + v.w_off + o * v.in;
                double* pg = prev_grad.data() + i * v.in;
                for (std::size_t k = 0; k < v.in; ++k) {
                    gw[k] += dz * in[k];
                    pg[k] += dz * w[k];
                }
                grad[v.b_off + o] += dz;
            }
        }
        if (lp > 0) {
            // ReLU mask of the previous layer's outputs
            const auto& a = acts[lp];
            cur.resize(prev_grad.size());
            for (std::size_t i = 0; i < prev_grad.size(); ++i)
                cur[i] = a[i] > 0.0 ? prev_grad[i] : 0.0;
        }
    }

    // L2 on weights only, averaged over the batch
    double reg = 0.0;
    double scale = params_.alpha / static_cast<double>(batch);
    for (const auto& v : views) {
        for (std::size_t i = 0; i < v.in * v.out; ++i) {
            double w = theta[v.w_off + i];
            reg += w * w;
            grad[v.w_off + i] += scale * w;
        }
    }
    loss += 0.5 * scale * reg;
    return loss;
}

void MlpClassifier::fit(const Matrix& x, const std::vector<int>& y) {
    check_training_inputs(x, y);
    if (params_.epochs < 1) throw training_error("mlp: epochs must be >= 1");
    if (params_.batch_size < 1) throw training_error("mlp: batch_size must be >= 1");
    configure(x.cols());
    theta_ = init_params(params_.seed);

    std::vector<double> m(theta_.size(), 0.0), v(theta_.size(), 0.0), grad;
    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    long long step = 0;

    std::vector<std::size_t> order(x.rows());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 shuffler(params_.seed ^ 0x9e3779b97f4a7c15ull);

    auto batch_count = (order.size() + params_.batch_size - 1) / params_.batch_size;
    std::vector<std::size_t> batch;
    for (int epoch = 0; epoch < params_.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffler);
        for (std::size_t b = 0; b < batch_count; ++b) {
            auto lo = b * static_cast<std::size_t>(params_.batch_size);
            auto hi = std::min(lo + static_cast<std::size_t>(params_.batch_size), order.size());
            batch.assign(order.begin() + static_cast<std::ptrdiff_t>(lo),
                         order.begin() + static_cast<std::ptrdiff_t>(hi));
            loss_and_grad(x, y, batch, theta_, grad);
            ++step;
            double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
            double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
            for (std::size_t j = 0; j < theta_.size(); ++j) {
                m[j] = beta1 * m[j] + (1.0 - beta1) * grad[j];
                v[j] = beta2 * v[j] + (1.0 - beta2) * grad[j] * grad[j];
                theta_[j] -= params_.learning_rate_init * (m[j] / bc1) / (std::sqrt(v[j] / bc2) + eps);
            }
        }
    }
}

std::vector<double> MlpClassifier::forward_logits(const Matrix& x, const std::vector<double>& theta) const {
    auto views = layer_views(shape_);
    std::vector<double> out(x.rows());
    std::vector<double> a, next;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto row = x.row(i);
        a.assign(row.begin(), row.end());
        for (std::size_t l = 0; l < views.size(); ++l) {
            const auto& v = views[l];
            next.assign(v.out, 0.0);
            for (std::size_t o = 0; o < v.out; ++o) {
                const double* w = theta.data() + v.w_off + o * v.in;
                double z = theta[v.b_off + o];
                for (std::size_t k = 0; k < v.in; ++k) z += w[k] * a[k];
                next[o] = l + 1 == views.size() ? z : std::max(z, 0.0);
            }
            a.swap(next);
        }
        out[i] = a[0];
    }
    return out;
}

std::vector<double> MlpClassifier::predict_proba(const Matrix& x) const {
    if (theta_.empty()) throw training_error("mlp: predict before fit");
    if (x.cols() != shape_.front()) throw training_error("mlp: feature width mismatch");
    auto logits = forward_logits(x, theta_);
    std::vector<double> out(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = sigmoid(logits[i]);
    return out;
}

nlohmann::json MlpClassifier::to_json() const {
    return nlohmann::json{
        {"family", "mlp"},
        {"params",
         {{"hidden", params_.hidden},
          {"alpha", params_.alpha},
          {"learning_rate_init", params_.learning_rate_init},
          {"epochs", params_.epochs},
          {"batch_size", params_.batch_size},
          {"seed", params_.seed}}},
        {"shape", shape_},
        {"theta", theta_},
    };
}

std::unique_ptr<MlpClassifier> MlpClassifier::from_json(const nlohmann::json& j) {
    MlpParams p;
    const auto& jp = j.at("params");
    p.hidden = jp.at("hidden").get<std::vector<int>>();
    p.alpha = jp.at("alpha").get<double>();
    p.learning_rate_init = jp.at("learning_rate_init").get<double>();
    p.epochs = jp.at("epochs").get<int>();
    p.batch_size = jp.at("batch_size").get<int>();
    p.seed = jp.at("seed").get<std::uint64_t>();
    auto model = std::make_unique<MlpClassifier>(p);
    model->shape_ = j.at("shape").get<std::vector<std::size_t>>();
    model->theta_ = j.at("theta").get<std::vector<double>>();
    return model;
}

std::unique_ptr<MlpClassifier> fit_mlp(const Matrix& x, const std::vector<int>& y,
                                       const MlpParams& params) {
    auto model = std::make_unique<MlpClassifier>(params);
    model->fit(x, y);
    return model;
}

} // namespace bankbench::models
