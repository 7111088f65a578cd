#pragma once

#include <cstdint>

#include "bankbench/models/adapter.hpp"

namespace bankbench::models {

// Fully-connected ReLU network with a single logit output, trained with Adam
// on the mean binary cross-entropy plus an L2 weight penalty (biases
// unpenalized, penalty scaled by 1/n like the usual sklearn convention).
struct MlpParams {
    std::vector<int> hidden{32, 32};
    double alpha = 1e-4;
    double learning_rate_init = 1e-3;
    int epochs = 200;
    int batch_size = 256;
    std::uint64_t seed = 42;
};

class MlpClassifier : public ModelAdapter {
public:
    explicit MlpClassifier(MlpParams params = {}) : params_(params) {}

    void fit(const Matrix& x, const std::vector<int>& y) override;
    std::vector<double> predict_proba(const Matrix& x) const override;
    std::string name() const override { return "mlp"; }
    nlohmann::json to_json() const override;
    static std::unique_ptr<MlpClassifier> from_json(const nlohmann::json& j);

    // Gradient-check surface: operates on an explicit flattened parameter
    // vector ordered [W1, b1, W2, b2, ..., Wout, bout], W row-major
    // (out x in). Returns the regularized mean loss over the given rows and
    // writes d(loss)/d(theta).
    void configure(std::size_t input_dim); // sets layer shapes, no init
    std::size_t param_count() const;
    std::vector<double> init_params(std::uint64_t seed) const; // Glorot uniform
    double loss_and_grad(const Matrix& x, const std::vector<int>& y,
                         const std::vector<std::size_t>& rows, const std::vector<double>& theta,
                         std::vector<double>& grad) const;

    const MlpParams& params() const { return params_; }
    const std::vector<double>& theta() const { return theta_; }

private:
    std::vector<double> forward_logits(const Matrix& x, const std::vector<double>& theta) const;

    MlpParams params_;
    std::vector<std::size_t> shape_; // [input, hidden..., 1]
    std::vector<double> theta_;
};

std::unique_ptr<MlpClassifier> fit_mlp(const Matrix& x, const std::vector<int>& y,
                                       const MlpParams& params = {});

} // namespace bankbench::models
