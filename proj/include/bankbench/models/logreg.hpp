#pragma once

#include "bankbench/models/adapter.hpp"

namespace bankbench::models {

// L2-regularized logistic regression trained by Newton iterations on the
// mean log-loss; the penalty strength is 1 / (c * n) so c behaves like the
// usual inverse regularization knob. The intercept is unpenalized.
struct LogregParams {
    double c = 1.0;
    int max_iter = 100;
    double tol = 1e-8; // on the gradient infinity norm
};

class LogisticRegression : public ModelAdapter {
public:
    explicit LogisticRegression(LogregParams params = {}) : params_(params) {}

    void fit(const Matrix& x, const std::vector<int>& y) override;
    std::vector<double> predict_proba(const Matrix& x) const override;
    std::string name() const override { return "logreg"; }
    nlohmann::json to_json() const override;
    static std::unique_ptr<LogisticRegression> from_json(const nlohmann::json& j);

    const std::vector<double>& coef() const { return coef_; }
    double intercept() const { return intercept_; }
    const LogregParams& params() const { return params_; }

private:
    LogregParams params_;
    std::vector<double> coef_;
    double intercept_ = 0.0;
};

std::unique_ptr<LogisticRegression> fit_logreg(const Matrix& x, const std::vector<int>& y,
                                               const LogregParams& params = {});

} // namespace bankbench::models
