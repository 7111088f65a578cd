#include "bankbench/models/logreg.hpp"

#include <cmath>

#include "bankbench/core/error.hpp"

namespace bankbench::models {

namespace {

// Cholesky solve of (symmetric positive definite) A x = b, A given row-major.
// Returns false when the factorization breaks down.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t d) {
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * d + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * d + k] * a[j * d + k];
            if (i == j) {
                if (s <= 0.0) return false;
                a[i * d + i] = std::sqrt(s);
            } else {
                a[i * d + j] = s / a[j * d + j];
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i * d + k] * b[k];
        b[i] = s / a[i * d + i];
    }
    for (std::size_t ii = d; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < d; ++k) s -= a[k * d + ii] * b[k];
        b[ii] = s / a[ii * d + ii];
    }
    return true;
}

} // namespace

void LogisticRegression::fit(const Matrix& x, const std::vector<int>& y) {
    check_training_inputs(x, y);
    if (!(params_.c > 0.0)) throw training_error("logreg: c must be positive");

    std::size_t n = x.rows();
    std::size_t d = x.cols();
    std::size_t dim = d + 1; // trailing slot is the intercept
    double lambda = 1.0 / (params_.c * static_cast<double>(n));

    std::vector<double> w(dim, 0.0);
    double pos_rate = 0.0;
    for (int v : y) pos_rate += v;
    pos_rate /= static_cast<double>(n);
    w[d] = std::log(pos_rate / (1.0 - pos_rate));

    std::vector<double> p(n), grad(dim), hess(dim * dim), step(dim);

    auto mean_loss = [&](const std::vector<double>& wt) {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto row = x.row(i);
            double z = wt[d];
            for (std::size_t j = 0; j < d; ++j) z += wt[j] * row[j];
            // stable log(1 + exp(.)) around the label
            double margin = y[i] == 1 ? z : -z;
            loss += margin >= 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
        }
        loss /= static_cast<double>(n);
        double reg = 0.0;
        for (std::size_t j = 0; j < d; ++j) reg += wt[j] * wt[j];
        return loss + 0.5 * lambda * reg;
    };

    double current_loss = mean_loss(w);
    for (int iter = 0; iter < params_.max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            auto row = x.row(i);
            double z = w[d];
            for (std::size_t j = 0; j < d; ++j) z += w[j] * row[j];
            p[i] = sigmoid(z);
        }

        std::fill(grad.begin(), grad.end(), 0.0);
        std::fill(hess.begin(), hess.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = x.row(i);
            double r = p[i] - static_cast<double>(y[i]);
            double wgt = std::max(p[i] * (1.0 - p[i]), 1e-10);
            for (std::size_t j = 0; j < d; ++j) grad[j] += r * row[j];
            grad[d] += r;
            // lower triangle of X^T W X, intercept column included
            for (std::size_t j = 0; j < d; ++j) {
                double wj = wgt * row[j];
                double* hrow = hess.data() + j * dim;
                for (std::size_t k = 0; k <= j; ++k) hrow[k] += wj * row[k];
            }
            double* hlast = hess.data() + d * dim;
            for (std::size_t k = 0; k < d; ++k) hlast[k] += wgt * row[k];
            hlast[d] += wgt;
        }
        double inv_n = 1.0 / static_cast<double>(n);
        double gmax = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            grad[j] *= inv_n;
            if (j < d) grad[j] += lambda * w[j];
            gmax = std::max(gmax, std::fabs(grad[j]));
        }
        if (gmax < params_.tol) break;

        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t k = 0; k <= j; ++k) {
                double v = hess[j * dim + k] * inv_n;
                hess[j * dim + k] = v;
                hess[k * dim + j] = v;
            }
        }
        for (std::size_t j = 0; j < d; ++j) hess[j * dim + j] += lambda;

        step = grad;
        auto hcopy = hess;
        if (!cholesky_solve(hcopy, step, dim)) {
            for (std::size_t j = 0; j < dim; ++j) hess[j * dim + j] += 1e-8;
            step = grad;
            if (!cholesky_solve(hess, step, dim))
                throw training_error("logreg: Newton system not positive definite");
        }

        // halving line search keeps the Newton step monotone on bad rounds
        double scale = 1.0;
        std::vector<double> trial(dim);
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t j = 0; j < dim; ++j) trial[j] = w[j] - scale * step[j];
            double trial_loss = mean_loss(trial);
            if (trial_loss <= current_loss + 1e-15) {
                w = trial;
                current_loss = trial_loss;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) break;
    }

    coef_.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
    intercept_ = w[d];
}

std::vector<double> LogisticRegression::predict_proba(const Matrix& x) const {
    if (coef_.empty()) throw training_error("logreg: predict before fit");
    if (x.cols() != coef_.size()) throw training_error("logreg: feature width mismatch");
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto row = x.row(i);
        double z = intercept_;
        for (std::size_t j = 0; j < coef_.size(); ++j) z += coef_[j] * row[j];
        out[i] = sigmoid(z);
    }
    return out;
}

nlohmann::json LogisticRegression::to_json() const {
    return nlohmann::json{
        {"family", "logreg"},
        {"params", {{"c", params_.c}, {"max_iter", params_.max_iter}, {"tol", params_.tol}}},
        {"coef", coef_},
        {"intercept", intercept_},
    };
}

std::unique_ptr<LogisticRegression> LogisticRegression::from_json(const nlohmann::json& j) {
    LogregParams p;
    p.c = j.at("params").at("c").get<double>();
    p.max_iter = j.at("params").at("max_iter").get<int>();
    p.tol = j.at("params").at("tol").get<double>();
    auto model = std::make_unique<LogisticRegression>(p);
    model->coef_ = j.at("coef").get<std::vector<double>>();
    model->intercept_ = j.at("intercept").get<double>();
    return model;
}

std::unique_ptr<LogisticRegression> fit_logreg(const Matrix& x, const std::vector<int>& y,
                                               const LogregParams& params) {
    auto model = std::make_unique<LogisticRegression>(params);
    model->fit(x, y);
    return model;
}

} // namespace bankbench::models
