#include "bankbench/models/adapter.hpp"

#include <cmath>

#include "bankbench/core/error.hpp"

namespace bankbench::models {

void check_training_inputs(const Matrix& x, const std::vector<int>& y) {
    if (x.rows() == 0 || x.cols() == 0) throw training_error("fit: empty feature matrix");
    if (x.rows() != y.size()) throw training_error("fit: row/label count mismatch");
    bool pos = false, neg = false;
    for (int v : y) {
        if (v != 0 && v != 1) throw training_error("fit: labels must be 0/1");
        (v == 1 ? pos : neg) = true;
    }
    if (!pos || !neg) throw training_error("fit: training labels are single-class");
    for (double v : x.data()) {
        if (std::isnan(v)) throw training_error("fit: NaN in feature matrix");
    }
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

} // namespace bankbench::models
