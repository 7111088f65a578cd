#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bankbench/core/matrix.hpp"

#include "json.hpp"

namespace bankbench::models {

// Uniform train/score surface. fit must reject single-class labels with
// training_error; predict_proba returns P(y=1) per row.
class ModelAdapter {
public:
    virtual ~ModelAdapter() = default;
    virtual void fit(const Matrix& x, const std::vector<int>& y) = 0;
    virtual std::vector<double> predict_proba(const Matrix& x) const = 0;
    virtual std::string name() const = 0;
    virtual nlohmann::json to_json() const = 0;
};

// Shared fit() precondition checks.
void check_training_inputs(const Matrix& x, const std::vector<int>& y);

double sigmoid(double z);

} // namespace bankbench::models
