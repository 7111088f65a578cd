#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bankbench/core/error.hpp"

namespace bankbench {

// Dense row-major matrix of doubles. Feature matrices and model inputs all go
// through this; rows are contiguous so scoring loops stay cache friendly.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    Matrix gather_rows(std::span<const std::size_t> idx) const {
        Matrix out(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= rows_) throw data_error("gather_rows: row index out of range");
            auto src = row(idx[i]);
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace bankbench
