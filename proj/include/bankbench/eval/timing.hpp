#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bankbench/core/matrix.hpp"

namespace bankbench::eval {

struct TimingReport {
    std::size_t batch_size = 0;
    int runs = 0;
    int warmup = 0;
    std::vector<double> run_seconds;
    double mean_seconds = 0.0;
    double std_seconds = 0.0; // sample std over runs
    double rows_per_second = 0.0;
    std::string hardware_note;
};

// Repeated-scoring harness: warmup runs are discarded, timed runs use a
// monotonic clock. The scorer result is consumed so the call cannot be
// optimized away.
TimingReport time_inference(const std::function<std::vector<double>(const Matrix&)>& scorer,
                            const Matrix& batch, int runs = 5, int warmup = 1);

std::string hardware_note();

} // namespace bankbench::eval
