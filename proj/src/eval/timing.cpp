#include "bankbench/eval/timing.hpp"

#include <chrono>
#include <thread>

#include "bankbench/core/error.hpp"
#include "bankbench/core/numeric.hpp"

#if defined(__linux__)
#include <sys/utsname.h>
#endif

namespace bankbench::eval {

TimingReport time_inference(const std::function<std::vector<double>(const Matrix&)>& scorer,
                            const Matrix& batch, int runs, int warmup) {
    if (!scorer) throw config_error("time_inference: null scorer");
    if (runs < 1) throw config_error("time_inference: runs must be >= 1");
    if (warmup < 0) throw config_error("time_inference: warmup must be >= 0");
    if (batch.rows() == 0) throw config_error("time_inference: empty batch");

    volatile double sink = 0.0;
    for (int i = 0; i < warmup; ++i) {
        auto scores = scorer(batch);
        if (!scores.empty()) sink = sink + scores.back();
    }

    TimingReport rep;
    rep.batch_size = batch.rows();
    rep.runs = runs;
    rep.warmup = warmup;
    rep.run_seconds.reserve(runs);
    for (int i = 0; i < runs; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        auto scores = scorer(batch);
        auto t1 = std::chrono::steady_clock::now();
        if (scores.size() != batch.rows())
            throw metric_error("time_inference: scorer returned wrong length");
        sink = sink + scores.back();
        rep.run_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    (void)sink;
    rep.mean_seconds = mean_of(rep.run_seconds);
    rep.std_seconds = sample_stddev(rep.run_seconds);
    rep.rows_per_second = rep.mean_seconds > 0.0
                              ? static_cast<double>(batch.rows()) / rep.mean_seconds
                              : 0.0;
    rep.hardware_note = hardware_note();
    return rep;
}

std::string hardware_note() {
    std::string note;
#if defined(__linux__)
    utsname u{};
    if (uname(&u) == 0) {
        note = std::string(u.sysname) + " " + u.machine;
    }
#endif
    if (note.empty()) note = "unknown";
    note += ", " + std::to_string(std::thread::hardware_concurrency()) + " hw threads";
    return note;
}

} // namespace bankbench::eval
