#include "bankbench/eval/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bankbench/core/error.hpp"

namespace bankbench::eval {

namespace {

// Largest-remainder apportionment of `target` across classes proportionally
// to class sizes, capped by availability.
std::vector<std::size_t> apportion(const std::vector<std::size_t>& class_sizes, std::size_t target) {
    std::size_t total = 0;
    for (auto c : class_sizes) total += c;
    if (target > total) throw split_error("split: requested more rows than available");

    std::vector<std::size_t> out(class_sizes.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < class_sizes.size(); ++c) {
        double quota = static_cast<double>(target) * static_cast<double>(class_sizes[c]) /
                       static_cast<double>(total);
        out[c] = std::min(static_cast<std::size_t>(std::floor(quota)), class_sizes[c]);
        assigned += out[c];
        remainders.push_back({quota - std::floor(quota), c});
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::size_t cursor = 0;
    while (assigned < target) {
        auto c = remainders[cursor % remainders.size()].second;
        ++cursor;
        if (out[c] < class_sizes[c]) {
            ++out[c];
            ++assigned;
        }
        if (cursor > 4 * remainders.size() && assigned < target)
            throw split_error("split: apportionment failed to converge");
    }
    return out;
}

} // namespace

SplitResult stratified_split(const std::vector<int>& labels, const SplitPlan& plan) {
    if (labels.empty()) throw split_error("split: empty labels");
    if (plan.validation_fraction < 0.0 || plan.validation_fraction >= 1.0)
        throw split_error("split: validation_fraction must be in [0, 1)");
    std::vector<std::vector<std::size_t>> by_class(2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw split_error("split: labels must be 0/1");
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    if (by_class[0].empty() || by_class[1].empty())
        throw split_error("split: need both classes present");
    if (plan.test_size == 0 || plan.test_size >= labels.size())
        throw split_error("split: test_size must be in (0, n)");

    std::mt19937_64 rng(plan.seed);
    for (auto& cls : by_class) std::shuffle(cls.begin(), cls.end(), rng);

    std::vector<std::size_t> sizes{by_class[0].size(), by_class[1].size()};
    auto test_counts = apportion(sizes, plan.test_size);

    std::vector<std::size_t> remaining{sizes[0] - test_counts[0], sizes[1] - test_counts[1]};
    auto val_target = static_cast<std::size_t>(
        std::llround(plan.validation_fraction * static_cast<double>(remaining[0] + remaining[1])));
    auto val_counts = apportion(remaining, val_target);

    SplitResult out;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& cls = by_class[c];
        std::size_t t = test_counts[c];
        std::size_t v = val_counts[c];
        out.test.insert(out.test.end(), cls.begin(), cls.begin() + t);
        out.validation.insert(out.validation.end(), cls.begin() + t, cls.begin() + t + v);
        out.train.insert(out.train.end(), cls.begin() + t + v, cls.end());
    }
    std::sort(out.test.begin(), out.test.end());
    std::sort(out.validation.begin(), out.validation.end());
    std::sort(out.train.begin(), out.train.end());

    auto has_both = [&](const std::vector<std::size_t>& part) {
        bool pos = false, neg = false;
        for (auto i : part) (labels[i] == 1 ? pos : neg) = true;
        return pos && neg;
    };
    if (!has_both(out.train) || !has_both(out.validation) || !has_both(out.test))
        throw split_error("split: a part lost an entire class; adjust sizes");
    return out;
}

std::vector<std::size_t> stratified_subsample(const std::vector<int>& labels,
                                              const std::vector<std::size_t>& pool,
                                              std::size_t size, std::uint64_t seed) {
    if (pool.empty()) throw split_error("subsample: empty pool");
    if (size >= pool.size()) return pool;

    std::vector<std::vector<std::size_t>> by_class(2);
    for (auto i : pool) by_class[static_cast<std::size_t>(labels.at(i) == 1)].push_back(i);
    std::mt19937_64 rng(seed);
    for (auto& cls : by_class) std::shuffle(cls.begin(), cls.end(), rng);

    std::vector<std::size_t> sizes{by_class[0].size(), by_class[1].size()};
    auto counts = apportion(sizes, size);
    // keep at least one positive when any exist in the pool
    if (counts[1] == 0 && !by_class[1].empty() && counts[0] > 0) {
        --counts[0];
        ++counts[1];
    }
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < 2; ++c)
        out.insert(out.end(), by_class[c].begin(), by_class[c].begin() + counts[c]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace bankbench::eval
