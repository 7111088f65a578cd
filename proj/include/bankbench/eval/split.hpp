#pragma once

#include <cstdint>
#include <vector>

namespace bankbench::eval {

struct SplitPlan {
    std::size_t test_size = 20000;      // absolute row count
    double validation_fraction = 0.2;   // share of what remains after the test cut
    std::uint64_t seed = 42;
};

struct SplitResult {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
    std::vector<std::size_t> test;
};

// Stratified three-way split. Per-class test/validation counts follow
// largest-remainder apportionment so realized class rates track the pool rate
// to within one row; rows are shuffled within class by the seeded generator.
// Throws split_error when a part would lose a class entirely.
SplitResult stratified_split(const std::vector<int>& labels, const SplitPlan& plan);

// Stratified subsample of the given pool indices (used for threshold
// calibration on a budget). Returns sorted indices.
std::vector<std::size_t> stratified_subsample(const std::vector<int>& labels,
                                              const std::vector<std::size_t>& pool,
                                              std::size_t size, std::uint64_t seed);

} // namespace bankbench::eval
