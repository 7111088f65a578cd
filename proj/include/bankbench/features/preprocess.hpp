#pragma once

#include <map>

#include "json.hpp"

#include "bankbench/core/matrix.hpp"
#include "bankbench/features/engine.hpp"

namespace bankbench::features {

enum class ApplyMode {
    standardized, // impute, encode categoricals, then (x - mean) / std
    raw_imputed,  // impute only; everything non-missing passes through bit-identical
};

// Train-derived preprocessing state. Medians/means/stds are computed on the
// fit rows only; categorical codes are assigned in train-first-seen order and
// unseen values at apply time map to the reserved code (= number seen).
struct PreprocessStats {
    std::vector<std::string> feature_ids;
    std::vector<std::uint8_t> categorical;
    std::vector<std::uint8_t> all_missing; // degenerate numeric columns
    std::vector<double> median;
    std::vector<double> mean;
    std::vector<double> stddev; // divisor: constant columns store 1
    std::vector<std::map<int, int>> encoding; // vocab id -> dense code (categorical only)
    std::vector<int> reserved_code;
};

PreprocessStats fit_preprocessor(const Catalog& catalog, const std::vector<FeatureVector>& train);

Matrix apply_preprocessor(const PreprocessStats& stats, const std::vector<FeatureVector>& rows,
                          ApplyMode mode);

nlohmann::json preprocess_to_json(const PreprocessStats& stats);
PreprocessStats preprocess_from_json(const nlohmann::json& j);

} // namespace bankbench::features
