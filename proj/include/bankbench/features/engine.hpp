#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "bankbench/features/catalog.hpp"
#include "bankbench/labeling/horizon.hpp"

namespace bankbench::features {

// String interning for categorical metadata features. Ids are assigned in
// first-seen order during featurization, so with a fixed panel iteration
// order the mapping is deterministic.
class CategoryVocab {
public:
    int intern(const std::string& feature_id, const std::string& value);
    // -1 when unknown
    int find(const std::string& feature_id, const std::string& value) const;
    const std::vector<std::string>& values(const std::string& feature_id) const;

private:
    std::map<std::string, std::unordered_map<std::string, int>> by_feature_;
    std::map<std::string, std::vector<std::string>> ordered_;
};

// (sector, year, feature id) -> mean of the base ratio over companies with a
// computable value, plus the contributing count.
class SectorYearStats {
public:
    struct Cell {
        double mean = 0.0;
        std::size_t count = 0;
    };

    void add(const std::string& sector, int year, const std::string& id, double value);
    void finalize();
    const Cell* lookup(const std::string& sector, int year, const std::string& id) const;
    std::size_t cell_count() const { return cells_.size(); }

private:
    std::map<std::tuple<std::string, int, std::string>, Cell> cells_;
    bool finalized_ = false;
};

SectorYearStats compute_sector_year_stats(const data::Panel& panel, const Catalog& catalog);

// values[i] is meaningful only where present[i] != 0.
struct FeatureVector {
    std::vector<double> values;
    std::vector<std::uint8_t> present;
};

// prev must be the prior consecutive reporting year (or null); growth
// features are missing across gaps.
FeatureVector compute_features(const data::CompanyYearRecord& rec,
                               const data::CompanyYearRecord* prev,
                               const data::MacroTable& macro,
                               const SectorYearStats& stats,
                               const Catalog& catalog,
                               CategoryVocab& vocab);

struct FeatureTable {
    std::vector<std::string> feature_ids;
    std::vector<FeatureVector> rows;
    std::vector<int> labels;
    std::vector<std::string> company_ids;
    std::vector<int> years;
};

FeatureTable featurize(const data::Panel& panel, const labeling::HorizonDataset& ds,
                       const Catalog& catalog, const SectorYearStats& stats, CategoryVocab& vocab);

} // namespace bankbench::features
