#pragma once

#include <string>
#include <vector>

#include "bankbench/features/expr.hpp"

namespace bankbench::features {

enum class FeatureKind {
    metadata,
    ratio,
    flag,
    growth,
    log_macro,       // log of a statement level scaled by GDP
    sector_relative, // base ratio minus its (sector, year) mean
    absolute,        // scale-variant levels and their logs
};

enum class MetaSource {
    none,
    country,
    multi_industry,
    incorporation_band_coarse, // 0-2 / 3-4 / 5-24 / >24 years
    incorporation_band_fine,   // 0-1 / 2 / 3-5 / 6-9 / 10-19 / >19 years
    legal_form,
    naics2,
    naics3,
    employees_band,
    operational_status,
    naics_primary,
    naics_secondary,
    sector,
    state_region,
    report_year,
};

struct FeatureDef {
    std::string id;
    std::string name;
    FeatureKind kind = FeatureKind::ratio;
    std::string formula; // expression text, or a record:<field> note for metadata
    MetaSource source = MetaSource::none;
    bool categorical = false;
    ExprPtr expr; // compiled formula for statement-derived kinds
};

const char* kind_name(FeatureKind kind);

class Catalog {
public:
    // The standard 131-feature dictionary. operational_status can act as a
    // leakage channel on some registries, so it can be excluded; X9 is then
    // absent and the catalog is 130 wide.
    static Catalog standard(bool include_operational_status = true);

    const std::vector<FeatureDef>& defs() const { return defs_; }
    std::size_t size() const { return defs_.size(); }
    int index_of(const std::string& id) const;

private:
    std::vector<FeatureDef> defs_;
};

} // namespace bankbench::features
