#pragma once

#include <cstddef>
#include <vector>

#include "bankbench/labeling/distress.hpp"

namespace bankbench::labeling {

// Row of a horizon task, referencing the panel by indices so features can be
// computed lazily against the same record objects.
struct HorizonRow {
    std::size_t company_index = 0;
    std::size_t record_index = 0;
    int label = 0;
};

struct HorizonDataset {
    int horizon = 0;
    DistressRule rule;
    std::vector<HorizonRow> rows; // panel order: by company, then year

    std::size_t positives() const {
        std::size_t k = 0;
        for (const auto& r : rows) k += r.label;
        return k;
    }
    std::size_t negatives() const { return rows.size() - positives(); }
};

// Builds the h-year-ahead task. For every distressed company the final h
// years are removed and the latest surviving record is the positive example
// (the company vanishes entirely when nothing survives); all remaining rows,
// including every record of non-distressed companies, are negatives.
HorizonDataset build_horizon_dataset(const data::Panel& panel, int horizon, const DistressRule& rule);

struct HorizonCounts {
    std::size_t total = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
};

HorizonCounts summarize_counts(const HorizonDataset& ds);

} // namespace bankbench::labeling
