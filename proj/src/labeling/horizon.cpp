#include "bankbench/labeling/horizon.hpp"

#include "bankbench/core/error.hpp"

namespace bankbench::labeling {

HorizonDataset build_horizon_dataset(const data::Panel& panel, int horizon, const DistressRule& rule) {
    if (horizon < 0 || horizon > 4)
        throw config_error("horizon must be in [0, 4], got " + std::to_string(horizon));
    validate_rule(rule);

    HorizonDataset ds;
    ds.horizon = horizon;
    ds.rule = rule;

    for (std::size_t ci = 0; ci < panel.companies.size(); ++ci) {
        const auto& company = panel.companies[ci];
        auto outcome = detect_distress(company, rule);
        if (!outcome.distressed) {
            for (std::size_t ri = 0; ri < company.records.size(); ++ri)
                ds.rows.push_back({ci, ri, 0});
            continue;
        }
        int cutoff_year = outcome.final_year - horizon;
        std::size_t kept = 0;
        for (std::size_t ri = 0; ri < company.records.size(); ++ri) {
            if (company.records[ri].report_year > cutoff_year) break;
            ds.rows.push_back({ci, ri, 0});
            ++kept;
        }
        if (kept > 0) ds.rows.back().label = 1;
    }
    return ds;
}

HorizonCounts summarize_counts(const HorizonDataset& ds) {
    HorizonCounts c;
    c.total = ds.rows.size();
    c.positive = ds.positives();
    c.negative = c.total - c.positive;
    return c;
}

} // namespace bankbench::labeling
