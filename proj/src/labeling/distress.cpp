#include "bankbench/labeling/distress.hpp"

#include <cmath>

#include "bankbench/core/error.hpp"

namespace bankbench::labeling {

namespace {

// ratio < cutoff, false whenever the ratio cannot be formed
bool criterion_met(const std::optional<double>& num, const std::optional<double>& den, double cutoff) {
    if (!num || !den || *den == 0.0) return false;
    return *num / *den < cutoff;
}

} // namespace

void validate_rule(const DistressRule& rule) {
    if (!std::isfinite(rule.equity_ta_max) || !std::isfinite(rule.ebitda_ta_max) ||
        !std::isfinite(rule.current_ratio_max))
        throw config_error("distress rule: thresholds must be finite");
}

DistressOutcome detect_distress(const data::CompanyHistory& company, const DistressRule& rule) {
    validate_rule(rule);
    if (company.records.empty()) throw data_error("detect_distress: empty company history");

    const auto& last = company.records.back();
    const auto& st = last.statement;
    bool meets = criterion_met(st.equity, st.total_assets, rule.equity_ta_max) &&
                 criterion_met(st.ebitda, st.total_assets, rule.ebitda_ta_max) &&
                 criterion_met(st.current_assets, st.current_liabilities, rule.current_ratio_max);

    DistressOutcome out;
    out.final_year = last.report_year;
    if (!meets) return out;
    if (last.report_year == rule.censor_year) {
        out.censored = true;
        return out;
    }
    out.distressed = true;
    return out;
}

} // namespace bankbench::labeling
