#pragma once

#include <optional>

#include "bankbench/data/panel.hpp"

namespace bankbench::labeling {

// A company is distressed when, in its final reporting year, equity/assets,
// EBITDA/assets and the current ratio all sit strictly below their cutoffs.
// Companies whose final year equals censor_year are excluded: their silence
// is censoring, not observed failure.
struct DistressRule {
    double equity_ta_max = 0.0;
    double ebitda_ta_max = 0.0;
    double current_ratio_max = 0.6;
    int censor_year = 2021;
};

struct DistressOutcome {
    bool distressed = false;
    bool censored = false;  // final year hit censor_year while satisfying the criteria
    int final_year = 0;     // distress year when distressed
};

void validate_rule(const DistressRule& rule);

// Evaluates the rule on the company's last record. A criterion with a missing
// input or a zero denominator counts as not met.
DistressOutcome detect_distress(const data::CompanyHistory& company, const DistressRule& rule);

} // namespace bankbench::labeling
