#include "bankbench/llm/prompt.hpp"

#include <algorithm>
#include <unordered_map>

#include "bankbench/core/error.hpp"
#include "bankbench/core/numeric.hpp"

namespace bankbench::llm {

std::vector<PromptGroup> default_prompt_groups() {
    return {
        {"Liquidity",
         {{"Working_capital", "X50"},
          {"Current_assets/current_liabilities", "X21"},
          {"Current_assets-inventories/current_liabilities", "X19"},
          {"Current_assets-inventories-receivables/current_liabilities", "X18"},
          {"Working_capital/total_assets", "X54"},
          {"Cash/total_assets", "X16"},
          {"Inventories/working_capital", "X36"}}},
        {"Profitability",
         {{"Net_profit/total_assets", "X42"},
          {"EBIT/total_assets", "X24"},
          {"EBITDA/total_assets", "X29"},
          {"Net_profit/total_operating_revenue", "X43"},
          {"EBIT/total_operating_revenue", "X27"},
          {"EBITDA/total_operating_revenue", "X30"},
          {"EBIT/equity", "X22"},
          {"EBIT/total_costs", "X25"},
          {"Net_profit/fixed_assets", "X40"},
          {"EBITDA/fixed_assets", "X28"}}},
        {"Leverage",
         {{"EBIT/total_liabilities", "X26"},
          {"Net_profit+depreciation/total_liabilities", "X38"},
          {"Total_liabilities/total_assets", "X97"},
          {"Equity/total_assets", "X86"},
          {"Equity/fixed_assets", "X83"},
          {"Long_term_liabilities/equity", "X94"},
          {"Current_liabilities/current_assets", "X79"}}},
        {"Efficiency",
         {{"Operating_cycle", "X62"}, {"Cash_conversion_cycle", "X60"}, {"Receivables_turnover_days", "X64"}}},
        {"Growth",
         {{"Operating_revenue_growth", "X103"}, {"Total_assets_growth", "X106"}, {"Net_profit_growth", "X101"}}},
        {"Asset Composition",
         {{"Fixed_assets/total_assets", "X90"},
          {"Working_capital/fixed_assets", "X52"},
          {"Current_assets/total_liabilities", "X76"}}},
        {"Risk Flags", {{"Insolvency_flag", "X98"}, {"Loss_flag", "X59"}}},
    };
}

std::string country_display_name(const std::string& code) {
    if (code == "PL") return "Poland";
    if (code == "HU") return "Hungary";
    if (code == "CZ") return "Czech Republic";
    if (code == "SK") return "Slovakia";
    return code;
}

std::string serialize_company(const data::CompanyYearRecord& record, const std::vector<double>& raw_features,
                              const std::vector<std::string>& feature_ids, const std::vector<PromptGroup>& groups) {
    if (raw_features.size() != feature_ids.size())
        throw data_error("serialize_company: feature row and id list differ in length");
    std::unordered_map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < feature_ids.size(); ++i) column.emplace(feature_ids[i], i);

    std::string out = "Company Info: country=" + country_display_name(record.country);
    out += ", state=" + record.state_region;
    out += ", number_of_employees=" + record.employees_band;
    out += ", legal_form=" + record.legal_form;
    out += ", primary_naics_encoded=" + std::to_string(record.naics_primary);
    out += ", naics_2digit=" + std::to_string(record.naics_2digit);
    out += ", naics_3digit=" + std::to_string(record.naics_3digit);
    out += ", has_multiple_industries=";
    out += record.has_multiple_industries ? "Multiple Industries" : "Single Industry";
    out += ", secondary_naics_encoded=" + std::to_string(record.naics_secondary);
    out += ", sector_1=" + record.sector;
    out += ", year=" + std::to_string(record.report_year);

    for (const PromptGroup& group : groups) {
        out += "\n" + group.title + ": ";
        bool first = true;
        for (const PromptField& field : group.fields) {
            auto it = column.find(field.feature_id);
            if (it == column.end())
                throw config_error("serialize_company: prompt group references unknown feature " + field.feature_id);
            if (!first) out += ", ";
            first = false;
            out += field.key + "=" + format_fixed(raw_features[it->second], 3);
        }
    }
    return out;
}

std::string default_horizon_guidance(int horizon) {
    switch (horizon) {
    case 0:
        return "The latest available statement is shown; judge whether the company is already failing as of this "
               "filing.";
    case 1: return "Weight near-term liquidity pressure and immediate solvency signals most heavily.";
    case 2: return "Balance current distress signals against trends that could deteriorate within two years.";
    case 3: return "Favor structural leverage and persistent profitability trends over point-in-time liquidity.";
    default:
        return "This is a long-range assessment: emphasize persistent losses, weak equity, and structural leverage "
               "over transient liquidity.";
    }
}

namespace {

const char* k_ratio_explanations =
    "**Key Financial Ratios Explained**:\n"
    "- **Liquidity Ratios**: Measure ability to pay short-term debts\n"
    "  - Current_assets/current_liabilities: Current ratio (>1.0 = good liquidity)\n"
    "  - Current_assets-inventories/current_liabilities: Acid-test ratio (removes less liquid inventories)\n"
    "  - Current_assets-inventories-receivables/current_liabilities: Quick ratio (most conservative liquidity "
    "measure)\n"
    "  - Working_capital: Current assets minus current liabilities (positive = good)\n"
    "  - Working_capital/total_assets: Working capital efficiency (higher = better liquidity management)\n"
    "  - Cash/total_assets: Cash position relative to total assets (higher = safer)\n"
    "- **Profitability Ratios**: Measure earnings performance\n"
    "  - Net_profit/total_assets: Return on assets (ROA, higher = better)\n"
    "  - EBIT/total_assets: Operating return on assets (excludes financial structure effects)\n"
    "  - EBITDA/total_assets: Cash-based return on assets (excludes depreciation)\n"
    "  - Net_profit/total_operating_revenue: Net profit margin (higher = better)\n"
    "  - EBIT/total_operating_revenue: Operating margin (higher = better)\n"
    "  - EBITDA/total_operating_revenue: EBITDA margin (cash flow efficiency)\n"
    "  - EBIT/equity: Return on equity (higher = better)\n"
    "  - EBIT/total_costs: Operating efficiency ratio\n"
    "  - Net_profit/fixed_assets: Asset utilization efficiency\n"
    "  - EBITDA/fixed_assets: Cash generation from fixed assets\n"
    "- **Leverage Ratios**: Measure debt levels and financial risk\n"
    "  - EBIT/total_liabilities: Earnings coverage of total debt (higher = better)\n"
    "  - Net_profit+depreciation/total_liabilities: Cash flow coverage of debt\n"
    "  - Total_liabilities/total_assets: Debt-to-asset ratio (lower = better)\n"
    "  - Equity/total_assets: Equity ratio (higher = better)\n"
    "  - Equity/fixed_assets: Equity financing of fixed assets (higher = better)\n"
    "  - Long_term_liabilities/equity: Long-term debt burden\n"
    "  - Current_liabilities/current_assets: Short-term debt pressure (lower = better)\n"
    "- **Efficiency Ratios**: Measure operational performance\n"
    "  - Operating_cycle: Days to convert inventory to cash (lower = better)\n"
    "  - Cash_conversion_cycle: Net days to convert investments to cash\n"
    "  - Receivables_turnover_days: Days to collect receivables (lower = better)\n"
    "- **Growth Metrics**: Measure company expansion\n"
    "  - Operating_revenue_growth: Revenue growth rate\n"
    "  - Total_assets_growth: Asset growth rate\n"
    "  - Net_profit_growth: Profit growth rate\n"
    "- **Asset Composition**: Measure asset structure and efficiency\n"
    "  - Fixed_assets/total_assets: Asset structure (higher = more capital intensive)\n"
    "  - Working_capital/fixed_assets: Working capital relative to fixed investment\n"
    "  - Current_assets/total_liabilities: Asset coverage of liabilities\n"
    "- **Risk Flags**: Binary indicators\n"
    "  - Insolvency_flag: 1 if company is technically insolvent\n"
    "  - Loss_flag: 1 if company has consecutive losses\n";

const char* k_risk_indicators =
    "**Bankruptcy Risk Indicators**:\n"
    "- **High Risk**: Negative working capital, low liquidity ratios (<1.0), high debt ratios (>0.7), declining "
    "profits, insolvency/loss flags\n"
    "- **Medium Risk**: Declining growth, moderate debt levels (0.4-0.7), industry volatility, operational issues\n"
    "- **Low Risk**: Strong liquidity (>1.5), positive growth, low debt (<0.4), consistent profitability, stable "
    "industry\n";

const char* k_interpretation_guidelines =
    "**Ratio Interpretation Guidelines**:\n"
    "- Current ratio < 1.0: Severe liquidity problems\n"
    "- Quick ratio < 1.0: Potential liquidity problems\n"
    "- Working capital/total_assets < 0: Negative working capital (high risk)\n"
    "- Debt-to-asset ratio > 0.7: High financial risk\n"
    "- EBIT/total_liabilities < 0.1: Poor debt coverage\n"
    "- Fixed_assets/total_assets > 0.8: High capital intensity (industry dependent)\n"
    "- Negative growth rates: Declining business performance\n"
    "- Operating cycle > 120 days: Inefficient operations\n"
    "- Loss flags = 1: Immediate bankruptcy risk\n";

const char* k_structure_features =
    "**Company Structure Features**:\n"
    "- **Industry Codes**: NAICS classification system\n"
    "  - primary_naics_encoded: Main industry code (higher numbers = more specific industries)\n"
    "  - naics_2digit: Broad sector (11-99, e.g., 23=Construction, 31-33=Manufacturing)\n"
    "  - naics_3digit: Subsector (e.g., 236=Construction of Buildings)\n"
    "  - has_multiple_industries: 1 if company operates in multiple industries (higher risk)\n"
    "  - secondary_naics_encoded: Secondary industry if diversified\n"
    "- **Operational Status**: Liquidation, Under Legal Investigation, Closed, Active\n";

const char* k_response_format =
    "**Response Format**: Respond with exactly two numbers separated by a comma:\n"
    "[prediction],[probability]\n"
    "\n"
    "Where:\n"
    "- prediction: 1 if the company will likely go bankrupt, 0 if not\n"
    "- probability: a decimal between 0.0 and 1.0 representing the probability of bankruptcy\n"
    "\n"
    "Example responses:\n"
    "- \"1,0.85\" (high bankruptcy risk)\n"
    "- \"0,0.15\" (low bankruptcy risk)\n"
    "- \"1,0.65\" (moderate-high bankruptcy risk)\n"
    "\n"
    "RETURN ONLY THE REQUIRED NUMBERS, NO OTHER TEXT\n";

} // namespace

std::string render_prompt(const PromptTemplate& tmpl, const std::string& target_serialized, PromptMode mode,
                          const std::vector<IclExample>& examples) {
    if (tmpl.horizon < 0) throw config_error("render_prompt: horizon must be >= 0");
    if (mode == PromptMode::icl && examples.empty())
        throw config_error("render_prompt: icl mode requires a non-empty example set");

    const std::string h = std::to_string(tmpl.horizon);
    const std::string guidance =
        tmpl.horizon_guidance.empty() ? default_horizon_guidance(tmpl.horizon) : tmpl.horizon_guidance;

    std::string out = "You are a financial analyst specializing in bankruptcy prediction for companies. Analyze the "
                      "provided financial data and predict ";
    out += tmpl.horizon == 0 ? "current-year" : h + "-year-ahead";
    out += " bankruptcy risk.\n\n";

    out += "**Task**: Based on the financial metrics below, predict if this company will go bankrupt ";
    out += tmpl.horizon == 0 ? "in its current reporting year" : "within the next " + h + " years";
    out += ".\n\n";

    out += "**Prediction Timeframe**: This is a " + h + "-year ahead prediction. " + guidance + "\n\n";
    out += std::string(k_ratio_explanations) + "\n";
    out += std::string(k_risk_indicators) + "\n";
    out += std::string(k_interpretation_guidelines) + "\n";
    out += std::string(k_structure_features) + "\n";
    out += std::string(k_response_format) + "\n";

    if (mode == PromptMode::icl) {
        out += "**Examples**:\n\n";
        for (std::size_t i = 0; i < examples.size(); ++i) {
            out += "Example " + std::to_string(i + 1) + ":\n";
            out += examples[i].serialized + "\n";
            out += "Prediction: " + std::to_string(examples[i].label) + "\n\n";
        }
    }

    out += "**Now analyze this company**:\n\n";
    out += target_serialized + "\n\n";
    out += "Prediction:";
    return out;
}

IclSelection select_icl_examples(const std::vector<double>& proxy_scores, const std::vector<int>& labels,
                                 std::size_t k) {
    if (proxy_scores.size() != labels.size())
        throw data_error("select_icl_examples: score and label lengths differ");
    if (k < 1) throw config_error("select_icl_examples: k must be >= 1");

    std::vector<std::size_t> positives;
    std::vector<std::size_t> negatives;
    for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? positives : negatives).push_back(i);
    if (positives.size() < k)
        throw data_error("select_icl_examples: only " + std::to_string(positives.size()) +
                         " positive rows available, need " + std::to_string(k));
    if (negatives.size() < k)
        throw data_error("select_icl_examples: only " + std::to_string(negatives.size()) +
                         " negative rows available, need " + std::to_string(k));

    std::sort(positives.begin(), positives.end(), [&](std::size_t a, std::size_t b) {
        if (proxy_scores[a] != proxy_scores[b]) return proxy_scores[a] < proxy_scores[b];
        return a < b;
    });
    std::sort(negatives.begin(), negatives.end(), [&](std::size_t a, std::size_t b) {
        if (proxy_scores[a] != proxy_scores[b]) return proxy_scores[a] > proxy_scores[b];
        return a < b;
    });

    IclSelection out;
    out.positive_rows.assign(positives.begin(), positives.begin() + static_cast<std::ptrdiff_t>(k));
    out.negative_rows.assign(negatives.begin(), negatives.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

} // namespace bankbench::llm
