#pragma once

#include <optional>
#include <span>
#include <string>

namespace bankbench::data {

// One annual financial statement. Fields are optional because filings are
// incomplete; downstream ratio logic propagates missingness instead of
// inventing zeros.
struct RawStatement {
    std::optional<double> total_assets;
    std::optional<double> fixed_assets;
    std::optional<double> current_assets;
    std::optional<double> inventories;
    std::optional<double> receivables;
    std::optional<double> cash;
    std::optional<double> quick_assets;
    std::optional<double> equity;
    std::optional<double> share_capital;
    std::optional<double> retained_profit;
    std::optional<double> total_liabilities;
    std::optional<double> current_liabilities;
    std::optional<double> long_term_liabilities;
    std::optional<double> total_operating_revenue;
    std::optional<double> sales;
    std::optional<double> gross_profit;
    std::optional<double> net_profit;
    std::optional<double> ebit;
    std::optional<double> ebitda;
    std::optional<double> depreciation;
    std::optional<double> financial_costs;
    std::optional<double> interest_expense;
    std::optional<double> operating_expenses;
    std::optional<double> total_costs;
    std::optional<double> cash_flow;
};

struct StatementField {
    const char* name;
    std::optional<double> RawStatement::*member;
};

// Stable, code-defined field order; CSV schemas and the feature expression
// engine both resolve names through this table.
std::span<const StatementField> statement_fields();

const StatementField* find_statement_field(std::string_view name);

} // namespace bankbench::data
