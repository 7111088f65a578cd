#include "bankbench/data/statement.hpp"

#include <array>

namespace bankbench::data {

namespace {

constexpr std::array<StatementField, 25> k_fields{{
    {"total_assets", &RawStatement::total_assets},
    {"fixed_assets", &RawStatement::fixed_assets},
    {"current_assets", &RawStatement::current_assets},
    {"inventories", &RawStatement::inventories},
    {"receivables", &RawStatement::receivables},
    {"cash", &RawStatement::cash},
    {"quick_assets", &RawStatement::quick_assets},
    {"equity", &RawStatement::equity},
    {"share_capital", &RawStatement::share_capital},
    {"retained_profit", &RawStatement::retained_profit},
    {"total_liabilities", &RawStatement::total_liabilities},
    {"current_liabilities", &RawStatement::current_liabilities},
    {"long_term_liabilities", &RawStatement::long_term_liabilities},
    {"total_operating_revenue", &RawStatement::total_operating_revenue},
    {"sales", &RawStatement::sales},
    {"gross_profit", &RawStatement::gross_profit},
    {"net_profit", &RawStatement::net_profit},
    {"ebit", &RawStatement::ebit},
    {"ebitda", &RawStatement::ebitda},
    {"depreciation", &RawStatement::depreciation},
    {"financial_costs", &RawStatement::financial_costs},
    {"interest_expense", &RawStatement::interest_expense},
    {"operating_expenses", &RawStatement::operating_expenses},
    {"total_costs", &RawStatement::total_costs},
    {"cash_flow", &RawStatement::cash_flow},
}};

} // namespace

std::span<const StatementField> statement_fields() {
    return {k_fields.data(), k_fields.size()};
}

const StatementField* find_statement_field(std::string_view name) {
    for (const auto& f : k_fields) {
        if (name == f.name) return &f;
    }
    return nullptr;
}

} // namespace bankbench::data
