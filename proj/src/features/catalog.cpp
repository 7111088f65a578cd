#include "bankbench/features/catalog.hpp"

#include "bankbench/core/error.hpp"

namespace bankbench::features {

const char* kind_name(FeatureKind kind) {
    switch (kind) {
    case FeatureKind::metadata: return "metadata";
    case FeatureKind::ratio: return "ratio";
    case FeatureKind::flag: return "flag";
    case FeatureKind::growth: return "growth";
    case FeatureKind::log_macro: return "log_macro";
    case FeatureKind::sector_relative: return "sector_relative";
    case FeatureKind::absolute: return "absolute";
    }
    return "unknown";
}

namespace {

struct Row {
    const char* id;
    const char* name;
    FeatureKind kind;
    const char* formula;
    MetaSource source;
    bool categorical;
};

constexpr FeatureKind META = FeatureKind::metadata;
constexpr FeatureKind RATIO = FeatureKind::ratio;
constexpr FeatureKind FLAG = FeatureKind::flag;
constexpr FeatureKind GROW = FeatureKind::growth;
constexpr FeatureKind LOGM = FeatureKind::log_macro;
constexpr FeatureKind SECT = FeatureKind::sector_relative;
constexpr FeatureKind ABS = FeatureKind::absolute;

#define GROWTH_OF(f) "(" f " - prev(" f ")) / abs(prev(" f "))"

const Row k_rows[] = {
    {"X1", "Country", META, "record:country", MetaSource::country, true},
    {"X2", "Multiple industries flag", META, "record:has_multiple_industries", MetaSource::multi_industry, false},
    {"X3", "Incorporation age band (coarse)", META, "record:incorporation_year banded 0-2/3-4/5-24/>24", MetaSource::incorporation_band_coarse, false},
    {"X4", "Incorporation age band (fine)", META, "record:incorporation_year banded 0-1/2/3-5/6-9/10-19/>19", MetaSource::incorporation_band_fine, false},
    {"X5", "Legal form", META, "record:legal_form", MetaSource::legal_form, true},
    {"X6", "NAICS 2-digit", META, "record:naics_2digit", MetaSource::naics2, false},
    {"X7", "NAICS 3-digit", META, "record:naics_3digit", MetaSource::naics3, false},
    {"X8", "Employee count band", META, "record:employees_band", MetaSource::employees_band, true},
    {"X9", "Operational status", META, "record:operational_status", MetaSource::operational_status, true},
    {"X10", "Primary NAICS (encoded)", META, "record:naics_primary", MetaSource::naics_primary, false},
    {"X11", "Secondary NAICS (encoded)", META, "record:naics_secondary", MetaSource::naics_secondary, false},
    {"X12", "Sector", META, "record:sector", MetaSource::sector, true},
    {"X13", "State or region", META, "record:state_region", MetaSource::state_region, true},
    {"X14", "Report year", META, "record:report_year", MetaSource::report_year, false},
    {"X15", "Cash / sales", RATIO, "cash / sales", MetaSource::none, false},
    {"X16", "Cash / total assets", RATIO, "cash / total_assets", MetaSource::none, false},
    {"X17", "Cash / operating revenue", RATIO, "cash / total_operating_revenue", MetaSource::none, false},
    {"X18", "(Current assets - inventories - receivables) / current liabilities", RATIO, "(current_assets - inventories - receivables) / current_liabilities", MetaSource::none, false},
    {"X19", "(Current assets - inventories) / current liabilities", RATIO, "(current_assets - inventories) / current_liabilities", MetaSource::none, false},
    {"X20", "Current assets / sales", RATIO, "current_assets / sales", MetaSource::none, false},
    {"X21", "Current ratio", RATIO, "current_assets / current_liabilities", MetaSource::none, false},
    {"X22", "EBIT / equity", RATIO, "ebit / equity", MetaSource::none, false},
    {"X23", "EBIT / financial costs", RATIO, "ebit / financial_costs", MetaSource::none, false},
    {"X24", "EBIT / total assets", RATIO, "ebit / total_assets", MetaSource::none, false},
    {"X25", "EBIT / total costs", RATIO, "ebit / total_costs", MetaSource::none, false},
    {"X26", "EBIT / total liabilities", RATIO, "ebit / total_liabilities", MetaSource::none, false},
    {"X27", "EBIT / operating revenue", RATIO, "ebit / total_operating_revenue", MetaSource::none, false},
    {"X28", "EBITDA / fixed assets", RATIO, "ebitda / fixed_assets", MetaSource::none, false},
    {"X29", "EBITDA / total assets", RATIO, "ebitda / total_assets", MetaSource::none, false},
    {"X30", "EBITDA / operating revenue", RATIO, "ebitda / total_operating_revenue", MetaSource::none, false},
    {"X31", "(Gross profit + depreciation) / total liabilities", RATIO, "(gross_profit + depreciation) / total_liabilities", MetaSource::none, false},
    {"X32", "Gross profit / current liabilities", RATIO, "gross_profit / current_liabilities", MetaSource::none, false},
    {"X33", "Gross profit / total assets", RATIO, "gross_profit / total_assets", MetaSource::none, false},
    {"X34", "Gross profit / operating revenue", RATIO, "gross_profit / total_operating_revenue", MetaSource::none, false},
    {"X35", "Interest expense / operating revenue", RATIO, "interest_expense / total_operating_revenue", MetaSource::none, false},
    {"X36", "Inventories / working capital", RATIO, "inventories / working_capital", MetaSource::none, false},
    {"X37", "(Net profit + depreciation) / current liabilities", RATIO, "(net_profit + depreciation) / current_liabilities", MetaSource::none, false},
    {"X38", "(Net profit + depreciation) / total liabilities", RATIO, "(net_profit + depreciation) / total_liabilities", MetaSource::none, false},
    {"X39", "Net profit / equity", RATIO, "net_profit / equity", MetaSource::none, false},
    {"X40", "Net profit / fixed assets", RATIO, "net_profit / fixed_assets", MetaSource::none, false},
    {"X41", "Net profit / inventories", RATIO, "net_profit / inventories", MetaSource::none, false},
    {"X42", "Net profit / total assets", RATIO, "net_profit / total_assets", MetaSource::none, false},
    {"X43", "Net profit / operating revenue", RATIO, "net_profit / total_operating_revenue", MetaSource::none, false},
    {"X44", "Net profit / current assets", RATIO, "net_profit / current_assets", MetaSource::none, false},
    {"X45", "Operating expenses / current liabilities", RATIO, "operating_expenses / current_liabilities", MetaSource::none, false},
    {"X46", "Operating expenses / total liabilities", RATIO, "operating_expenses / total_liabilities", MetaSource::none, false},
    {"X47", "Quick assets / sales", RATIO, "quick_assets / sales", MetaSource::none, false},
    {"X48", "Retained profit / current liabilities", RATIO, "retained_profit / current_liabilities", MetaSource::none, false},
    {"X49", "Retained profit / total assets", RATIO, "retained_profit / total_assets", MetaSource::none, false},
    {"X50", "Working capital", ABS, "working_capital", MetaSource::none, false},
    {"X51", "Working capital / equity", RATIO, "working_capital / equity", MetaSource::none, false},
    {"X52", "Working capital / fixed assets", RATIO, "working_capital / fixed_assets", MetaSource::none, false},
    {"X53", "Working capital / sales", RATIO, "working_capital / sales", MetaSource::none, false},
    {"X54", "Working capital / total assets", RATIO, "working_capital / total_assets", MetaSource::none, false},
    {"X55", "Working capital / total liabilities", RATIO, "working_capital / total_liabilities", MetaSource::none, false},
    {"X56", "Working capital / operating revenue", RATIO, "working_capital / total_operating_revenue", MetaSource::none, false},
    {"X57", "Cash flow / sales", RATIO, "cash_flow / sales", MetaSource::none, false},
    {"X58", "Cash flow / total liabilities", RATIO, "cash_flow / total_liabilities", MetaSource::none, false},
    {"X59", "Loss flag (net profit < 0)", FLAG, "net_profit < 0", MetaSource::none, false},
    {"X60", "Cash conversion cycle (days)", RATIO, "(inventories + receivables - current_liabilities) * 365 / total_operating_revenue", MetaSource::none, false},
    {"X61", "Inventories / operating revenue", RATIO, "inventories / total_operating_revenue", MetaSource::none, false},
    {"X62", "Operating cycle (days)", RATIO, "(inventories + receivables) * 365 / total_operating_revenue", MetaSource::none, false},
    {"X63", "Operating expenses / sales", RATIO, "operating_expenses / sales", MetaSource::none, false},
    {"X64", "Receivables turnover (days)", RATIO, "receivables * 365 / total_operating_revenue", MetaSource::none, false},
    {"X65", "Operating revenue / current assets", RATIO, "total_operating_revenue / current_assets", MetaSource::none, false},
    {"X66", "Operating revenue / long-term liabilities", RATIO, "total_operating_revenue / long_term_liabilities", MetaSource::none, false},
    {"X67", "Operating revenue / total liabilities", RATIO, "total_operating_revenue / total_liabilities", MetaSource::none, false},
    {"X68", "Current liabilities turnover (days)", RATIO, "current_liabilities * 365 / total_operating_revenue", MetaSource::none, false},
    {"X69", "Operating revenue / fixed assets", RATIO, "total_operating_revenue / fixed_assets", MetaSource::none, false},
    {"X70", "Operating revenue / inventories", RATIO, "total_operating_revenue / inventories", MetaSource::none, false},
    {"X71", "Operating revenue / receivables", RATIO, "total_operating_revenue / receivables", MetaSource::none, false},
    {"X72", "Operating revenue / current liabilities", RATIO, "total_operating_revenue / current_liabilities", MetaSource::none, false},
    {"X73", "Asset turnover", RATIO, "total_operating_revenue / total_assets", MetaSource::none, false},
    {"X74", "Constant capital / fixed assets", RATIO, "constant_capital / fixed_assets", MetaSource::none, false},
    {"X75", "Constant capital / total assets", RATIO, "constant_capital / total_assets", MetaSource::none, false},
    {"X76", "Current assets / total liabilities", RATIO, "current_assets / total_liabilities", MetaSource::none, false},
    {"X77", "Current assets / operating revenue", RATIO, "current_assets / total_operating_revenue", MetaSource::none, false},
    {"X78", "Current liabilities / total liabilities", RATIO, "current_liabilities / total_liabilities", MetaSource::none, false},
    {"X79", "Current liabilities / current assets", RATIO, "current_liabilities / current_assets", MetaSource::none, false},
    {"X80", "Current liabilities / equity", RATIO, "current_liabilities / equity", MetaSource::none, false},
    {"X81", "Current liabilities / total assets", RATIO, "current_liabilities / total_assets", MetaSource::none, false},
    {"X82", "(Equity - share capital) / fixed assets", RATIO, "(equity - share_capital) / fixed_assets", MetaSource::none, false},
    {"X83", "Equity / fixed assets", RATIO, "equity / fixed_assets", MetaSource::none, false},
    {"X84", "Equity / long-term liabilities", RATIO, "equity / long_term_liabilities", MetaSource::none, false},
    {"X85", "Equity / sales", RATIO, "equity / sales", MetaSource::none, false},
    {"X86", "Equity ratio", RATIO, "equity / total_assets", MetaSource::none, false},
    {"X87", "Equity / total liabilities", RATIO, "equity / total_liabilities", MetaSource::none, false},
    {"X88", "Equity ratio class", RATIO, "(equity / total_assets >= 0) + ((equity / total_assets >= 0.3) + (equity / total_assets >= 0.6))", MetaSource::none, false},
    {"X89", "Fixed assets / long-term liabilities", RATIO, "fixed_assets / long_term_liabilities", MetaSource::none, false},
    {"X90", "Fixed assets / total assets", RATIO, "fixed_assets / total_assets", MetaSource::none, false},
    {"X91", "(Inventories + receivables) / equity", RATIO, "(inventories + receivables) / equity", MetaSource::none, false},
    {"X92", "Inventories / current liabilities", RATIO, "inventories / current_liabilities", MetaSource::none, false},
    {"X93", "Long-term liabilities / current assets", RATIO, "long_term_liabilities / current_assets", MetaSource::none, false},
    {"X94", "Long-term liabilities / equity", RATIO, "long_term_liabilities / equity", MetaSource::none, false},
    {"X95", "Net debt / EBITDA", RATIO, "(total_liabilities - cash) / ebitda", MetaSource::none, false},
    {"X96", "Net debt / operating revenue", RATIO, "(total_liabilities - cash) / total_operating_revenue", MetaSource::none, false},
    {"X97", "Total liabilities / total assets", RATIO, "total_liabilities / total_assets", MetaSource::none, false},
    {"X98", "Insolvency flag (liabilities > assets)", FLAG, "total_liabilities > total_assets", MetaSource::none, false},
    {"X99", "Current assets growth", GROW, GROWTH_OF("current_assets"), MetaSource::none, false},
    {"X100", "Inventories growth", GROW, GROWTH_OF("inventories"), MetaSource::none, false},
    {"X101", "Net profit growth", GROW, GROWTH_OF("net_profit"), MetaSource::none, false},
    {"X102", "EBIT growth", GROW, GROWTH_OF("ebit"), MetaSource::none, false},
    {"X103", "Operating revenue growth", GROW, GROWTH_OF("total_operating_revenue"), MetaSource::none, false},
    {"X104", "Receivables growth", GROW, GROWTH_OF("receivables"), MetaSource::none, false},
    {"X105", "Current liabilities growth", GROW, GROWTH_OF("current_liabilities"), MetaSource::none, false},
    {"X106", "Total assets growth", GROW, GROWTH_OF("total_assets"), MetaSource::none, false},
    {"X107", "Log current assets", ABS, "log(current_assets)", MetaSource::none, false},
    {"X108", "Log net profit / GDP", LOGM, "log(net_profit / gdp)", MetaSource::none, false},
    {"X109", "Log EBIT / GDP", LOGM, "log(ebit / gdp)", MetaSource::none, false},
    {"X110", "Log operating revenue / GDP", LOGM, "log(total_operating_revenue / gdp)", MetaSource::none, false},
    {"X111", "Log total liabilities", ABS, "log(total_liabilities)", MetaSource::none, false},
    {"X112", "Log total assets", ABS, "log(total_assets)", MetaSource::none, false},
    {"X113", "Log total assets / GDP", LOGM, "log(total_assets / gdp)", MetaSource::none, false},
    {"X114", "Log operating revenue", ABS, "log(total_operating_revenue)", MetaSource::none, false},
    {"X115", "Cash conversion cycle vs sector", SECT, "(inventories + receivables - current_liabilities) * 365 / total_operating_revenue", MetaSource::none, false},
    {"X116", "Current liabilities turnover vs sector", SECT, "current_liabilities * 365 / total_operating_revenue", MetaSource::none, false},
    {"X117", "Current ratio vs sector", SECT, "current_assets / current_liabilities", MetaSource::none, false},
    {"X118", "EBITDA margin vs sector", SECT, "ebitda / total_operating_revenue", MetaSource::none, false},
    {"X119", "Inventory turnover vs sector", SECT, "inventories * 365 / total_operating_revenue", MetaSource::none, false},
    {"X120", "Return on absolute equity vs sector", SECT, "net_profit / abs(equity)", MetaSource::none, false},
    {"X121", "Return on assets vs sector", SECT, "net_profit / total_assets", MetaSource::none, false},
    {"X122", "Net profit / current assets vs sector", SECT, "net_profit / current_assets", MetaSource::none, false},
    {"X123", "Net profit / fixed assets vs sector", SECT, "net_profit / fixed_assets", MetaSource::none, false},
    {"X124", "Net margin on sales vs sector", SECT, "net_profit / sales", MetaSource::none, false},
    {"X125", "Operating cycle vs sector", SECT, "(inventories + receivables) * 365 / total_operating_revenue", MetaSource::none, false},
    {"X126", "Receivables turnover vs sector", SECT, "receivables * 365 / total_operating_revenue", MetaSource::none, false},
    {"X127", "Asset turnover vs sector", SECT, "total_operating_revenue / total_assets", MetaSource::none, false},
    {"X128", "Revenue / fixed assets vs sector", SECT, "total_operating_revenue / fixed_assets", MetaSource::none, false},
    {"X129", "Cash / current liabilities vs sector", SECT, "cash / current_liabilities", MetaSource::none, false},
    {"X130", "Receivables / current liabilities vs sector", SECT, "receivables / current_liabilities", MetaSource::none, false},
    {"X131", "Working capital / total assets vs sector", SECT, "working_capital / total_assets", MetaSource::none, false},
};

#undef GROWTH_OF

} // namespace

Catalog Catalog::standard(bool include_operational_status) {
    Catalog c;
    c.defs_.reserve(std::size(k_rows));
    for (const auto& row : k_rows) {
        if (!include_operational_status && row.source == MetaSource::operational_status) continue;
        FeatureDef def;
        def.id = row.id;
        def.name = row.name;
        def.kind = row.kind;
        def.formula = row.formula;
        def.source = row.source;
        def.categorical = row.categorical;
        if (def.kind != FeatureKind::metadata) def.expr = parse_expr(def.formula);
        c.defs_.push_back(std::move(def));
    }
    return c;
}

int Catalog::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < defs_.size(); ++i) {
        if (defs_[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

} // namespace bankbench::features
