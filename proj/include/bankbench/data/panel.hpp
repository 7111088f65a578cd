#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bankbench/data/statement.hpp"

namespace bankbench::data {

struct CompanyYearRecord {
    std::string company_id;
    std::string country;
    std::string state_region;
    std::string legal_form;
    std::string employees_band;
    std::string operational_status;
    std::string sector;
    int naics_primary = 0;
    int naics_secondary = 0;
    int naics_2digit = 0;
    int naics_3digit = 0;
    bool has_multiple_industries = false;
    int incorporation_year = 0;
    int report_year = 0;
    RawStatement statement;
};

struct CompanyHistory {
    std::string company_id;
    std::vector<CompanyYearRecord> records; // strictly increasing report_year
};

// Annual GDP per (country, year). std::map keeps iteration deterministic for
// serialization.
struct MacroTable {
    std::map<std::pair<std::string, int>, double> gdp;

    bool empty() const { return gdp.empty(); }
    const double* lookup(const std::string& country, int year) const {
        auto it = gdp.find({country, year});
        return it == gdp.end() ? nullptr : &it->second;
    }
};

struct Panel {
    std::vector<CompanyHistory> companies;
    MacroTable macro;

    std::size_t record_count() const {
        std::size_t n = 0;
        for (const auto& c : companies) n += c.records.size();
        return n;
    }
};

// Sorts records by year and enforces the panel invariants: unique
// (company_id, report_year), non-empty histories, incorporation_year no later
// than any report_year. Throws data_error on violation.
void validate_panel(Panel& panel);

// Attaches GDP series after checking every value is strictly positive.
void attach_macro(Panel& panel, MacroTable macro);

} // namespace bankbench::data
