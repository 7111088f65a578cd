#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bankbench/data/panel.hpp"

namespace bankbench::data {

// Minimal RFC-4180-ish table: quoted fields, embedded delimiters/quotes/newlines.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const; // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path, char delimiter = ',');
CsvTable parse_csv(const std::string& text, char delimiter = ',');
std::string render_csv(const CsvTable& table, char delimiter = ',');
void write_csv(const std::filesystem::path& path, const CsvTable& table, char delimiter = ',');

// Panel CSV layout: one row per company-year, metadata columns followed by the
// statement fields in statement_fields() order. Missing numerics are empty
// cells. ingest groups rows into histories and runs validate_panel.
std::vector<std::string> panel_csv_header();
Panel ingest_panel_csv(const std::filesystem::path& path, char delimiter = ',');
Panel parse_panel_csv(const std::string& text, char delimiter = ',');
CsvTable panel_to_csv(const Panel& panel);

// Macro CSV layout: country,year,gdp.
MacroTable ingest_macro_csv(const std::filesystem::path& path, char delimiter = ',');
MacroTable parse_macro_csv(const std::string& text, char delimiter = ',');
CsvTable macro_to_csv(const MacroTable& macro);

} // namespace bankbench::data
