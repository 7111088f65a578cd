#include "bankbench/data/csv.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "bankbench/core/error.hpp"
#include "bankbench/core/numeric.hpp"

namespace bankbench::data {

namespace {

bool needs_quoting(const std::string& field, char delimiter) {
    return field.find(delimiter) != std::string::npos ||
           field.find('"') != std::string::npos ||
           field.find('\n') != std::string::npos ||
           field.find('\r') != std::string::npos;
}

std::string quote_field(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvTable parse_csv(const std::string& text, char delimiter) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool record_open = false;

    auto end_field = [&]() {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&]() {
        end_field();
        if (table.header.empty())
            table.header = std::move(record);
        else
            table.rows.push_back(std::move(record));
        record.clear();
        record_open = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        record_open = true;
        if (c == '"') {
            in_quotes = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_record();
        } else {
            field += c;
        }
    }
    if (in_quotes) throw data_error("csv: unterminated quoted field");
    if (record_open || !field.empty() || !record.empty()) end_record();

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.header.size())
            throw data_error("csv: row " + std::to_string(r + 2) + " has " +
                             std::to_string(table.rows[r].size()) + " fields, expected " +
                             std::to_string(table.header.size()));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("csv: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), delimiter);
}

std::string render_csv(const CsvTable& table, char delimiter) {
    std::string out;
    auto render_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += delimiter;
            out += needs_quoting(row[i], delimiter) ? quote_field(row[i]) : row[i];
        }
        out += '\n';
    };
    render_row(table.header);
    for (const auto& row : table.rows) render_row(row);
    return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table, char delimiter) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("csv: cannot write " + path.string());
    out << render_csv(table, delimiter);
}

std::vector<std::string> panel_csv_header() {
    std::vector<std::string> h{
        "company_id",     "country",       "state_region",       "legal_form",
        "employees_band", "operational_status", "sector",        "naics_primary",
        "naics_secondary", "naics_2digit", "naics_3digit",       "has_multiple_industries",
        "incorporation_year", "report_year",
    };
    for (const auto& f : statement_fields()) h.emplace_back(f.name);
    return h;
}

namespace {

int require_column(const CsvTable& table, const std::string& name) {
    int idx = table.column(name);
    if (idx < 0) throw data_error("panel csv: missing column " + name);
    return idx;
}

int parse_int_cell(const std::string& cell, const std::string& column, std::size_t row) {
    auto v = parse_int(cell);
    if (!v)
        throw data_error("panel csv: row " + std::to_string(row + 2) + " column " + column +
                         ": cannot parse integer from '" + cell + "'");
    return static_cast<int>(*v);
}

} // namespace

Panel parse_panel_csv(const std::string& text, char delimiter) {
    CsvTable table = parse_csv(text, delimiter);
    auto expected = panel_csv_header();
    std::unordered_map<std::string, int> cols;
    for (const auto& name : expected) cols[name] = require_column(table, name);

    Panel panel;
    std::unordered_map<std::string, std::size_t> company_index;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        CompanyYearRecord rec;
        rec.company_id = row[cols["company_id"]];
        if (rec.company_id.empty())
            throw data_error("panel csv: row " + std::to_string(r + 2) + ": empty company_id");
        rec.country = row[cols["country"]];
        rec.state_region = row[cols["state_region"]];
        rec.legal_form = row[cols["legal_form"]];
        rec.employees_band = row[cols["employees_band"]];
        rec.operational_status = row[cols["operational_status"]];
        rec.sector = row[cols["sector"]];
        rec.naics_primary = parse_int_cell(row[cols["naics_primary"]], "naics_primary", r);
        rec.naics_secondary = parse_int_cell(row[cols["naics_secondary"]], "naics_secondary", r);
        rec.naics_2digit = parse_int_cell(row[cols["naics_2digit"]], "naics_2digit", r);
        rec.naics_3digit = parse_int_cell(row[cols["naics_3digit"]], "naics_3digit", r);
        rec.has_multiple_industries =
            parse_int_cell(row[cols["has_multiple_industries"]], "has_multiple_industries", r) != 0;
        rec.incorporation_year = parse_int_cell(row[cols["incorporation_year"]], "incorporation_year", r);
        rec.report_year = parse_int_cell(row[cols["report_year"]], "report_year", r);

        for (const auto& f : statement_fields()) {
            const std::string& cell = row[cols[f.name]];
            if (cell.empty()) continue;
            auto v = parse_double(cell);
            if (!v)
                throw data_error("panel csv: row " + std::to_string(r + 2) + " column " +
                                 std::string(f.name) + ": cannot parse number from '" + cell + "'");
            rec.statement.*(f.member) = *v;
        }

        auto it = company_index.find(rec.company_id);
        if (it == company_index.end()) {
            company_index.emplace(rec.company_id, panel.companies.size());
            panel.companies.push_back({rec.company_id, {std::move(rec)}});
        } else {
            panel.companies[it->second].records.push_back(std::move(rec));
        }
    }
    validate_panel(panel);
    return panel;
}

Panel ingest_panel_csv(const std::filesystem::path& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("panel csv: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_panel_csv(buf.str(), delimiter);
}

CsvTable panel_to_csv(const Panel& panel) {
    CsvTable table;
    table.header = panel_csv_header();
    for (const auto& company : panel.companies) {
        for (const auto& rec : company.records) {
            std::vector<std::string> row;
            row.reserve(table.header.size());
            row.push_back(rec.company_id);
            row.push_back(rec.country);
            row.push_back(rec.state_region);
            row.push_back(rec.legal_form);
            row.push_back(rec.employees_band);
            row.push_back(rec.operational_status);
            row.push_back(rec.sector);
            row.push_back(std::to_string(rec.naics_primary));
            row.push_back(std::to_string(rec.naics_secondary));
            row.push_back(std::to_string(rec.naics_2digit));
            row.push_back(std::to_string(rec.naics_3digit));
            row.push_back(rec.has_multiple_industries ? "1" : "0");
            row.push_back(std::to_string(rec.incorporation_year));
            row.push_back(std::to_string(rec.report_year));
            for (const auto& f : statement_fields()) {
                const auto& v = rec.statement.*(f.member);
                row.push_back(v ? format_double(*v) : std::string());
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

MacroTable parse_macro_csv(const std::string& text, char delimiter) {
    CsvTable table = parse_csv(text, delimiter);
    int c_country = require_column(table, "country");
    int c_year = require_column(table, "year");
    int c_gdp = require_column(table, "gdp");
    MacroTable macro;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        auto year = parse_int(row[c_year]);
        auto gdp = parse_double(row[c_gdp]);
        if (!year || !gdp)
            throw data_error("macro csv: row " + std::to_string(r + 2) + ": bad year or gdp");
        auto key = std::make_pair(row[c_country], static_cast<int>(*year));
        if (!macro.gdp.emplace(key, *gdp).second)
            throw data_error("macro csv: duplicate entry for " + row[c_country] + "/" + row[c_year]);
    }
    return macro;
}

MacroTable ingest_macro_csv(const std::filesystem::path& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("macro csv: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_macro_csv(buf.str(), delimiter);
}

CsvTable macro_to_csv(const MacroTable& macro) {
    CsvTable table;
    table.header = {"country", "year", "gdp"};
    for (const auto& [key, gdp] : macro.gdp) {
        table.rows.push_back({key.first, std::to_string(key.second), format_double(gdp)});
    }
    return table;
}

} // namespace bankbench::data
