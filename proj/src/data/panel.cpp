#include "bankbench/data/panel.hpp"

#include <algorithm>
#include <unordered_set>

#include "bankbench/core/error.hpp"

namespace bankbench::data {

void validate_panel(Panel& panel) {
    std::unordered_set<std::string> seen_ids;
    for (auto& company : panel.companies) {
        if (company.records.empty())
            throw data_error("panel: company " + company.company_id + " has no records");
        if (!seen_ids.insert(company.company_id).second)
            throw data_error("panel: duplicate company_id " + company.company_id);

        std::sort(company.records.begin(), company.records.end(),
                  [](const CompanyYearRecord& a, const CompanyYearRecord& b) {
                      return a.report_year < b.report_year;
                  });
        for (std::size_t i = 0; i < company.records.size(); ++i) {
            const auto& rec = company.records[i];
            if (rec.company_id != company.company_id)
                throw data_error("panel: record company_id mismatch under " + company.company_id);
            if (i > 0 && rec.report_year == company.records[i - 1].report_year)
                throw data_error("panel: duplicate (company_id, report_year) for " +
                                 company.company_id + "/" + std::to_string(rec.report_year));
            if (rec.incorporation_year > rec.report_year)
                throw data_error("panel: " + company.company_id + " incorporated " +
                                 std::to_string(rec.incorporation_year) + " after report year " +
                                 std::to_string(rec.report_year));
        }
    }
}

void attach_macro(Panel& panel, MacroTable macro) {
    for (const auto& [key, value] : macro.gdp) {
        if (!(value > 0.0))
            throw data_error("macro: non-positive GDP for " + key.first + "/" +
                             std::to_string(key.second));
    }
    panel.macro = std::move(macro);
}

} // namespace bankbench::data
