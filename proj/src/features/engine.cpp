#include "bankbench/features/engine.hpp"

#include "bankbench/core/error.hpp"

namespace bankbench::features {

int CategoryVocab::intern(const std::string& feature_id, const std::string& value) {
    auto& table = by_feature_[feature_id];
    auto it = table.find(value);
    if (it != table.end()) return it->second;
    int id = static_cast<int>(table.size());
    table.emplace(value, id);
    ordered_[feature_id].push_back(value);
    return id;
}

int CategoryVocab::find(const std::string& feature_id, const std::string& value) const {
    auto it = by_feature_.find(feature_id);
    if (it == by_feature_.end()) return -1;
    auto jt = it->second.find(value);
    return jt == it->second.end() ? -1 : jt->second;
}

const std::vector<std::string>& CategoryVocab::values(const std::string& feature_id) const {
    static const std::vector<std::string> empty;
    auto it = ordered_.find(feature_id);
    return it == ordered_.end() ? empty : it->second;
}

void SectorYearStats::add(const std::string& sector, int year, const std::string& id, double value) {
    if (finalized_) throw data_error("sector stats: add after finalize");
    auto& cell = cells_[{sector, year, id}];
    cell.mean += value; // running sum until finalize
    cell.count += 1;
}

void SectorYearStats::finalize() {
    for (auto& [key, cell] : cells_) {
        if (cell.count > 0) cell.mean /= static_cast<double>(cell.count);
    }
    finalized_ = true;
}

const SectorYearStats::Cell* SectorYearStats::lookup(const std::string& sector, int year,
                                                     const std::string& id) const {
    auto it = cells_.find({sector, year, id});
    return it == cells_.end() ? nullptr : &it->second;
}

SectorYearStats compute_sector_year_stats(const data::Panel& panel, const Catalog& catalog) {
    SectorYearStats stats;
    for (const auto& company : panel.companies) {
        for (const auto& rec : company.records) {
            EvalEnv env{&rec, nullptr, &panel.macro};
            for (const auto& def : catalog.defs()) {
                if (def.kind != FeatureKind::sector_relative) continue;
                auto v = eval_expr(def.expr, env);
                if (v) stats.add(rec.sector, rec.report_year, def.id, *v);
            }
        }
    }
    stats.finalize();
    return stats;
}

namespace {

double incorporation_band_coarse(int age) {
    if (age <= 2) return 0.0;
    if (age <= 4) return 1.0;
    if (age <= 24) return 2.0;
    return 3.0;
}

double incorporation_band_fine(int age) {
    if (age <= 1) return 0.0;
    if (age == 2) return 1.0;
    if (age <= 5) return 2.0;
    if (age <= 9) return 3.0;
    if (age <= 19) return 4.0;
    return 5.0;
}

} // namespace

FeatureVector compute_features(const data::CompanyYearRecord& rec,
                               const data::CompanyYearRecord* prev,
                               const data::MacroTable& macro,
                               const SectorYearStats& stats,
                               const Catalog& catalog,
                               CategoryVocab& vocab) {
    FeatureVector out;
    out.values.assign(catalog.size(), 0.0);
    out.present.assign(catalog.size(), 0);

    EvalEnv env{&rec, prev, &macro};
    int age = rec.report_year - rec.incorporation_year;

    for (std::size_t j = 0; j < catalog.size(); ++j) {
        const auto& def = catalog.defs()[j];
        std::optional<double> v;
        if (def.kind == FeatureKind::metadata) {
            switch (def.source) {
            case MetaSource::country: v = vocab.intern(def.id, rec.country); break;
            case MetaSource::multi_industry: v = rec.has_multiple_industries ? 1.0 : 0.0; break;
            case MetaSource::incorporation_band_coarse: v = incorporation_band_coarse(age); break;
            case MetaSource::incorporation_band_fine: v = incorporation_band_fine(age); break;
            case MetaSource::legal_form: v = vocab.intern(def.id, rec.legal_form); break;
            case MetaSource::naics2: v = rec.naics_2digit; break;
            case MetaSource::naics3: v = rec.naics_3digit; break;
            case MetaSource::employees_band: v = vocab.intern(def.id, rec.employees_band); break;
            case MetaSource::operational_status: v = vocab.intern(def.id, rec.operational_status); break;
            case MetaSource::naics_primary: v = rec.naics_primary; break;
            case MetaSource::naics_secondary: v = rec.naics_secondary; break;
            case MetaSource::sector: v = vocab.intern(def.id, rec.sector); break;
            case MetaSource::state_region: v = vocab.intern(def.id, rec.state_region); break;
            case MetaSource::report_year: v = rec.report_year; break;
            case MetaSource::none: throw config_error("metadata feature without source: " + def.id);
            }
        } else if (def.kind == FeatureKind::sector_relative) {
            auto base = eval_expr(def.expr, env);
            if (base) {
                const auto* cell = stats.lookup(rec.sector, rec.report_year, def.id);
                if (cell && cell->count > 0) v = *base - cell->mean;
            }
        } else {
            v = eval_expr(def.expr, env);
        }
        if (v) {
            out.values[j] = *v;
            out.present[j] = 1;
        }
    }
    return out;
}

FeatureTable featurize(const data::Panel& panel, const labeling::HorizonDataset& ds,
                       const Catalog& catalog, const SectorYearStats& stats, CategoryVocab& vocab) {
    FeatureTable table;
    table.feature_ids.reserve(catalog.size());
    for (const auto& def : catalog.defs()) table.feature_ids.push_back(def.id);
    table.rows.reserve(ds.rows.size());
    table.labels.reserve(ds.rows.size());

    for (const auto& row : ds.rows) {
        const auto& company = panel.companies.at(row.company_index);
        const auto& rec = company.records.at(row.record_index);
        const data::CompanyYearRecord* prev = nullptr;
        if (row.record_index > 0) {
            const auto& cand = company.records[row.record_index - 1];
            if (cand.report_year == rec.report_year - 1) prev = &cand;
        }
        table.rows.push_back(compute_features(rec, prev, panel.macro, stats, catalog, vocab));
        table.labels.push_back(row.label);
        table.company_ids.push_back(rec.company_id);
        table.years.push_back(rec.report_year);
    }
    return table;
}

} // namespace bankbench::features
