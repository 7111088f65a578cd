#include "bankbench/features/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "bankbench/core/error.hpp"

namespace bankbench::features {

namespace {

double median_of(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), v.begin() + mid);
    return (lo + hi) / 2.0;
}

} // namespace

PreprocessStats fit_preprocessor(const Catalog& catalog, const std::vector<FeatureVector>& train) {
    if (train.empty()) throw training_error("fit_preprocessor: no rows");
    std::size_t n = train.size();
    std::size_t w = catalog.size();
    for (const auto& row : train) {
        if (row.values.size() != w || row.present.size() != w)
            throw training_error("fit_preprocessor: row width mismatch");
    }

    PreprocessStats s;
    s.feature_ids.reserve(w);
    for (const auto& def : catalog.defs()) s.feature_ids.push_back(def.id);
    s.categorical.resize(w, 0);
    s.all_missing.resize(w, 0);
    s.median.assign(w, 0.0);
    s.mean.assign(w, 0.0);
    s.stddev.assign(w, 1.0);
    s.encoding.resize(w);
    s.reserved_code.assign(w, 0);

    for (std::size_t j = 0; j < w; ++j) {
        const auto& def = catalog.defs()[j];
        s.categorical[j] = def.categorical ? 1 : 0;

        std::vector<double> column;
        column.reserve(n);
        if (def.categorical) {
            auto& enc = s.encoding[j];
            for (const auto& row : train) {
                if (!row.present[j])
                    throw training_error("fit_preprocessor: missing categorical value in " + def.id);
                int vocab_id = static_cast<int>(row.values[j]);
                auto it = enc.find(vocab_id);
                int code;
                if (it == enc.end()) {
                    code = static_cast<int>(enc.size());
                    enc.emplace(vocab_id, code);
                } else {
                    code = it->second;
                }
                column.push_back(code);
            }
            s.reserved_code[j] = static_cast<int>(enc.size());
        } else {
            std::vector<double> observed;
            observed.reserve(n);
            for (const auto& row : train) {
                if (row.present[j]) observed.push_back(row.values[j]);
            }
            if (observed.empty()) {
                s.all_missing[j] = 1;
                s.median[j] = 0.0;
            } else {
                s.median[j] = median_of(observed);
            }
            for (const auto& row : train)
                column.push_back(row.present[j] ? row.values[j] : s.median[j]);
        }

        double m = 0.0;
        for (double v : column) m += v;
        m /= static_cast<double>(n);
        double var = 0.0;
        for (double v : column) var += (v - m) * (v - m);
        var /= static_cast<double>(n);
        double sd = std::sqrt(var);
        s.mean[j] = m;
        s.stddev[j] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

Matrix apply_preprocessor(const PreprocessStats& stats, const std::vector<FeatureVector>& rows,
                          ApplyMode mode) {
    std::size_t w = stats.feature_ids.size();
    Matrix out(rows.size(), w);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.values.size() != w || row.present.size() != w)
            throw training_error("apply_preprocessor: row width mismatch");
        auto dst = out.row(i);
        for (std::size_t j = 0; j < w; ++j) {
            double v;
            if (stats.categorical[j]) {
                if (!row.present[j])
                    throw training_error("apply_preprocessor: missing categorical value in " +
                                         stats.feature_ids[j]);
                if (mode == ApplyMode::raw_imputed) {
                    v = row.values[j];
                } else {
                    auto it = stats.encoding[j].find(static_cast<int>(row.values[j]));
                    v = it == stats.encoding[j].end() ? stats.reserved_code[j] : it->second;
                }
            } else {
                v = row.present[j] ? row.values[j] : stats.median[j];
            }
            if (mode == ApplyMode::standardized) v = (v - stats.mean[j]) / stats.stddev[j];
            dst[j] = v;
        }
    }
    return out;
}

nlohmann::json preprocess_to_json(const PreprocessStats& stats) {
    nlohmann::json encodings = nlohmann::json::array();
    for (const auto& enc : stats.encoding) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [vocab_id, code] : enc) pairs.push_back({vocab_id, code});
        encodings.push_back(pairs);
    }
    return nlohmann::json{{"feature_ids", stats.feature_ids}, {"categorical", stats.categorical},
                          {"all_missing", stats.all_missing}, {"median", stats.median},
                          {"mean", stats.mean},               {"stddev", stats.stddev},
                          {"encoding", encodings},            {"reserved_code", stats.reserved_code}};
}

PreprocessStats preprocess_from_json(const nlohmann::json& j) {
    PreprocessStats s;
    s.feature_ids = j.at("feature_ids").get<std::vector<std::string>>();
    s.categorical = j.at("categorical").get<std::vector<std::uint8_t>>();
    s.all_missing = j.at("all_missing").get<std::vector<std::uint8_t>>();
    s.median = j.at("median").get<std::vector<double>>();
    s.mean = j.at("mean").get<std::vector<double>>();
    s.stddev = j.at("stddev").get<std::vector<double>>();
    for (const auto& pairs : j.at("encoding")) {
        std::map<int, int> enc;
        for (const auto& pair : pairs) enc.emplace(pair.at(0).get<int>(), pair.at(1).get<int>());
        s.encoding.push_back(std::move(enc));
    }
    s.reserved_code = j.at("reserved_code").get<std::vector<int>>();
    const std::size_t w = s.feature_ids.size();
    if (s.categorical.size() != w || s.all_missing.size() != w || s.median.size() != w || s.mean.size() != w ||
        s.stddev.size() != w || s.encoding.size() != w || s.reserved_code.size() != w)
        throw parse_error("preprocess stats: inconsistent column counts");
    return s;
}

} // namespace bankbench::features
