#include "bankbench/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "bankbench/core/error.hpp"
#include "bankbench/core/matrix.hpp"
#include "bankbench/core/numeric.hpp"
#include "bankbench/data/csv.hpp"
#include "bankbench/eval/metrics.hpp"
#include "bankbench/eval/report.hpp"
#include "bankbench/eval/timing.hpp"
#include "bankbench/features/catalog.hpp"
#include "bankbench/features/engine.hpp"
#include "bankbench/features/preprocess.hpp"
#include "bankbench/labeling/horizon.hpp"
#include "bankbench/llm/mock_server.hpp"
#include "bankbench/llm/profile.hpp"
#include "bankbench/llm/prompt.hpp"
#include "bankbench/models/gbt.hpp"
#include "bankbench/models/grid.hpp"
#include "bankbench/models/serialize.hpp"
#include "bankbench/scaling/ensemble.hpp"
#include "bankbench/scaling/leaf.hpp"
#include "bankbench/scaling/partition.hpp"

namespace bankbench::pipeline {

namespace {

std::string h_dir(int horizon) { return "h" + std::to_string(horizon); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw pipeline_error("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
    write_text(path, value.dump(2) + "\n");
}

void write_csv_artifact(const std::filesystem::path& path, const data::CsvTable& table) {
    std::filesystem::create_directories(path.parent_path());
    data::write_csv(path, table);
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pipeline_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto parsed = nlohmann::json::parse(buffer.str(), nullptr, false);
    if (parsed.is_discarded()) throw pipeline_error(path.string() + " is not valid JSON");
    return parsed;
}

void write_feature_matrix(const std::filesystem::path& path, const features::FeatureTable& table) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw pipeline_error("cannot write " + path.string());
    out << "company_id,report_year,label";
    for (const auto& id : table.feature_ids) out << ',' << id;
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << table.company_ids[r] << ',' << table.years[r] << ',' << table.labels[r];
        const auto& row = table.rows[r];
        for (std::size_t j = 0; j < row.values.size(); ++j) {
            out << ',';
            if (row.present[j]) out << format_double(row.values[j]);
        }
        out << '\n';
    }
}

features::FeatureTable read_feature_matrix(const std::filesystem::path& path, const features::Catalog& catalog) {
    data::CsvTable csv = data::read_csv(path);
    if (csv.header.size() != 3 + catalog.size() || csv.header[0] != "company_id" ||
        csv.header[1] != "report_year" || csv.header[2] != "label")
        throw pipeline_error(path.string() + ": unexpected matrix header");
    for (std::size_t j = 0; j < catalog.size(); ++j) {
        if (csv.header[3 + j] != catalog.defs()[j].id)
            throw pipeline_error(path.string() + ": column " + csv.header[3 + j] +
                                 " does not match the feature catalog (rerun `bankbench featurize`)");
    }

    features::FeatureTable table;
    for (const auto& def : catalog.defs()) table.feature_ids.push_back(def.id);
    const std::size_t w = catalog.size();
    table.rows.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        auto year = parse_int(row[1]);
        auto label = parse_int(row[2]);
        if (!year || !label) throw pipeline_error(path.string() + ": malformed matrix row");
        table.company_ids.push_back(row[0]);
        table.years.push_back(static_cast<int>(*year));
        table.labels.push_back(static_cast<int>(*label));
        features::FeatureVector fv;
        fv.values.assign(w, 0.0);
        fv.present.assign(w, 0);
        for (std::size_t j = 0; j < w; ++j) {
            const std::string& cell = row[3 + j];
            if (cell.empty()) continue;
            auto value = parse_double(cell);
            if (!value) throw pipeline_error(path.string() + ": malformed value in column " + csv.header[3 + j]);
            fv.values[j] = *value;
            fv.present[j] = 1;
        }
        table.rows.push_back(std::move(fv));
    }
    return table;
}

std::vector<features::FeatureVector> gather_fv(const std::vector<features::FeatureVector>& rows,
                                               const std::vector<std::size_t>& idx) {
    std::vector<features::FeatureVector> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(rows[i]);
    return out;
}

std::vector<int> gather_labels(const std::vector<int>& labels, const std::vector<std::size_t>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(labels[i]);
    return out;
}

models::GridSpec preset_for(const std::string& name) {
    if (name == "logreg") return models::GridSpec::logreg_default();
    if (name == "xgboost") return models::GridSpec::gbt_xgboost();
    if (name == "lightgbm") return models::GridSpec::gbt_lightgbm();
    if (name == "catboost") return models::GridSpec::gbt_catboost();
    if (name == "mlp") return models::GridSpec::mlp_default();
    throw config_error("unknown model \"" + name + "\"");
}

eval::ModelEvalResult parse_model_result(const nlohmann::json& j, int horizon) {
    eval::ModelEvalResult r;
    r.model = j.at("model").get<std::string>();
    r.horizon = horizon;
    r.threshold = j.at("threshold").get<double>();
    r.confusion.tp = j.at("tp").get<long long>();
    r.confusion.fp = j.at("fp").get<long long>();
    r.confusion.tn = j.at("tn").get<long long>();
    r.confusion.fn = j.at("fn").get<long long>();
    r.confusion.accuracy = j.at("accuracy").get<double>();
    r.confusion.precision = j.at("precision").get<double>();
    r.confusion.recall = j.at("recall").get<double>();
    r.confusion.f1 = j.at("f1").get<double>();
    r.roc_auc = j.at("roc_auc").get<double>();
    r.evaluated = j.at("evaluated").get<long long>();
    r.parse_failures = j.at("parse_failures").get<long long>();
    return r;
}

nlohmann::json model_result_json(const eval::ModelEvalResult& r) {
    return nlohmann::json{{"model", r.model},
                          {"threshold", r.threshold},
                          {"accuracy", r.confusion.accuracy},
                          {"precision", r.confusion.precision},
                          {"recall", r.confusion.recall},
                          {"f1", r.confusion.f1},
                          {"roc_auc", r.roc_auc},
                          {"tp", r.confusion.tp},
                          {"fp", r.confusion.fp},
                          {"tn", r.confusion.tn},
                          {"fn", r.confusion.fn},
                          {"evaluated", r.evaluated},
                          {"parse_failures", r.parse_failures}};
}

} // namespace

Pipeline::Pipeline(RunConfig config, bool force, bool quiet)
    : cfg_(std::move(config)),
      force_(force),
      quiet_(quiet),
      out_(cfg_.out_dir),
      lock_(out_),
      snapshot_(config_snapshot(cfg_)),
      manifest_(Manifest::load_or_create(out_, snapshot_)) {}

void Pipeline::note(const std::string& line) const {
    if (!quiet_) std::cout << line << "\n";
}

nlohmann::json Pipeline::section_inputs(const std::vector<std::string>& keys) const {
    nlohmann::json subset;
    for (const auto& key : keys) subset[key] = snapshot_.at(key);
    return nlohmann::json{{"config", bytes_hash(subset.dump())}};
}

std::string Pipeline::require_artifact(const std::string& rel_path, const std::string& producer) const {
    const auto path = full(rel_path);
    if (!std::filesystem::exists(path))
        throw pipeline_error("missing artifact " + rel_path + "; run `bankbench " + producer + "` first");
    return artifact_hash(path);
}

void Pipeline::generate() {
    nlohmann::json inputs = section_inputs({"seed", "data"});
    if (cfg_.data.source == "csv") {
        inputs["source_panel"] = artifact_hash(cfg_.data.panel_csv);
        if (!cfg_.data.macro_csv.empty()) inputs["source_macro"] = artifact_hash(cfg_.data.macro_csv);
    }
    if (!force_ && manifest_.stage_unchanged("generate", inputs)) {
        note("[generate] unchanged, skipping");
        return;
    }
    manifest_.stage_started("generate", inputs);

    data::Panel panel;
    if (cfg_.data.source == "synthetic") {
        panel = data::generate_panel(cfg_.data.synth);
    } else {
        panel = data::ingest_panel_csv(cfg_.data.panel_csv);
        if (!cfg_.data.macro_csv.empty())
            data::attach_macro(panel, data::ingest_macro_csv(cfg_.data.macro_csv));
    }
    write_csv_artifact(full("data/panel.csv"), data::panel_to_csv(panel));
    write_csv_artifact(full("data/macro.csv"), data::macro_to_csv(panel.macro));

    manifest_.stage_finished("generate", {"data/panel.csv", "data/macro.csv"});
    note("[generate] " + std::to_string(panel.companies.size()) + " companies, " +
         std::to_string(panel.record_count()) + " company-years");
}

void Pipeline::label() {
    nlohmann::json inputs = section_inputs({"rule", "horizons"});
    inputs["data/panel.csv"] = require_artifact("data/panel.csv", "generate");
    if (!force_ && manifest_.stage_unchanged("label", inputs)) {
        note("[label] unchanged, skipping");
        return;
    }
    manifest_.stage_started("label", inputs);

    data::Panel panel = data::ingest_panel_csv(full("data/panel.csv"));
    std::vector<std::string> artifacts;
    for (int h : cfg_.horizons) {
        auto ds = labeling::build_horizon_dataset(panel, h, cfg_.rule);
        auto counts = labeling::summarize_counts(ds);

        data::CsvTable rows;
        rows.header = {"company_id", "report_year", "label"};
        for (const auto& row : ds.rows) {
            const auto& rec = panel.companies[row.company_index].records[row.record_index];
            rows.rows.push_back({rec.company_id, std::to_string(rec.report_year), std::to_string(row.label)});
        }
        const std::string dir = "label/" + h_dir(h);
        write_csv_artifact(full(dir + "/rows.csv"), rows);
        write_json(full(dir + "/meta.json"),
                   nlohmann::json{{"horizon", h},
                                  {"rule",
                                   {{"equity_ta_max", cfg_.rule.equity_ta_max},
                                    {"ebitda_ta_max", cfg_.rule.ebitda_ta_max},
                                    {"current_ratio_max", cfg_.rule.current_ratio_max},
                                    {"censor_year", cfg_.rule.censor_year}}},
                                  {"rows", counts.total},
                                  {"positives", counts.positive},
                                  {"negatives", counts.negative}});
        artifacts.push_back(dir + "/rows.csv");
        artifacts.push_back(dir + "/meta.json");
        note("[label] h=" + std::to_string(h) + ": " + std::to_string(counts.total) + " rows, " +
             std::to_string(counts.positive) + " positives");
    }
    manifest_.stage_finished("label", artifacts);
}

void Pipeline::featurize() {
    nlohmann::json inputs = section_inputs({"rule", "horizons", "data"});
    inputs["data/panel.csv"] = require_artifact("data/panel.csv", "generate");
    for (int h : cfg_.horizons)
        inputs["label/" + h_dir(h) + "/meta.json"] =
            require_artifact("label/" + h_dir(h) + "/meta.json", "label");
    if (!force_ && manifest_.stage_unchanged("featurize", inputs)) {
        note("[featurize] unchanged, skipping");
        return;
    }
    manifest_.stage_started("featurize", inputs);

    data::Panel panel = data::ingest_panel_csv(full("data/panel.csv"));
    data::attach_macro(panel, data::ingest_macro_csv(full("data/macro.csv")));
    auto catalog = features::Catalog::standard(cfg_.data.include_operational_status);
    auto stats = features::compute_sector_year_stats(panel, catalog);
    features::CategoryVocab vocab;

    data::CsvTable cat_csv;
    cat_csv.header = {"id", "name", "kind", "formula", "categorical"};
    for (const auto& def : catalog.defs())
        cat_csv.rows.push_back(
            {def.id, def.name, features::kind_name(def.kind), def.formula, def.categorical ? "1" : "0"});
    write_csv_artifact(full("features/catalog.csv"), cat_csv);

    std::vector<std::string> artifacts{"features/catalog.csv"};
    for (int h : cfg_.horizons) {
        auto ds = labeling::build_horizon_dataset(panel, h, cfg_.rule);
        auto counts = labeling::summarize_counts(ds);
        auto meta = read_json(full("label/" + h_dir(h) + "/meta.json"));
        if (meta.at("rows").get<std::size_t>() != counts.total ||
            meta.at("positives").get<std::size_t>() != counts.positive)
            throw pipeline_error("label artifacts disagree with the panel for h=" + std::to_string(h) +
                                 "; rerun `bankbench label`");

        auto table = features::featurize(panel, ds, catalog, stats, vocab);
        const std::string rel = "features/" + h_dir(h) + "/matrix.csv";
        write_feature_matrix(full(rel), table);
        artifacts.push_back(rel);
        note("[featurize] h=" + std::to_string(h) + ": " + std::to_string(table.rows.size()) + " rows x " +
             std::to_string(table.feature_ids.size()) + " features");
    }
    manifest_.stage_finished("featurize", artifacts);
}

void Pipeline::train() {
    nlohmann::json inputs = section_inputs({"seed", "split", "models", "gbt_max_bins"});
    for (int h : cfg_.horizons)
        inputs["features/" + h_dir(h) + "/matrix.csv"] =
            require_artifact("features/" + h_dir(h) + "/matrix.csv", "featurize");
    if (!force_ && manifest_.stage_unchanged("train", inputs)) {
        note("[train] unchanged, skipping");
        return;
    }
    manifest_.stage_started("train", inputs);

    auto catalog = features::Catalog::standard(cfg_.data.include_operational_status);
    std::vector<std::string> artifacts;
    for (int h : cfg_.horizons) {
        auto table = read_feature_matrix(full("features/" + h_dir(h) + "/matrix.csv"), catalog);
        auto split = eval::stratified_split(table.labels, cfg_.split);
        auto train_fv = gather_fv(table.rows, split.train);
        auto pre = features::fit_preprocessor(catalog, train_fv);
        Matrix x_train = features::apply_preprocessor(pre, train_fv, features::ApplyMode::standardized);
        Matrix x_val = features::apply_preprocessor(pre, gather_fv(table.rows, split.validation),
                                                    features::ApplyMode::standardized);
        auto y_train = gather_labels(table.labels, split.train);
        auto y_val = gather_labels(table.labels, split.validation);

        const std::string dir = "models/" + h_dir(h);
        write_json(full(dir + "/preprocess.json"), features::preprocess_to_json(pre));
        artifacts.push_back(dir + "/preprocess.json");

        for (const auto& name : cfg_.models) {
            models::GridSpec spec = preset_for(name);
            spec.seed = cfg_.seed;
            if (spec.family == models::ModelFamily::gbt) spec.gbt_max_bins = cfg_.gbt_max_bins;
            auto result = models::grid_search(spec, x_train, y_train, x_val, y_val);

            write_json(full(dir + "/" + name + ".json"),
                       nlohmann::json{{"artifact_version", 1},
                                      {"model", name},
                                      {"horizon", h},
                                      {"params", result.best.params},
                                      {"threshold", result.best.threshold},
                                      {"validation_f1", result.best.validation_f1},
                                      {"fitted", result.model->to_json()}});
            data::CsvTable grid;
            grid.header = {"params", "validation_f1", "threshold"};
            for (const auto& cand : result.table)
                grid.rows.push_back(
                    {cand.params.dump(), format_double(cand.validation_f1), format_double(cand.threshold)});
            write_csv_artifact(full(dir + "/" + name + "_grid.csv"), grid);
            artifacts.push_back(dir + "/" + name + ".json");
            artifacts.push_back(dir + "/" + name + "_grid.csv");
            note("[train] h=" + std::to_string(h) + " " + name +
                 ": best f1=" + format_fixed(result.best.validation_f1, 4) + " params=" +
                 result.best.params.dump());
        }
    }
    manifest_.stage_finished("train", artifacts);
}

void Pipeline::evaluate() {
    nlohmann::json inputs = section_inputs({"seed", "split", "models", "scaling", "timing"});
    for (int h : cfg_.horizons) {
        const std::string hd = h_dir(h);
        inputs["features/" + hd + "/matrix.csv"] =
            require_artifact("features/" + hd + "/matrix.csv", "featurize");
        inputs["models/" + hd + "/preprocess.json"] =
            require_artifact("models/" + hd + "/preprocess.json", "train");
        for (const auto& name : cfg_.models)
            inputs["models/" + hd + "/" + name + ".json"] =
                require_artifact("models/" + hd + "/" + name + ".json", "train");
    }
    if (!force_ && manifest_.stage_unchanged("evaluate", inputs)) {
        note("[evaluate] unchanged, skipping");
        return;
    }
    manifest_.stage_started("evaluate", inputs);

    auto catalog = features::Catalog::standard(cfg_.data.include_operational_status);
    std::vector<std::string> artifacts;
    for (int h : cfg_.horizons) {
        const std::string hd = h_dir(h);
        auto table = read_feature_matrix(full("features/" + hd + "/matrix.csv"), catalog);
        auto split = eval::stratified_split(table.labels, cfg_.split);
        auto pre = features::preprocess_from_json(read_json(full("models/" + hd + "/preprocess.json")));
        Matrix x_test = features::apply_preprocessor(pre, gather_fv(table.rows, split.test),
                                                     features::ApplyMode::standardized);
        auto y_test = gather_labels(table.labels, split.test);

        std::vector<eval::ModelEvalResult> results;
        std::vector<std::pair<std::string, std::unique_ptr<models::ModelAdapter>>> fitted;
        for (const auto& name : cfg_.models) {
            auto artifact = read_json(full("models/" + hd + "/" + name + ".json"));
            auto model = models::model_from_json(artifact.at("fitted"));
            auto scores = model->predict_proba(x_test);
            eval::ModelEvalResult r;
            r.model = name;
            r.horizon = h;
            r.threshold = artifact.at("threshold").get<double>();
            r.confusion = eval::confusion_metrics(scores, y_test, r.threshold);
            r.roc_auc = eval::roc_auc(scores, y_test);
            r.evaluated = static_cast<long long>(y_test.size());
            results.push_back(r);
            fitted.emplace_back(name, std::move(model));
        }

        if (cfg_.scaling.enabled) {
            Matrix x_train = features::apply_preprocessor(pre, gather_fv(table.rows, split.train),
                                                          features::ApplyMode::standardized);
            Matrix x_val = features::apply_preprocessor(pre, gather_fv(table.rows, split.validation),
                                                        features::ApplyMode::standardized);
            auto y_train = gather_labels(table.labels, split.train);
            auto y_val = gather_labels(table.labels, split.validation);
            scaling::LeafFactory factory = [this]() -> std::unique_ptr<scaling::LeafLearner> {
                scaling::KnnParams kp;
                kp.k = cfg_.scaling.knn_k;
                kp.capacity = cfg_.scaling.leaf_capacity;
                return std::make_unique<scaling::KnnLeafLearner>(kp);
            };
            for (const auto& strategy : cfg_.scaling.strategies) {
                eval::ModelEvalResult r;
                r.horizon = h;
                if (strategy == "partition") {
                    scaling::PartitionConfig pc;
                    pc.min_samples_split = cfg_.scaling.min_samples_split;
                    pc.seed = cfg_.seed;
                    scaling::PartitionedModel model;
                    model.fit(x_train, y_train, factory, pc);
                    auto cal = eval::calibrate_threshold(model.predict_proba(x_val), y_val);
                    auto scores = model.predict_proba(x_test);
                    r.model = "partition-knn";
                    r.threshold = cal.threshold;
                    r.confusion = eval::confusion_metrics(scores, y_test, cal.threshold);
                    r.roc_auc = eval::roc_auc(scores, y_test);
                    r.evaluated = static_cast<long long>(y_test.size());
                    write_json(full("eval/" + hd + "/partition_report.json"), model.partition_report());
                    artifacts.push_back("eval/" + hd + "/partition_report.json");
                } else {
                    scaling::EnsembleConfig ec;
                    ec.m = cfg_.scaling.ensemble_m;
                    ec.n = cfg_.scaling.ensemble_n;
                    ec.seed = cfg_.seed;
                    scaling::BootstrapEnsemble ensemble;
                    ensemble.fit(x_train, y_train, factory, ec);
                    auto cal =
                        eval::calibrate_threshold(ensemble.predict(x_val, 0.5).mean_probability, y_val);
                    auto pred = ensemble.predict(x_test, cal.threshold);
                    std::vector<double> votes(pred.votes.begin(), pred.votes.end());
                    r.model = "ensemble-knn-" + std::to_string(cfg_.scaling.ensemble_m);
                    r.threshold = cal.threshold;
                    r.confusion = eval::confusion_metrics(votes, y_test, 0.5);
                    r.roc_auc = eval::roc_auc(pred.mean_probability, y_test);
                    r.evaluated = static_cast<long long>(y_test.size());
                }
                results.push_back(r);
            }
        }

        auto report = eval::build_report(h, results);
        write_json(full("eval/" + hd + "/report.json"), eval::report_json(report));
        write_text(full("eval/" + hd + "/report.csv"), eval::report_csv({report}));
        artifacts.push_back("eval/" + hd + "/report.json");
        artifacts.push_back("eval/" + hd + "/report.csv");

        if (cfg_.timing.enabled) {
            const std::size_t rows = std::min(cfg_.timing.batch_size, x_test.rows());
            Matrix batch(rows, x_test.cols());
            for (std::size_t r = 0; r < rows; ++r) {
                auto src = x_test.row(r);
                std::copy(src.begin(), src.end(), batch.row(r).begin());
            }
            nlohmann::json timed = nlohmann::json::array();
            for (const auto& [name, model] : fitted) {
                const models::ModelAdapter* m = model.get();
                auto report_t = eval::time_inference(
                    [m](const Matrix& x) { return m->predict_proba(x); }, batch, cfg_.timing.runs,
                    cfg_.timing.warmup);
                timed.push_back(nlohmann::json{{"model", name},
                                               {"batch_size", report_t.batch_size},
                                               {"runs", report_t.runs},
                                               {"warmup", report_t.warmup},
                                               {"run_seconds", report_t.run_seconds},
                                               {"mean_seconds", report_t.mean_seconds},
                                               {"std_seconds", report_t.std_seconds},
                                               {"rows_per_second", report_t.rows_per_second},
                                               {"hardware_note", report_t.hardware_note}});
            }
            write_json(full("eval/" + hd + "/timing.json"), nlohmann::json{{"models", timed}});
            artifacts.push_back("eval/" + hd + "/timing.json");
        }
        note("[evaluate] h=" + std::to_string(h) + ": best f1 " + report.best_f1_model + ", best auc " +
             report.best_auc_model);
    }
    manifest_.stage_finished("evaluate", artifacts);
}

void Pipeline::llm_run() {
    if (!cfg_.llm.enabled) {
        nlohmann::json inputs{{"disabled", true}};
        if (!force_ && manifest_.stage_unchanged("llm-run", inputs)) {
            note("[llm-run] disabled, skipping");
            return;
        }
        manifest_.stage_started("llm-run", inputs);
        manifest_.stage_finished("llm-run", {});
        note("[llm-run] disabled in config");
        return;
    }

    nlohmann::json inputs = section_inputs({"seed", "split", "llm", "gbt_max_bins"});
    inputs["data/panel.csv"] = require_artifact("data/panel.csv", "generate");
    for (int h : cfg_.horizons)
        inputs["features/" + h_dir(h) + "/matrix.csv"] =
            require_artifact("features/" + h_dir(h) + "/matrix.csv", "featurize");
    if (!force_ && manifest_.stage_unchanged("llm-run", inputs)) {
        note("[llm-run] unchanged, skipping");
        return;
    }
    manifest_.stage_started("llm-run", inputs);

    data::Panel panel = data::ingest_panel_csv(full("data/panel.csv"));
    std::map<std::pair<std::string, int>, const data::CompanyYearRecord*> record_of;
    for (const auto& company : panel.companies)
        for (const auto& rec : company.records) record_of[{rec.company_id, rec.report_year}] = &rec;

    std::unique_ptr<llm::MockLlmServer> mock;
    llm::EndpointConfig endpoint = cfg_.llm.endpoint;
    if (cfg_.llm.mock) {
        mock = std::make_unique<llm::MockLlmServer>();
        mock->start();
        endpoint.base_url = mock->base_url();
        endpoint.api_key_env.clear();
    }
    const llm::ParseMode parse_mode =
        cfg_.llm.parse_mode == "strict" ? llm::ParseMode::strict : llm::ParseMode::lenient;
    const auto groups = llm::default_prompt_groups();
    auto catalog = features::Catalog::standard(cfg_.data.include_operational_status);

    std::vector<std::string> artifacts;
    for (int h : cfg_.horizons) {
        const std::string hd = h_dir(h);
        auto table = read_feature_matrix(full("features/" + hd + "/matrix.csv"), catalog);
        auto split = eval::stratified_split(table.labels, cfg_.split);
        auto train_fv = gather_fv(table.rows, split.train);
        auto pre = features::fit_preprocessor(catalog, train_fv);
        Matrix raw_all = features::apply_preprocessor(pre, table.rows, features::ApplyMode::raw_imputed);

        auto serialize_row = [&](std::size_t row) {
            auto it = record_of.find({table.company_ids[row], table.years[row]});
            if (it == record_of.end())
                throw pipeline_error("matrix row " + std::to_string(row) +
                                     " references a company-year absent from the panel");
            auto span = raw_all.row(row);
            return llm::serialize_company(*it->second, {span.begin(), span.end()}, pre.feature_ids, groups);
        };

        // Hard-example mining for ICL via a proxy GBT on the training split.
        std::vector<llm::IclExample> icl_examples;
        const bool wants_icl =
            std::find(cfg_.llm.modes.begin(), cfg_.llm.modes.end(), "icl") != cfg_.llm.modes.end();
        if (wants_icl) {
            models::GbtParams proxy_params;
            proxy_params.max_bins = cfg_.gbt_max_bins;
            models::GradientBoostedTrees proxy(proxy_params);
            Matrix x_train = features::apply_preprocessor(pre, train_fv, features::ApplyMode::standardized);
            Matrix x_val = features::apply_preprocessor(pre, gather_fv(table.rows, split.validation),
                                                        features::ApplyMode::standardized);
            proxy.fit(x_train, gather_labels(table.labels, split.train));
            auto val_scores = proxy.predict_proba(x_val);
            auto y_val = gather_labels(table.labels, split.validation);
            auto selection = llm::select_icl_examples(val_scores, y_val, cfg_.llm.icl_k);

            nlohmann::json selected = {{"k", cfg_.llm.icl_k},
                                       {"positives", nlohmann::json::array()},
                                       {"negatives", nlohmann::json::array()}};
            auto describe = [&](std::size_t val_index) {
                const std::size_t row = split.validation[val_index];
                return nlohmann::json{{"row", row},
                                      {"company_id", table.company_ids[row]},
                                      {"report_year", table.years[row]},
                                      {"label", table.labels[row]},
                                      {"proxy_score", val_scores[val_index]}};
            };
            for (auto i : selection.positive_rows) {
                icl_examples.push_back({serialize_row(split.validation[i]), 1});
                selected["positives"].push_back(describe(i));
            }
            for (auto i : selection.negative_rows) {
                icl_examples.push_back({serialize_row(split.validation[i]), 0});
                selected["negatives"].push_back(describe(i));
            }
            write_json(full("llm/" + hd + "/icl_examples.json"), selected);
            artifacts.push_back("llm/" + hd + "/icl_examples.json");
        }

        auto calib_rows = eval::stratified_subsample(table.labels, split.validation,
                                                     cfg_.llm.calibration_rows, cfg_.seed);
        auto test_rows =
            eval::stratified_subsample(table.labels, split.test, cfg_.llm.max_rows, cfg_.seed + 1);

        nlohmann::json mode_reports = nlohmann::json::array();
        for (const auto& mode_name : cfg_.llm.modes) {
            const llm::PromptMode mode =
                mode_name == "icl" ? llm::PromptMode::icl : llm::PromptMode::zero_shot;
            llm::PromptTemplate tmpl;
            tmpl.horizon = h;

            std::vector<std::size_t> rows = calib_rows;
            rows.insert(rows.end(), test_rows.begin(), test_rows.end());
            std::vector<std::string> prompts;
            prompts.reserve(rows.size());
            for (auto row : rows)
                prompts.push_back(llm::render_prompt(tmpl, serialize_row(row), mode, icl_examples));

            llm::QueryStats stats;
            auto exchanges = llm::query_endpoint(endpoint, prompts, parse_mode, &stats);

            std::string lines;
            auto record_exchange = [&](std::size_t i, const char* role) {
                const auto& ex = exchanges[i];
                const std::size_t row = rows[i];
                nlohmann::json line = {{"index", i},
                                       {"role", role},
                                       {"row", row},
                                       {"company_id", table.company_ids[row]},
                                       {"report_year", table.years[row]},
                                       {"label", table.labels[row]},
                                       {"prompt_fnv1a64", fnv1a64_hex(ex.prompt)},
                                       {"raw_response", ex.raw_response},
                                       {"transport_failed", ex.transport_failed},
                                       {"parsed_ok", ex.parsed_ok},
                                       {"pred_label", ex.label},
                                       {"probability", ex.probability},
                                       {"parse_mode", llm::parse_mode_name(ex.parse_mode_used)},
                                       {"latency_ms", ex.latency_ms},
                                       {"attempts", ex.attempts}};
                lines += line.dump();
                lines += '\n';
            };

            std::vector<double> calib_scores;
            std::vector<int> calib_labels;
            for (std::size_t i = 0; i < calib_rows.size(); ++i) {
                record_exchange(i, "calibration");
                if (exchanges[i].parsed_ok) {
                    calib_scores.push_back(exchanges[i].probability);
                    calib_labels.push_back(table.labels[rows[i]]);
                }
            }
            std::vector<double> test_scores;
            std::vector<int> test_labels;
            long long test_failures = 0;
            for (std::size_t i = calib_rows.size(); i < rows.size(); ++i) {
                record_exchange(i, "test");
                if (exchanges[i].parsed_ok) {
                    test_scores.push_back(exchanges[i].probability);
                    test_labels.push_back(table.labels[rows[i]]);
                } else {
                    test_failures += 1;
                }
            }
            const std::string rel = "llm/" + hd + "/exchanges_" + mode_name + ".jsonl";
            write_text(full(rel), lines);
            artifacts.push_back(rel);

            auto cal = eval::calibrate_threshold(calib_scores, calib_labels);
            eval::ModelEvalResult r;
            r.model = endpoint.model + "-" + (mode_name == "icl" ? "icl" : "zero-shot");
            r.horizon = h;
            r.threshold = cal.threshold;
            r.confusion = eval::confusion_metrics(test_scores, test_labels, cal.threshold);
            r.roc_auc = eval::roc_auc(test_scores, test_labels);
            r.evaluated = static_cast<long long>(test_scores.size());
            r.parse_failures = test_failures;

            auto profile = llm::analyze_probability_profile(test_scores);
            write_json(full("llm/" + hd + "/profile_" + mode_name + ".json"), llm::profile_json(profile));
            artifacts.push_back("llm/" + hd + "/profile_" + mode_name + ".json");

            nlohmann::json mode_report = model_result_json(r);
            mode_report["mode"] = mode_name;
            mode_report["in_flight_peak"] = stats.in_flight_peak;
            mode_report["transport_failures"] = stats.transport_failures;
            mode_report["calibration_rows"] = calib_rows.size();
            mode_report["test_rows"] = test_rows.size();
            mode_reports.push_back(mode_report);
            note("[llm-run] h=" + std::to_string(h) + " " + mode_name + ": f1 " +
                 format_fixed(r.confusion.f1, 4) + ", auc " + format_fixed(r.roc_auc, 4) +
                 ", parse failures " + std::to_string(test_failures));
        }
        write_json(full("llm/" + hd + "/report.json"),
                   nlohmann::json{{"horizon", h}, {"model", endpoint.model}, {"modes", mode_reports}});
        artifacts.push_back("llm/" + hd + "/report.json");
    }
    manifest_.stage_finished("llm-run", artifacts);
}

void Pipeline::report() {
    nlohmann::json inputs = section_inputs({"horizons", "models", "scaling", "llm"});
    for (int h : cfg_.horizons) {
        inputs["eval/" + h_dir(h) + "/report.json"] =
            require_artifact("eval/" + h_dir(h) + "/report.json", "evaluate");
        if (cfg_.llm.enabled)
            inputs["llm/" + h_dir(h) + "/report.json"] =
                require_artifact("llm/" + h_dir(h) + "/report.json", "llm-run");
    }
    if (!force_ && manifest_.stage_unchanged("report", inputs)) {
        note("[report] unchanged, skipping");
        return;
    }
    manifest_.stage_started("report", inputs);

    std::vector<eval::EvalReport> reports;
    std::string histogram_csv = "horizon,mode,bin_low,bin_high,count\n";
    for (int h : cfg_.horizons) {
        const std::string hd = h_dir(h);
        auto eval_doc = read_json(full("eval/" + hd + "/report.json"));
        std::vector<eval::ModelEvalResult> results;
        for (const auto& entry : eval_doc.at("models")) results.push_back(parse_model_result(entry, h));

        if (cfg_.llm.enabled) {
            auto llm_doc = read_json(full("llm/" + hd + "/report.json"));
            for (const auto& entry : llm_doc.at("modes")) {
                results.push_back(parse_model_result(entry, h));
                const std::string mode_name = entry.at("mode").get<std::string>();
                auto profile = read_json(full("llm/" + hd + "/profile_" + mode_name + ".json"));
                for (const auto& bin : profile.at("histogram"))
                    histogram_csv += std::to_string(h) + "," + mode_name + "," +
                                     format_fixed(bin.at("low").get<double>(), 2) + "," +
                                     format_fixed(bin.at("high").get<double>(), 2) + "," +
                                     std::to_string(bin.at("count").get<std::size_t>()) + "\n";
            }
        }
        reports.push_back(eval::build_report(h, std::move(results)));
    }

    write_text(full("report/summary.csv"), eval::report_csv(reports));
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& rep : reports) summary.push_back(eval::report_json(rep));
    write_json(full("report/summary.json"), summary);
    const std::string table = eval::render_table(reports);
    write_text(full("report/summary.txt"), table);

    std::vector<std::string> artifacts{"report/summary.csv", "report/summary.json", "report/summary.txt"};
    if (cfg_.llm.enabled) {
        write_text(full("report/llm_histogram.csv"), histogram_csv);
        artifacts.push_back("report/llm_histogram.csv");
    }
    manifest_.stage_finished("report", artifacts);
    note(table);
}

void Pipeline::run_all() {
    generate();
    label();
    featurize();
    train();
    evaluate();
    llm_run();
    report();
}

} // namespace bankbench::pipeline
