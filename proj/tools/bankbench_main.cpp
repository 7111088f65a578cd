#include <algorithm>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "bankbench/core/error.hpp"
#include "bankbench/pipeline/config.hpp"
#include "bankbench/pipeline/pipeline.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::vector<int> horizons;
    std::uint64_t seed = 0;
    bool force = false;
    bool mock_llm = false;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("-c,--config", opt.config_path, "run configuration JSON")->required();
    cmd->add_option("-o,--out", opt.out_dir, "override the output directory");
    cmd->add_option("--horizon", opt.horizons, "override the horizon list (repeatable)");
    cmd->add_option("--seed", opt.seed, "override the run seed");
    cmd->add_flag("--force", opt.force, "rerun stages even when inputs are unchanged");
    cmd->add_flag("--mock-llm", opt.mock_llm, "route LLM queries to the built-in mock server");
    cmd->add_flag("-q,--quiet", opt.quiet, "suppress progress output");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"corporate bankruptcy prediction benchmark"};
    app.set_version_flag("--version", "bankbench 0.1.0");
    app.require_subcommand(1);

    CliOptions opt;
    const std::vector<std::pair<std::string, std::string>> stages = {
        {"generate", "build or ingest the company-year panel"},
        {"label", "apply the distress rule at each horizon"},
        {"featurize", "compute the feature matrix at each horizon"},
        {"train", "grid-search and fit the classical models"},
        {"evaluate", "score fitted models on the test split"},
        {"llm-run", "query the LLM endpoint and score its answers"},
        {"report", "merge per-horizon results into summary tables"},
        {"run", "run every stage in order"},
    };
    for (const auto& [name, description] : stages) add_common(app.add_subcommand(name, description), opt);

    CLI11_PARSE(app, argc, argv);
    CLI::App* active = app.get_subcommands().front();

    try {
        auto config = bankbench::pipeline::load_run_config(opt.config_path);
        if (!opt.out_dir.empty()) config.out_dir = opt.out_dir;
        if (active->count("--seed") > 0) {
            config.seed = opt.seed;
            config.data.synth.seed = opt.seed;
            config.split.seed = opt.seed;
        }
        if (!opt.horizons.empty()) {
            std::sort(opt.horizons.begin(), opt.horizons.end());
            opt.horizons.erase(std::unique(opt.horizons.begin(), opt.horizons.end()), opt.horizons.end());
            for (int h : opt.horizons)
                if (h < 0 || h > 4) throw bankbench::config_error("--horizon must be between 0 and 4");
            config.horizons = opt.horizons;
        }
        if (opt.mock_llm) config.llm.mock = true;

        bankbench::pipeline::Pipeline pipeline(std::move(config), opt.force, opt.quiet);
        const std::string stage = active->get_name();
        if (stage == "generate") pipeline.generate();
        else if (stage == "label") pipeline.label();
        else if (stage == "featurize") pipeline.featurize();
        else if (stage == "train") pipeline.train();
        else if (stage == "evaluate") pipeline.evaluate();
        else if (stage == "llm-run") pipeline.llm_run();
        else if (stage == "report") pipeline.report();
        else pipeline.run_all();
    } catch (const std::exception& e) {
        std::cerr << "bankbench: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
