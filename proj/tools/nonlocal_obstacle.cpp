#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlobs/errors.hpp"
#include "nlobs/experiment.hpp"
#include "nlobs/parallel.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal obstacle problem solver and free boundary diagnostics"};
    app.require_subcommand(1);
    auto* run = app.add_subcommand("run", "Run the stages of an experiment config");
    std::string config;
    std::string out;
    int threads = 1;
    std::vector<std::string> stages;
    run->add_option("config", config, "Experiment config (JSON)")->required();
    run->add_option("--out", out, "Output directory (default: the config's output entry)");
    run->add_option("--threads", threads, "Worker threads")->envname("NLOBS_THREADS")->check(CLI::PositiveNumber);
    run->add_option("--stage", stages, "Stage to run (repeatable; default: the config's stage list)")
        ->check(CLI::IsMember(nlobs::kStageNames));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!fs::exists(config)) throw nlobs::ConfigError("config file not found: " + config);
        nlobs::set_num_threads(threads);
        const auto cfg = nlobs::ExperimentConfig::load(config);
        const fs::path dir = out.empty() ? fs::path(cfg.output) : fs::path(out);
        const auto summary = nlobs::run_experiment(cfg, dir, stages);
        return summary.ok() ? 0 : 1;
    } catch (const nlobs::ConfigError& e) {
        std::cerr << "nonlocal-obstacle: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "nonlocal-obstacle: error: " << e.what() << "\n";
        return 3;
    }
}
