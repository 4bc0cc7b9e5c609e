// Command-line front end: config ingestion, experiment orchestration, and
// report/CSV emission. Exit codes: 0 all verdicts PASS, 1 config error,
// 2 infeasible covering, 3 completed with failing verdicts.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "taucover/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"taucover: covering-based timelike measure estimation"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (overrides config and TAUCOVER_OUT)");
    run->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--threads", threads, "worker threads (reserved; runs are sequential)");

    CLI11_PARSE(app, argc, argv);

    std::optional<std::string> out_override;
    if (!out_dir.empty())
        out_override = out_dir;
    else if (const char* env = std::getenv("TAUCOVER_OUT"); env && *env)
        out_override = std::string(env);

    try {
        const auto cfg = taucover::ExperimentConfig::from_file(config_path);
        const auto result = taucover::run_experiment(
            cfg, out_override, seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt,
            threads);
        for (const auto& v : result.report.verdicts)
            std::cout << (v.pass ? "PASS " : "FAIL ") << v.check << " (" << v.detail << ")\n";
        if (result.exit_code == 2)
            std::cerr << "infeasible: " << result.report.payload.dump() << "\n";
        return result.exit_code;
    } catch (const taucover::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
