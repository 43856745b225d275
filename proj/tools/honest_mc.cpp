// honest_mc: run, validate and demo Monte Carlo experiments on times of
// maximum of nonnegative local martingales.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "honest/config.hpp"
#include "honest/experiment.hpp"

namespace {

struct Overrides {
    std::optional<std::string> seed, paths, step, horizon, out, tests, generator, threads;
    std::optional<bool> tail_completion;
    std::optional<bool> bridge;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Master seed");
        cmd->add_option("--paths", paths, "Number of simulated paths");
        cmd->add_option("--step", step, "Grid step (decimal or 2^-k)");
        cmd->add_option("--horizon", horizon, "Simulation horizon");
        cmd->add_option("--out", out, "Output directory");
        cmd->add_option("--tests", tests, "Comma-separated test names");
        cmd->add_option("--generator", generator, "gbm | brownian | exp_jump");
        cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
        cmd->add_flag("--tail-completion,!--no-tail-completion", tail_completion,
                      "Complete the supremum beyond the horizon");
        cmd->add_flag("--bridge-correction,!--no-bridge-correction", bridge,
                      "Sample Brownian-bridge maxima between grid points");
    }

    std::map<std::string, std::string> settings() const {
        std::map<std::string, std::string> s;
        auto put = [&s](const char* key, const std::optional<std::string>& v) {
            if (v) s[key] = *v;
        };
        put("seed", seed);
        put("paths", paths);
        put("step", step);
        put("horizon", horizon);
        put("out", out);
        put("tests", tests);
        put("generator", generator);
        put("threads", threads);
        if (tail_completion) s["tail_completion"] = *tail_completion ? "true" : "false";
        if (bridge) s["bridge_correction"] = *bridge ? "true" : "false";
        return s;
    }
};

honest::ExperimentConfig build_config(const std::string& file, const Overrides& overrides) {
    honest::ExperimentConfig config = file.empty() ? honest::ExperimentConfig{} : honest::load_config_file(file);
    honest::apply_settings(config, overrides.settings());
    return config;
}

int run_experiment(const honest::ExperimentConfig& config) {
    const honest::RunOutcome outcome = honest::run(config);
    for (const auto& r : outcome.reports) {
        std::printf("%s  %-44s statistic=%-12.6g threshold=%-12.6g n=%zu%s\n", r.passed ? "PASS" : "FAIL",
                    r.test_name.c_str(), r.statistic, r.threshold, r.sample_size,
                    r.tail_completion_used ? "  [tail completion]" : "");
    }
    for (const auto& f : outcome.written) std::printf("wrote %s\n", f.string().c_str());
    return outcome.all_passed ? honest::kExitPass : honest::kExitTestFailure;
}

}  // namespace

int main(int argc, char** argv) {
    honest::keep_large_allocations_in_heap();
    CLI::App app{"Monte Carlo verification of honest times and times of maximum"};
    app.require_subcommand(1);

    std::string run_file;
    Overrides run_overrides;
    auto* run_cmd = app.add_subcommand("run", "Simulate, decompose and test; write reports");
    run_cmd->add_option("config", run_file, "key = value config file");
    run_overrides.attach(run_cmd);

    std::string validate_file;
    Overrides validate_overrides;
    auto* validate_cmd = app.add_subcommand("validate", "Check a config and list every problem");
    validate_cmd->add_option("config", validate_file, "key = value config file");
    validate_overrides.attach(validate_cmd);

    Overrides demo_overrides;
    auto* demo_cmd = app.add_subcommand("demo-counterexample",
                                        "Jump counterexample e^t 1{tau > t}: supremum never attained");
    demo_overrides.attach(demo_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : honest::kExitConfigError;
    }

    try {
        if (*run_cmd) {
            return run_experiment(build_config(run_file, run_overrides));
        }
        if (*validate_cmd) {
            const auto config = build_config(validate_file, validate_overrides);
            const auto problems = honest::validate(config);
            for (const auto& p : problems) std::printf("%s\n", p.c_str());
            if (problems.empty()) std::printf("config ok\n");
            return problems.empty() ? honest::kExitPass : honest::kExitConfigError;
        }
        honest::ExperimentConfig config;
        config.family = honest::Family::exp_jump_counterexample;
        config.path_count = 1000;
        config.bridge_correction = false;
        config.output_dir = "counterexample_out";
        config.tests = {"uniqueness_and_z_one", "doob_tail"};
        honest::apply_settings(config, demo_overrides.settings());
        return run_experiment(config);
    } catch (const honest::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return honest::kExitConfigError;
    } catch (const honest::IoError& e) {
        std::cerr << e.what() << '\n';
        return honest::kExitIoError;
    }
}
