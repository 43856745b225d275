#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "honest/generators.hpp"

namespace honest {

// Invalid or unreadable configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Names accepted in the `tests` list.
const std::vector<std::string>& known_tests();

struct ExperimentConfig {
    Family family = Family::geometric_brownian;
    double sigma = 1.0;
    double step = 1.0 / 256.0;
    double horizon = 64.0;
    std::uint64_t seed = 1;
    bool tail_completion = true;
    bool bridge_correction = false;

    std::size_t path_count = 1000;
    std::vector<std::string> tests = known_tests();
    std::vector<double> refinement_steps;  // empty: step * {16, 4, 1}
    std::string output_dir = "out";
    std::set<std::string> emit = {"csv", "json", "plotdata"};
    unsigned threads = 0;  // 0: hardware concurrency

    std::vector<double> tail_levels = {2.0, 4.0, 8.0};
    std::vector<double> u_levels = {0.25, 0.5, 0.75};
    std::vector<double> checkpoints = {1.0, 4.0, 16.0};
    std::vector<StoppingRule> stopping_rules = {DeterministicTime{1.0}, LevelHit{1.5}};
    double n_sigma = 4.0;
    double ks_alpha = 0.01;
    double ks_inflation = 2.0;

    // Throws ConfigError when the grid cannot be built.
    GeneratorSpec generator() const;
    // Refinement steps actually used for the avoidance test.
    std::vector<double> effective_refinement_steps() const;
};

// Every invariant violation, one message each; empty iff runnable.
std::vector<std::string> validate(const ExperimentConfig& config);

// `key = value` lines; blank lines and '#' comments ignored.
std::map<std::string, std::string> parse_key_values(std::istream& in);

// Applies settings on top of `config`. Unknown keys and unparsable values
// throw ConfigError; range checks are left to validate().
void apply_settings(ExperimentConfig& config, const std::map<std::string, std::string>& settings);

ExperimentConfig load_config_file(const std::string& path);

std::map<std::string, std::string> to_settings(const ExperimentConfig& config);

}  // namespace honest
