#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "honest/experiment.hpp"

namespace honest {

inline constexpr std::string_view kSamplesCsvHeader =
    "path_index,terminal_sup,completed_sup,rho_min_time,rho_min_infinite,k_at_rho,a_horizon,absorbed";

void write_reports_json(const std::filesystem::path& file, const ExperimentConfig& config,
                        const std::vector<StatReport>& reports);

// One row per path, ordered by path_index.
void write_samples_csv(const std::filesystem::path& file, const Collection& collection);

// plotdata/tail.csv: x, empirical P[sup > x], 1/x.
// plotdata/k_cdf.csv: u, empirical P[K_rho <= u], u.
std::vector<std::filesystem::path> write_plotdata(const std::filesystem::path& dir, const Collection& collection);

}  // namespace honest
