#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "honest/azema.hpp"
#include "honest/config.hpp"
#include "honest/generators.hpp"
#include "honest/stat_verifier.hpp"

namespace honest {

// Output directory or file could not be written (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything the statistical tests need from one path; the path itself is
// dropped after summarising so large runs stay within memory.
struct PathSummary {
    std::uint64_t path_index = 0;
    double terminal_sup = 0.0;         // grid supremum, or the analytic one when known
    double coarse_terminal_sup = 0.0;  // grid maximum on the 2 * step subgrid (NaN if unavailable)
    double bridge_sup = 0.0;           // NaN without bridge data
    double completed_sup = 0.0;        // primary supremum after tail completion
    TailCompletion completion;
    RandomTimeSample rho_min = RandomTimeSample::infinite(RandomTimeKind::rho_min);
    RandomTimeSample rho_max = RandomTimeSample::infinite(RandomTimeKind::rho_max);
    double z_at_rho = 1.0;
    double k_at_rho = 0.0;  // NaN when undefined (unattained, uncompleted)
    double a_horizon = 0.0;
    bool absorbed = false;
    bool attains_analytic_sup = false;
    double value_at_jump = 0.0;  // NaN without a jump
    std::vector<double> eta;     // L_{eta_u} 1{eta_u < inf} per u level
    double identity_lhs = 0.0;   // time-change identity with f(u) = u
    double identity_rhs = 0.0;
    CheckpointRecord checkpoints;
    std::vector<std::size_t> refinement_rho;               // per refinement step
    std::vector<std::vector<std::size_t>> refinement_tau;  // [stopping rule][refinement step]
};

struct Collection {
    ExperimentConfig config;
    std::vector<PathSummary> paths;
    IdentityViolations identity_totals;
    std::size_t identity_points = 0;
};

// Generation and per-path decomposition for every path of the config.
// Parallel over paths; the result is independent of the thread count.
Collection collect(const ExperimentConfig& config);

PathSummary summarize_path(const ExperimentConfig& config, const GeneratorSpec& spec, std::uint64_t path_index,
                           IdentityViolations* identity_totals);

std::vector<StatReport> evaluate(const Collection& collection);

struct RunOutcome {
    std::vector<StatReport> reports;
    bool all_passed = false;
    std::vector<std::filesystem::path> written;
};

// validate -> collect -> evaluate -> write. Throws ConfigError or IoError.
RunOutcome run(const ExperimentConfig& config);

// Keeps freed path buffers in the heap instead of returning them to the OS
// (glibc only; a no-op elsewhere). Each path allocates several arrays of
// point_count doubles, and without this every one of them is a fresh mmap.
void keep_large_allocations_in_heap();

enum ExitCode : int {
    kExitPass = 0,
    kExitTestFailure = 1,
    kExitConfigError = 2,
    kExitIoError = 3,
};

}  // namespace honest
