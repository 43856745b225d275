#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "honest/azema.hpp"

namespace honest {

// Outcome of one hypothesis check. passed == (statistic <= threshold).
struct StatReport {
    std::string test_name;
    std::size_t sample_size = 0;
    double statistic = 0.0;
    double threshold = 0.0;
    bool passed = false;
    bool tail_completion_used = false;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const StatReport& report);

struct TerminalSupSample {
    std::vector<double> sups;
    bool tail_completion_used = false;
};

// P[L*_inf > x] = 1/x at every level: passes iff each empirical frequency is
// within n_sigma binomial standard errors (at p = 1/x) plus `allowance` of
// 1/x. statistic = max_x (|freq - 1/x| - n_sigma se_x), threshold = allowance.
// Refuses samples whose suprema were tail-completed.
StatReport doob_tail_test(const TerminalSupSample& sample, std::span<const double> levels, double n_sigma,
                          double allowance = 0.0);

// One-sided P[L*_inf > x] <= 1/x, within n_sigma standard errors. Holds for
// every nonnegative local martingale started at 1.
StatReport doob_inequality_test(const TerminalSupSample& sample, std::span<const double> levels, double n_sigma);

// One-sample Kolmogorov-Smirnov test against Uniform[0, 1]. The threshold is
// inflation * q_{1-alpha} / sqrt(N) with q the asymptotic Kolmogorov quantile.
StatReport ks_uniform_test(std::span<const double> samples, double alpha, double inflation = 1.0,
                           bool tail_completion_used = false);

// Random-time samples for one grid step, aligned by path.
struct CoincidenceSample {
    double step;
    std::vector<std::size_t> rho;
    std::vector<std::size_t> tau;
};

// Frequency of rho == tau (same finite grid index) across a refinement
// sequence of strictly decreasing steps. Passes iff the frequency is
// nonincreasing as the step shrinks, a power-law fit c * step^p has p > 0,
// and the finest frequency is at most `fit_factor` times the fitted value.
StatReport avoidance_test(std::span<const CoincidenceSample> levels, const std::string& stopping_rule,
                          double fit_factor = 2.0);

enum class Functional { constant, value, supremum, supremum_above_two };
std::string to_string(Functional h);

// Per-path observations at checkpoint times (aligned with the checkpoint list).
struct CheckpointRecord {
    std::vector<double> value;     // L_t
    std::vector<double> supremum;  // L*_t
    std::vector<double> z;         // Z_t
    std::vector<double> m;         // M_t
    std::vector<bool> rho_after;   // 1{rho > t}
};

// (i) E[(M_t - M_s) h_s] = 0 for checkpoint pairs s < t, including s = 0;
// (ii) E[(1{rho > t} - Z_t) h_t] = 0. statistic = max |mean| / se over all
// checks, threshold = n_sigma.
StatReport martingale_orthogonality_test(std::span<const CheckpointRecord> records,
                                         std::span<const double> checkpoints, double horizon,
                                         std::span<const Functional> functionals, double n_sigma,
                                         bool tail_completion_used);

struct UniquenessRecord {
    RandomTimeSample rho_min;
    RandomTimeSample rho_max;
    bool completion_applied = false;
    double z_at_rho = 1.0;
};

// Counts (a) rho_min != rho_max, (b) rho_min INFINITE without completion,
// (c) Z != 1 at a finite rho_min. Passes iff all counts are 0; with
// `expect_unattained` (the jump counterexample) it instead passes iff (b)
// equals the sample size and (a), (c) are 0.
StatReport uniqueness_and_z_one_test(std::span<const UniquenessRecord> records, bool expect_unattained = false);

// Zero violations of the grid identities over all checked paths.
StatReport pathwise_identity_test(const IdentityViolations& totals, std::size_t paths, std::size_t points);

// E[L_{eta_u} 1{eta_u < inf}] = 1 at each u: samples[i][j] is path j at level u_i.
StatReport eta_expectation_test(std::span<const double> u_levels, std::span<const std::vector<double>> samples,
                                double n_sigma, bool tail_completion_used);

// Mean and standard error of the mean.
struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanEstimate estimate_mean(std::span<const double> xs);

}  // namespace honest
