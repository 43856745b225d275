#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "honest/path_core.hpp"
#include "honest/random_time.hpp"
#include "honest/sample_path.hpp"
#include "honest/time_grid.hpp"

namespace honest {

enum class Family {
    stopped_brownian,         // 1 + W absorbed at the first grid value <= 0
    geometric_brownian,       // exp(sigma W_t - sigma^2 t / 2), sampled exactly on the grid
    exp_jump_counterexample,  // e^t 1{tau > t}, tau ~ Exp(1)
};

std::string_view to_string(Family family) noexcept;
// Accepts the enum spelling plus the short names gbm, brownian, exp_jump.
Family family_from_string(std::string_view name);

struct GeneratorSpec {
    Family family = Family::geometric_brownian;
    double sigma = 1.0;  // geometric_brownian only
    TimeGrid grid = TimeGrid::from_horizon(1.0 / 256.0, 64.0);
    std::uint64_t seed = 1;
    bool tail_completion = false;
    // Sample the maximum of the Brownian bridge between grid points and
    // record the running supremum of the interpolated path.
    bool bridge_correction = false;

    bool continuous_family() const noexcept { return family != Family::exp_jump_counterexample; }
};

// Deterministic in (spec.seed, path_index).
SamplePath generate(const GeneratorSpec& spec, std::uint64_t path_index);

struct TailCompletion {
    bool applied = false;
    double future_max = 0.0;  // sup of L over [horizon, inf)
    double completed_terminal_sup = 0.0;
    bool beyond_horizon = false;
};

// Exact-in-law completion of the supremum after the horizon for a member of
// M0: given L_T = c, the future maximum is c / U with U uniform on (0, 1].
// `sup` is the supremum process in use (grid or bridge); its terminal value is
// the current supremum s*.
TailCompletion tail_complete(const SamplePath& path, const SupremumPath& sup, double uniform_draw);

// The uniform draw reserved for tail completion of one path, in (0, 1].
double completion_draw(const GeneratorSpec& spec, std::uint64_t path_index);

struct DeterministicTime {
    double t;
};
struct LevelHit {
    double level;
};
using StoppingRule = std::variant<DeterministicTime, LevelHit>;

std::string describe(const StoppingRule& rule);

// deterministic(t): grid index of t (first grid time >= t).
// level_hit(a): first index with L >= a, else INFINITE.
RandomTimeSample sample_stopping_time(const SamplePath& path, const StoppingRule& rule);

}  // namespace honest
