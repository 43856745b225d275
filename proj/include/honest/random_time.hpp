#pragma once

#include <cstddef>
#include <limits>

namespace honest {

inline constexpr std::size_t kInfiniteIndex = std::numeric_limits<std::size_t>::max();
inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

enum class RandomTimeKind {
    rho_min,            // first time of the overall maximum
    rho_max,            // last time of the overall maximum
    honest_rep,         // R_t: first time of the running maximum up to t, capped at t
    hitting_tau_x,      // first time L > x
    time_change_eta_u,  // first time K >= u
    stopping_time,      // externally chosen stopping time (avoidance tests)
};

// A realised random time on a grid. INFINITE is carried explicitly so that
// "never happens" events can be counted rather than clamped to the horizon.
struct RandomTimeSample {
    RandomTimeKind kind;
    std::size_t grid_index = kInfiniteIndex;
    double exact_time = kInfiniteTime;
    double attained_value = 0.0;

    bool is_finite() const noexcept { return grid_index != kInfiniteIndex; }

    static RandomTimeSample infinite(RandomTimeKind kind) noexcept { return {kind}; }
    static RandomTimeSample at(RandomTimeKind kind, std::size_t index, double time, double value) noexcept {
        return {kind, index, time, value};
    }
};

}  // namespace honest
