#pragma once

#include <cstddef>

namespace honest {

// Uniform grid t_k = k * step, k = 0 .. point_count - 1.
class TimeGrid {
public:
    TimeGrid(double step, std::size_t point_count);

    // Grid covering [0, horizon]; horizon must be an integer multiple of step
    // up to rounding.
    static TimeGrid from_horizon(double step, double horizon);

    double step() const noexcept { return step_; }
    std::size_t point_count() const noexcept { return point_count_; }
    double horizon() const noexcept { return step_ * static_cast<double>(point_count_ - 1); }
    double time(std::size_t k) const noexcept { return step_ * static_cast<double>(k); }

    // First grid index with t_k >= t, or point_count() when t is past the horizon.
    std::size_t index_at_or_after(double t) const noexcept;

    // Grid made of every `factor`-th point of this one.
    TimeGrid coarsened(std::size_t factor) const;

    bool operator==(const TimeGrid&) const = default;

private:
    double step_;
    std::size_t point_count_;
};

}  // namespace honest
