#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "honest/time_grid.hpp"

namespace honest {

struct Jump {
    double time;
    double pre_value;
    double post_value;
};

// One simulated trajectory of a nonnegative process started at 1.
//
// Invariants (checked on construction):
//   values.size() == grid.point_count(), values[0] == 1, values >= 0;
//   once a value hits 0 every later value is 0 (absorption);
//   an analytic terminal supremum, when given, is >= every grid value;
//   a bridge running supremum, when given, is nondecreasing, has one entry
//   per grid point and dominates the grid values.
class SamplePath {
public:
    SamplePath(TimeGrid grid, std::vector<double> values, std::vector<Jump> jumps = {},
               std::optional<double> analytic_terminal_sup = std::nullopt,
               std::vector<double> bridge_running_sup = {});

    const TimeGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double value(std::size_t k) const { return values_.at(k); }
    double terminal_value() const noexcept { return values_.back(); }
    std::size_t size() const noexcept { return values_.size(); }

    const std::vector<Jump>& jumps() const noexcept { return jumps_; }
    const std::optional<double>& analytic_terminal_sup() const noexcept { return analytic_sup_; }

    bool absorbed() const noexcept { return absorption_index_.has_value(); }
    std::optional<std::size_t> absorption_index() const noexcept { return absorption_index_; }

    // Supremum of the continuous interpolation (Brownian bridges between grid
    // points) up to each grid time; empty unless the generator sampled it.
    bool has_bridge_sup() const noexcept { return !bridge_sup_.empty(); }
    std::span<const double> bridge_running_sup() const noexcept { return bridge_sup_; }

    // Every factor-th point; jumps and the analytic supremum carry over,
    // bridge data does not (it is tied to the original intervals).
    SamplePath subsampled(std::size_t factor) const;

private:
    TimeGrid grid_;
    std::vector<double> values_;
    std::vector<Jump> jumps_;
    std::optional<double> analytic_sup_;
    std::optional<std::size_t> absorption_index_;
    std::vector<double> bridge_sup_;
};

}  // namespace honest
