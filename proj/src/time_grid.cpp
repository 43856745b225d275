#include "honest/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace honest {

TimeGrid::TimeGrid(double step, std::size_t point_count) : step_(step), point_count_(point_count) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("TimeGrid: step must be positive and finite");
    }
    if (point_count == 0) {
        throw std::invalid_argument("TimeGrid: point_count must be positive");
    }
}

TimeGrid TimeGrid::from_horizon(double step, double horizon) {
    if (!(step > 0.0) || !(horizon >= 0.0)) {
        throw std::invalid_argument("TimeGrid: need step > 0 and horizon >= 0");
    }
    const double ratio = horizon / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw std::invalid_argument("TimeGrid: horizon " + std::to_string(horizon) +
                                    " is not a multiple of step " + std::to_string(step));
    }
    return TimeGrid(step, static_cast<std::size_t>(rounded) + 1);
}

std::size_t TimeGrid::index_at_or_after(double t) const noexcept {
    if (t <= 0.0) return 0;
    const double raw = std::ceil(t / step_);
    if (!(raw < static_cast<double>(point_count_))) return point_count_;
    auto k = static_cast<std::size_t>(raw);
    // ceil of a rounded quotient can land one past the first t_k >= t
    if (k > 0 && time(k - 1) >= t) --k;
    return k;
}

TimeGrid TimeGrid::coarsened(std::size_t factor) const {
    if (factor == 0 || (point_count_ - 1) % factor != 0) {
        throw std::invalid_argument("TimeGrid: coarsening factor must divide the interval count");
    }
    return TimeGrid(step_ * static_cast<double>(factor), (point_count_ - 1) / factor + 1);
}

}  // namespace honest
