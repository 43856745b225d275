#include "honest/sample_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace honest {

SamplePath::SamplePath(TimeGrid grid, std::vector<double> values, std::vector<Jump> jumps,
                       std::optional<double> analytic_terminal_sup, std::vector<double> bridge_running_sup)
    : grid_(grid),
      values_(std::move(values)),
      jumps_(std::move(jumps)),
      analytic_sup_(analytic_terminal_sup),
      bridge_sup_(std::move(bridge_running_sup)) {
    if (values_.size() != grid_.point_count()) {
        throw std::invalid_argument("SamplePath: " + std::to_string(values_.size()) + " values for a grid of " +
                                    std::to_string(grid_.point_count()) + " points");
    }
    if (values_.front() != 1.0) {
        throw std::invalid_argument("SamplePath: path must start at 1");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double v = values_[k];
        if (!(v >= 0.0) || std::isinf(v)) {
            throw std::invalid_argument("SamplePath: value at index " + std::to_string(k) +
                                        " is negative or not finite");
        }
        if (absorption_index_) {
            if (v != 0.0) {
                throw std::invalid_argument("SamplePath: nonzero value after absorption at index " +
                                            std::to_string(k));
            }
        } else if (v == 0.0) {
            absorption_index_ = k;
        }
    }
    const double grid_max = *std::max_element(values_.begin(), values_.end());
    if (analytic_sup_ && !(*analytic_sup_ >= grid_max)) {
        throw std::invalid_argument("SamplePath: analytic terminal supremum below the grid maximum");
    }
    if (!bridge_sup_.empty()) {
        if (bridge_sup_.size() != values_.size()) {
            throw std::invalid_argument("SamplePath: bridge supremum length mismatch");
        }
        for (std::size_t k = 0; k < values_.size(); ++k) {
            if (bridge_sup_[k] < values_[k] || (k > 0 && bridge_sup_[k] < bridge_sup_[k - 1])) {
                throw std::invalid_argument("SamplePath: bridge supremum is not a running supremum at index " +
                                            std::to_string(k));
            }
        }
    }
}

SamplePath SamplePath::subsampled(std::size_t factor) const {
    const TimeGrid coarse = grid_.coarsened(factor);
    std::vector<double> picked(coarse.point_count());
    for (std::size_t k = 0; k < picked.size(); ++k) picked[k] = values_[k * factor];
    return SamplePath(coarse, std::move(picked), jumps_, analytic_sup_);
}

}  // namespace honest
