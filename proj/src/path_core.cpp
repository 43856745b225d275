#include "honest/path_core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace honest {

SupremumPath running_supremum(const SamplePath& path) {
    const auto values = path.values();
    std::vector<double> sup(values.size());
    double running = values[0];
    for (std::size_t k = 0; k < values.size(); ++k) {
        running = std::max(running, values[k]);
        sup[k] = running;
    }
    const double terminal = path.analytic_terminal_sup().value_or(running);
    return {path.grid(), std::move(sup), terminal, SupremumSource::grid};
}

SupremumPath bridge_supremum(const SamplePath& path) {
    if (!path.has_bridge_sup()) {
        throw std::invalid_argument("bridge_supremum: path carries no bridge data");
    }
    const auto bridge = path.bridge_running_sup();
    std::vector<double> sup(bridge.begin(), bridge.end());
    const double terminal = sup.back();
    return {path.grid(), std::move(sup), terminal, SupremumSource::bridge};
}

RandomTimeSample rho_min(const SamplePath& path, const SupremumPath& sup) {
    const auto values = path.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] == sup.terminal) {
            return RandomTimeSample::at(RandomTimeKind::rho_min, k, path.grid().time(k), values[k]);
        }
    }
    return RandomTimeSample::infinite(RandomTimeKind::rho_min);
}

RandomTimeSample rho_max(const SamplePath& path, const SupremumPath& sup) {
    const auto values = path.values();
    for (std::size_t k = values.size(); k-- > 0;) {
        if (values[k] == sup.terminal) {
            return RandomTimeSample::at(RandomTimeKind::rho_max, k, path.grid().time(k), values[k]);
        }
    }
    return RandomTimeSample::infinite(RandomTimeKind::rho_max);
}

RandomTimeSample honest_representative(const SamplePath& path, std::size_t t_index) {
    if (t_index >= path.size()) {
        throw std::out_of_range("honest_representative: index " + std::to_string(t_index) + " outside grid");
    }
    const auto values = path.values();
    std::size_t best = 0;
    for (std::size_t s = 1; s <= t_index; ++s) {
        if (values[s] > values[best]) best = s;
    }
    return RandomTimeSample::at(RandomTimeKind::honest_rep, best, path.grid().time(best), values[best]);
}

RandomTimeSample hitting_time_tau_x(const SamplePath& path, double x) {
    if (!(x > 1.0)) {
        throw std::invalid_argument("hitting_time_tau_x: level must exceed 1");
    }
    const auto values = path.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] > x) {
            return RandomTimeSample::at(RandomTimeKind::hitting_tau_x, k, path.grid().time(k), values[k]);
        }
    }
    return RandomTimeSample::infinite(RandomTimeKind::hitting_tau_x);
}

RandomTimeSample time_of_supremum(const SupremumPath& sup) {
    if (sup.terminal > sup.values.back()) {
        return RandomTimeSample::infinite(RandomTimeKind::rho_min);
    }
    const auto it = std::find(sup.values.begin(), sup.values.end(), sup.terminal);
    const auto k = static_cast<std::size_t>(it - sup.values.begin());
    return RandomTimeSample::at(RandomTimeKind::rho_min, k, sup.grid.time(k), sup.terminal);
}

}  // namespace honest
