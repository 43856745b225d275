#pragma once

#include <cstddef>
#include <vector>

#include "honest/random_time.hpp"
#include "honest/sample_path.hpp"

namespace honest {

enum class SupremumSource {
    grid,      // running max of the stored grid values (terminal may be analytic)
    bridge,    // running max of the bridge-interpolated continuous path
};

// L*_t sampled on the grid, plus L*_inf.
struct SupremumPath {
    TimeGrid grid;
    std::vector<double> values;
    double terminal;
    SupremumSource source = SupremumSource::grid;
};

// Running maximum of the grid values. The terminal value is the analytic
// supremum when the path carries one, else the last running maximum.
SupremumPath running_supremum(const SamplePath& path);

// Running supremum of the continuous interpolation; requires bridge data.
SupremumPath bridge_supremum(const SamplePath& path);

// First grid index whose value equals sup.terminal (exact float equality),
// INFINITE when the supremum is never attained on the grid.
RandomTimeSample rho_min(const SamplePath& path, const SupremumPath& sup);

// Last grid index whose value equals sup.terminal.
RandomTimeSample rho_max(const SamplePath& path, const SupremumPath& sup);

// R_t: first index s <= t_index with L_s equal to max(L_0 .. L_t).
RandomTimeSample honest_representative(const SamplePath& path, std::size_t t_index);

// tau_x: first index with L strictly above x. Requires x > 1.
RandomTimeSample hitting_time_tau_x(const SamplePath& path, double x);

// First index at which the supremum process reaches its terminal value.
// For a grid supremum without analytic terminal this is rho_min; for a bridge
// supremum the time of maximum lies in (t_{k-1}, t_k] for the returned k.
RandomTimeSample time_of_supremum(const SupremumPath& sup);

}  // namespace honest
