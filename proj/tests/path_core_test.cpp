#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "honest/generators.hpp"
#include "honest/path_core.hpp"
#include "test_paths.hpp"

using namespace honest;
using honest::testing::path_of;
using honest::testing::random_path;

namespace {

// e^{t_k} 1{t_k < tau} on a unit-step grid
SamplePath counterexample_path(double tau, std::size_t n) {
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    for (std::size_t k = 1; k < n && static_cast<double>(k) < tau; ++k) v[k] = std::exp(static_cast<double>(k));
    return SamplePath(TimeGrid(1.0, n), std::move(v), {Jump{tau, std::exp(tau), 0.0}}, std::exp(tau));
}

}  // namespace

TEST(RunningSupremum, Examples) {
    const auto sup = running_supremum(path_of({1, 0.5, 2, 1}));
    EXPECT_EQ(sup.values, (std::vector<double>{1, 1, 2, 2}));
    EXPECT_EQ(sup.terminal, 2.0);

    const auto flat = running_supremum(path_of({1, 1, 1}));
    EXPECT_EQ(flat.values, (std::vector<double>{1, 1, 1}));
    EXPECT_EQ(flat.terminal, 1.0);
}

TEST(RunningSupremum, AnalyticTerminalExceedsGrid) {
    const auto path = counterexample_path(2.5, 6);
    const auto sup = running_supremum(path);
    EXPECT_DOUBLE_EQ(sup.terminal, std::exp(2.5));
    for (double v : path.values()) EXPECT_LT(v, sup.terminal);
}

TEST(RhoMin, Examples) {
    const auto p = path_of({1, 3, 2, 3});
    EXPECT_EQ(rho_min(p, running_supremum(p)).grid_index, 1u);
    const auto dec = path_of({1, 0.5, 0.25});
    EXPECT_EQ(rho_min(dec, running_supremum(dec)).grid_index, 0u);

    const auto cx = counterexample_path(2.5, 6);
    const auto r = rho_min(cx, running_supremum(cx));
    EXPECT_FALSE(r.is_finite());
    EXPECT_TRUE(std::isinf(r.exact_time));
}

TEST(RhoMax, Examples) {
    const auto ties = path_of({1, 3, 2, 3});
    EXPECT_EQ(rho_max(ties, running_supremum(ties)).grid_index, 3u);
    const auto unique = path_of({1, 3, 2, 1});
    const auto sup = running_supremum(unique);
    EXPECT_EQ(rho_max(unique, sup).grid_index, 1u);
    EXPECT_EQ(rho_min(unique, sup).grid_index, 1u);

    const auto cx = counterexample_path(3.2, 8);
    EXPECT_FALSE(rho_max(cx, running_supremum(cx)).is_finite());
}

TEST(RhoMinMax, CoincideOnGeometricBrownianPaths) {
    GeneratorSpec spec;
    spec.grid = TimeGrid::from_horizon(1.0 / 64.0, 16.0);
    spec.seed = 99;
    for (std::uint64_t i = 0; i < 300; ++i) {
        const auto path = generate(spec, i);
        const auto sup = running_supremum(path);
        EXPECT_EQ(rho_min(path, sup).grid_index, rho_max(path, sup).grid_index) << "path " << i;
    }
}

TEST(HonestRepresentative, Examples) {
    const auto p = path_of({1, 3, 2});
    EXPECT_EQ(honest_representative(p, 2).grid_index, 1u);
    EXPECT_EQ(honest_representative(p, 0).grid_index, 0u);
    EXPECT_THROW(honest_representative(p, 3), std::out_of_range);
}

TEST(HittingTime, Examples) {
    EXPECT_EQ(hitting_time_tau_x(path_of({1, 1.5, 2.5}), 2.0).grid_index, 2u);
    EXPECT_FALSE(hitting_time_tau_x(path_of({1, 0.5, 0}), 2.0).is_finite());
    EXPECT_THROW(hitting_time_tau_x(path_of({1, 2}), 1.0), std::invalid_argument);
    EXPECT_THROW(hitting_time_tau_x(path_of({1, 2}), 0.5), std::invalid_argument);
}

TEST(TimeOfSupremum, GridAndAnalytic) {
    const auto p = path_of({1, 3, 2, 3});
    EXPECT_EQ(time_of_supremum(running_supremum(p)).grid_index, 1u);
    EXPECT_FALSE(time_of_supremum(running_supremum(counterexample_path(2.5, 6))).is_finite());
}

// Properties over random paths (with ties and absorption).
TEST(PathCoreProperties, RandomPaths) {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 400; ++trial) {
        const auto path = random_path(rng, 2 + trial % 60);
        const auto sup = running_supremum(path);
        const auto values = path.values();

        // idempotent max-envelope
        const SamplePath env(path.grid(), sup.values);
        EXPECT_EQ(running_supremum(env).values, sup.values);
        for (std::size_t k = 0; k < values.size(); ++k) {
            EXPECT_GE(sup.values[k], values[k]);
            if (k > 0) EXPECT_GE(sup.values[k], sup.values[k - 1]);
        }

        const auto lo = rho_min(path, sup);
        const auto hi = rho_max(path, sup);
        ASSERT_TRUE(lo.is_finite());
        ASSERT_TRUE(hi.is_finite());
        EXPECT_LE(lo.grid_index, hi.grid_index);
        EXPECT_EQ(values[lo.grid_index], values[hi.grid_index]);
        EXPECT_EQ(values[lo.grid_index], sup.terminal);

        // rho = R_t on {rho <= t}
        for (std::size_t t = lo.grid_index; t < values.size(); ++t) {
            EXPECT_EQ(honest_representative(path, t).grid_index, lo.grid_index);
        }
        for (std::size_t t = 0; t < values.size(); ++t) EXPECT_LE(honest_representative(path, t).grid_index, t);

        // tau_x monotone in x; finite iff the grid max exceeds x
        std::size_t previous = 0;
        for (double x : {1.01, 1.2, 1.5, 2.0, 3.0, 5.0}) {
            const auto tau = hitting_time_tau_x(path, x);
            EXPECT_EQ(tau.is_finite(), sup.values.back() > x);
            EXPECT_GE(tau.grid_index, previous);
            previous = tau.grid_index;
        }
    }
}
