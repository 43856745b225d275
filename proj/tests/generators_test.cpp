#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "honest/generators.hpp"
#include "honest/path_core.hpp"
#include "test_paths.hpp"

using namespace honest;
using honest::testing::path_of;

namespace {

GeneratorSpec spec_for(Family family, double step, double horizon, std::uint64_t seed = 7) {
    GeneratorSpec spec;
    spec.family = family;
    spec.grid = TimeGrid::from_horizon(step, horizon);
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST(FamilyNames, RoundTrip) {
    for (Family f : {Family::stopped_brownian, Family::geometric_brownian, Family::exp_jump_counterexample}) {
        EXPECT_EQ(family_from_string(to_string(f)), f);
    }
    EXPECT_EQ(family_from_string("gbm"), Family::geometric_brownian);
    EXPECT_THROW(family_from_string("heston"), std::invalid_argument);
}

TEST(Generate, ExpJumpValueAtJumpIsZero) {
    const auto spec = spec_for(Family::exp_jump_counterexample, 1.0 / 64.0, 16.0);
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto path = generate(spec, i);
        ASSERT_EQ(path.jumps().size(), 1u);
        const Jump& jump = path.jumps().front();
        EXPECT_EQ(jump.post_value, 0.0);
        EXPECT_DOUBLE_EQ(jump.pre_value, std::exp(jump.time));
        ASSERT_TRUE(path.analytic_terminal_sup().has_value());
        EXPECT_EQ(*path.analytic_terminal_sup(), jump.pre_value);
        EXPECT_EQ(path.value(0), 1.0);
        const std::size_t at_jump = spec.grid.index_at_or_after(jump.time);
        for (std::size_t k = 1; k < path.size(); ++k) {
            if (k >= at_jump) {
                EXPECT_EQ(path.value(k), 0.0);
            } else {
                EXPECT_DOUBLE_EQ(path.value(k), std::exp(spec.grid.time(k)));
                EXPECT_LT(path.value(k), jump.pre_value);
            }
        }
    }
}

TEST(Generate, GeometricBrownianPositiveFromOne) {
    const auto spec = spec_for(Family::geometric_brownian, 1.0 / 256.0, 4.0);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto path = generate(spec, i);
        EXPECT_EQ(path.value(0), 1.0);
        for (double v : path.values()) EXPECT_GT(v, 0.0);
    }
}

// log L_T ~ N(-sigma^2 T / 2, sigma^2 T); checks mean and variance of the
// terminal log value over many paths.
TEST(Generate, GeometricBrownianTerminalLaw) {
    auto spec = spec_for(Family::geometric_brownian, 0.25, 4.0);
    spec.sigma = 0.5;
    const int n = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = std::log(generate(spec, i).terminal_value());
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double expected_var = 0.25 * 4.0;
    EXPECT_NEAR(mean, -expected_var / 2.0, 4.0 * std::sqrt(expected_var / n));
    EXPECT_NEAR(var, expected_var, 4.0 * expected_var * std::sqrt(2.0 / n));
}

TEST(Generate, StoppedBrownianDeterministicAndAbsorbed) {
    const auto spec = spec_for(Family::stopped_brownian, 1.0 / 64.0, 8.0, 12345);
    int absorbed = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto a = generate(spec, i);
        const auto b = generate(spec, i);
        ASSERT_EQ(std::vector<double>(a.values().begin(), a.values().end()),
                  std::vector<double>(b.values().begin(), b.values().end()));
        if (a.absorbed()) {
            ++absorbed;
            for (std::size_t k = *a.absorption_index(); k < a.size(); ++k) EXPECT_EQ(a.value(k), 0.0);
        }
    }
    // P[BM from 1 hits 0 before 8] = 2 P[N > 1/sqrt 8] ~ 0.72
    EXPECT_GT(absorbed, 100);
    EXPECT_NE(generate(spec, 0).value(1), generate(spec, 1).value(1));
}

TEST(Generate, BridgeSupDominatesGridSup) {
    for (Family f : {Family::geometric_brownian, Family::stopped_brownian}) {
        auto spec = spec_for(f, 1.0 / 16.0, 8.0);
        spec.bridge_correction = true;
        for (std::uint64_t i = 0; i < 100; ++i) {
            const auto path = generate(spec, i);
            ASSERT_TRUE(path.has_bridge_sup());
            const auto grid = running_supremum(path);
            const auto bridge = bridge_supremum(path);
            EXPECT_EQ(bridge.source, SupremumSource::bridge);
            for (std::size_t k = 0; k < path.size(); ++k) EXPECT_GE(bridge.values[k], grid.values[k]);
            // the grid values themselves are unchanged by the bridge draw
            auto plain = spec;
            plain.bridge_correction = false;
            EXPECT_EQ(generate(plain, i).terminal_value(), path.terminal_value());
        }
    }
}

TEST(TailComplete, Examples) {
    const auto low = path_of({1.0, 3.0, 0.001});
    const auto c1 = tail_complete(low, running_supremum(low), 0.5);
    EXPECT_TRUE(c1.applied);
    EXPECT_DOUBLE_EQ(c1.future_max, 0.002);
    EXPECT_DOUBLE_EQ(c1.completed_terminal_sup, 3.0);
    EXPECT_FALSE(c1.beyond_horizon);

    const auto high = path_of({1.0, 3.0, 2.0});
    const auto c2 = tail_complete(high, running_supremum(high), 0.5);
    EXPECT_DOUBLE_EQ(c2.future_max, 4.0);
    EXPECT_DOUBLE_EQ(c2.completed_terminal_sup, 4.0);
    EXPECT_TRUE(c2.beyond_horizon);
}

TEST(TailComplete, Rejections) {
    const auto absorbed = path_of({1.0, 0.5, 0.0});
    EXPECT_THROW(tail_complete(absorbed, running_supremum(absorbed), 0.5), std::invalid_argument);
    const auto jump = generate(spec_for(Family::exp_jump_counterexample, 0.5, 4.0), 0);
    EXPECT_THROW(tail_complete(jump, running_supremum(jump), 0.5), std::invalid_argument);
    const auto ok = path_of({1.0, 2.0});
    EXPECT_THROW(tail_complete(ok, running_supremum(ok), 0.0), std::invalid_argument);
    EXPECT_THROW(tail_complete(ok, running_supremum(ok), 1.5), std::invalid_argument);
}

TEST(CompletionDraw, InUnitIntervalAndDeterministic) {
    const auto spec = spec_for(Family::geometric_brownian, 0.5, 4.0);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = completion_draw(spec, i);
        EXPECT_GT(u, 0.0);
        EXPECT_LE(u, 1.0);
        EXPECT_EQ(u, completion_draw(spec, i));
    }
}

TEST(StoppingTime, Examples) {
    const auto path = path_of({1.0, 1.2, 0.8, 1.6}, 0.5);
    EXPECT_EQ(sample_stopping_time(path, DeterministicTime{0.0}).grid_index, 0u);
    EXPECT_EQ(sample_stopping_time(path, DeterministicTime{1.0}).grid_index, 2u);
    EXPECT_EQ(sample_stopping_time(path, LevelHit{1.0}).grid_index, 0u);
    EXPECT_EQ(sample_stopping_time(path, LevelHit{1.5}).grid_index, 3u);
    EXPECT_FALSE(sample_stopping_time(path, LevelHit{2.0}).is_finite());
    EXPECT_THROW(sample_stopping_time(path, DeterministicTime{1.6}), std::invalid_argument);
    EXPECT_THROW(sample_stopping_time(path, DeterministicTime{-0.1}), std::invalid_argument);
    EXPECT_THROW(sample_stopping_time(path, LevelHit{0.0}), std::invalid_argument);
}

TEST(StoppingTime, HugeLevelNeverHitByStoppedBrownian) {
    const auto spec = spec_for(Family::stopped_brownian, 1.0 / 64.0, 16.0);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        EXPECT_FALSE(sample_stopping_time(generate(spec, i), LevelHit{1e10}).is_finite());
    }
}
