#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "honest/azema.hpp"
#include "test_paths.hpp"

using namespace honest;
using honest::testing::path_of;

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// max_t |A_t - log L*_t|, the closed form computed directly from the values
double closed_form_error(const SamplePath& path, StieltjesRule rule) {
    const auto sup = running_supremum(path);
    const auto a = a_process(path, k_process(sup), rule);
    double running = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < path.size(); ++j) {
        running = std::max(running, path.value(j));
        worst = std::max(worst, std::abs(a[j] - std::log(running)));
    }
    return worst;
}

GeneratorSpec fine_gbm(double horizon, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.grid = TimeGrid::from_horizon(1.0 / 1024.0, horizon);
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST(AzemaFromPath, Examples) {
    const auto p = path_of({1, 2, 1});
    EXPECT_EQ(azema_from_path(p, running_supremum(p)), (std::vector<double>{1, 1, 0.5}));

    const auto absorbed = path_of({1, 1.5, 0.0, 0.0});
    const auto z = azema_from_path(absorbed, running_supremum(absorbed));
    EXPECT_EQ(z[2], 0.0);
    EXPECT_EQ(z[3], 0.0);
}

TEST(KProcess, Examples) {
    const auto k = k_process(running_supremum(path_of({1, 2, 1})));
    EXPECT_EQ(k, (std::vector<double>{0.0, 0.5, 0.5}));
}

TEST(AProcess, FlatSupremumGivesZero) {
    const auto p = path_of({1, 0.5, 0.9, 0.2});
    for (auto rule : {StieltjesRule::simpson, StieltjesRule::right_point}) {
        const auto a = a_process(p, k_process(running_supremum(p)), rule);
        for (double x : a) EXPECT_EQ(x, 0.0);
    }
}

// L_t = e^t on [0, 1]: the running max reaches e at the horizon.
TEST(AProcess, RunningMaxEGivesOne) {
    const TimeGrid grid = TimeGrid::from_horizon(1.0 / 1024.0, 1.0);
    std::vector<double> v(grid.point_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::exp(grid.time(k));
    v[0] = 1.0;
    const SamplePath path(grid, v);
    const auto a = a_process(path, k_process(running_supremum(path)));
    EXPECT_NEAR(a.back(), 1.0, 1e-9);
}

TEST(AProcess, MatchesLogSupremumPerPath) {
    const auto spec = fine_gbm(8.0, 11);
    for (std::uint64_t i = 0; i < 50; ++i) {
        EXPECT_LT(closed_form_error(generate(spec, i), StieltjesRule::simpson), 1e-5);
    }
}

// Two halvings (step 2^-8 -> 2^-10): Simpson gains far more than the
// right-point rule, whose error shrinks like sqrt(step).
TEST(AProcess, RefinementRates) {
    const auto spec = fine_gbm(4.0, 5);
    std::vector<double> simpson_coarse, simpson_fine, right_coarse, right_fine;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto fine = generate(spec, i);
        const auto coarse = fine.subsampled(4);
        simpson_coarse.push_back(closed_form_error(coarse, StieltjesRule::simpson));
        simpson_fine.push_back(closed_form_error(fine, StieltjesRule::simpson));
        right_coarse.push_back(closed_form_error(coarse, StieltjesRule::right_point));
        right_fine.push_back(closed_form_error(fine, StieltjesRule::right_point));
    }
    const double simpson_ratio = median(simpson_fine) / median(simpson_coarse);
    const double right_ratio = median(right_fine) / median(right_coarse);
    EXPECT_LT(simpson_ratio, 0.25);
    EXPECT_GT(right_ratio, 0.35);
    EXPECT_LT(right_ratio, 0.75);
}

TEST(MProcess, StartsAtOneAndEqualsZPlusA) {
    const auto p = generate(fine_gbm(2.0, 1), 0);
    const auto b = decompose(p, running_supremum(p));
    EXPECT_EQ(b.m[0], 1.0);
    for (std::size_t j = 0; j < p.size(); ++j) EXPECT_EQ(b.m[j], b.z[j] + b.a[j]);
    EXPECT_THROW(m_process(std::vector<double>{1.0}, std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(MProcess, AtAbsorptionEqualsLogSupremum) {
    GeneratorSpec spec = fine_gbm(16.0, 3);
    spec.family = Family::stopped_brownian;
    int checked = 0;
    for (std::uint64_t i = 0; i < 200 && checked < 20; ++i) {
        const auto p = generate(spec, i);
        if (!p.absorbed()) continue;
        ++checked;
        const auto sup = running_supremum(p);
        const auto b = decompose(p, sup);
        const std::size_t j = *p.absorption_index();
        EXPECT_EQ(b.z[j], 0.0);
        EXPECT_NEAR(b.m[j], std::log(sup.values[j]), 1e-5);
        EXPECT_EQ(b.m.back(), b.m[j]);
    }
    EXPECT_EQ(checked, 20);
}

TEST(TimeChangeEta, Examples) {
    const TimeGrid g(1.0, 3);
    const std::vector<double> k{0.0, 0.5, 0.5};
    EXPECT_EQ(time_change_eta(g, k, 0.0).grid_index, 0u);
    EXPECT_EQ(time_change_eta(g, k, 0.3).grid_index, 1u);
    EXPECT_FALSE(time_change_eta(g, k, 0.6).is_finite());
    EXPECT_THROW(time_change_eta(g, k, 1.0), std::invalid_argument);
    EXPECT_THROW(time_change_eta(g, k, -0.1), std::invalid_argument);
}

TEST(TimeChangeIdentity, FlatKBothSidesZero) {
    const auto p = path_of({1, 0.5, 0.7});
    const auto k = k_process(running_supremum(p));
    const auto a = a_process(p, k);
    for (auto f : {TestFunction::one, TestFunction::identity, TestFunction::square}) {
        const auto [lhs, rhs] = time_change_identity_check(p, k, a, f);
        EXPECT_EQ(lhs, 0.0);
        EXPECT_EQ(rhs, 0.0);
    }
}

// Four halvings (2^-6 -> 2^-10): the per-path gap shrinks at least like
// sqrt(step), so by well over a factor 2.
TEST(TimeChangeIdentity, GapShrinksUnderRefinement) {
    const auto spec = fine_gbm(4.0, 8);
    std::vector<double> coarse_gap, fine_gap;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto fine = generate(spec, i);
        for (std::size_t factor : {16u, 1u}) {
            const auto p = fine.subsampled(factor);
            const auto k = k_process(running_supremum(p));
            const auto a = a_process(p, k);
            const auto [lhs, rhs] = time_change_identity_check(p, k, a, TestFunction::identity);
            (factor == 1 ? fine_gap : coarse_gap).push_back(std::abs(lhs - rhs));
        }
    }
    EXPECT_LT(median(fine_gap), 0.5 * median(coarse_gap));
    EXPECT_LT(median(fine_gap), 0.01);
}

TEST(KAtRho, Examples) {
    const auto never_exceeded = path_of({1, 0.5});
    const auto b1 = decompose(never_exceeded, running_supremum(never_exceeded));
    EXPECT_EQ(k_at_rho(b1, RandomTimeSample::at(RandomTimeKind::rho_min, 0, 0.0, 1.0), {}), 0.0);

    const auto two = path_of({1, 2, 1});
    const auto b2 = decompose(two, running_supremum(two));
    EXPECT_EQ(k_at_rho(b2, RandomTimeSample::at(RandomTimeKind::rho_min, 1, 1.0, 2.0), {}), 0.5);

    TailCompletion completion;
    completion.applied = true;
    completion.completed_terminal_sup = 4.0;
    EXPECT_EQ(k_at_rho(b2, RandomTimeSample::infinite(RandomTimeKind::rho_min), completion), 0.75);
    EXPECT_THROW(k_at_rho(b2, RandomTimeSample::infinite(RandomTimeKind::rho_min), {}), std::domain_error);
}

TEST(CheckIdentities, CleanOnGeneratedPaths) {
    GeneratorSpec spec = fine_gbm(8.0, 21);
    spec.grid = TimeGrid::from_horizon(1.0 / 256.0, 8.0);
    IdentityViolations total;
    for (Family f : {Family::geometric_brownian, Family::stopped_brownian}) {
        spec.family = f;
        for (std::uint64_t i = 0; i < 100; ++i) {
            const auto p = generate(spec, i);
            const auto sup = running_supremum(p);
            total += check_identities(p, sup, decompose(p, sup), rho_min(p, sup));
        }
    }
    EXPECT_EQ(total.total(), 0u);
}

TEST(CheckIdentities, DetectsCorruption) {
    const auto p = path_of({1, 2, 1.5, 2.5});
    const auto sup = running_supremum(p);
    const auto rho = rho_min(p, sup);
    auto b = decompose(p, sup);
    b.m[2] += 1e-3;
    b.k[3] = 0.1;
    const auto v = check_identities(p, sup, b, rho);
    EXPECT_EQ(v.m_equals_z_plus_a, 1u);
    EXPECT_GE(v.one_minus_k, 1u);
    EXPECT_GE(v.k_monotone, 1u);
}
