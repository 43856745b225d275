#include "honest/azema.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace honest {

std::vector<double> azema_from_path(const SamplePath& path, const SupremumPath& sup) {
    const auto values = path.values();
    if (sup.values.size() != values.size()) {
        throw std::invalid_argument("azema_from_path: supremum and path lengths differ");
    }
    std::vector<double> z(values.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = values[i] / sup.values[i];
    return z;
}

std::vector<double> k_process(const SupremumPath& sup) {
    std::vector<double> k(sup.values.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = 1.0 - 1.0 / sup.values[i];
    return k;
}

std::vector<double> a_process(const SamplePath& path, std::span<const double> k, StieltjesRule rule) {
    const auto values = path.values();
    if (k.size() != values.size()) {
        throw std::invalid_argument("a_process: K and path lengths differ");
    }
    std::vector<double> a(k.size());
    a[0] = 0.0;
    double acc = 0.0;
    for (std::size_t j = 1; j < k.size(); ++j) {
        const double dk = k[j] - k[j - 1];
        if (dk > 0.0) {
            if (rule == StieltjesRule::right_point) {
                acc += values[j] * dk;
            } else {
                const double mid = 0.5 * (k[j - 1] + k[j]);
                acc += dk / 6.0 * (1.0 / (1.0 - k[j - 1]) + 4.0 / (1.0 - mid) + 1.0 / (1.0 - k[j]));
            }
        }
        a[j] = acc;
    }
    return a;
}

std::vector<double> m_process(std::span<const double> z, std::span<const double> a) {
    if (z.size() != a.size()) {
        throw std::invalid_argument("m_process: Z and A lengths differ");
    }
    std::vector<double> m(z.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = z[i] + a[i];
    return m;
}

DecompositionBundle decompose(const SamplePath& path, const SupremumPath& sup, StieltjesRule rule) {
    DecompositionBundle b;
    b.z = azema_from_path(path, sup);
    b.k = k_process(sup);
    b.a = a_process(path, b.k, rule);
    b.m = m_process(b.z, b.a);
    return b;
}

RandomTimeSample time_change_eta(const TimeGrid& grid, std::span<const double> k, double u) {
    if (!(u >= 0.0 && u < 1.0)) {
        throw std::invalid_argument("time_change_eta: level must lie in [0, 1)");
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] >= u) {
            return RandomTimeSample::at(RandomTimeKind::time_change_eta_u, i, grid.time(i), k[i]);
        }
    }
    return RandomTimeSample::infinite(RandomTimeKind::time_change_eta_u);
}

double apply(TestFunction f, double u) noexcept {
    switch (f) {
        case TestFunction::one: return 1.0;
        case TestFunction::identity: return u;
        case TestFunction::square: return u * u;
    }
    return 0.0;
}

std::pair<double, double> time_change_identity_check(const SamplePath& path, std::span<const double> k,
                                                     std::span<const double> a, TestFunction f,
                                                     std::size_t u_mesh) {
    const auto values = path.values();
    if (k.size() != values.size() || a.size() != values.size()) {
        throw std::invalid_argument("time_change_identity_check: length mismatch");
    }
    if (u_mesh == 0) {
        throw std::invalid_argument("time_change_identity_check: empty u mesh");
    }
    double lhs = 0.0;
    for (std::size_t j = 1; j < k.size(); ++j) {
        const double da = a[j] - a[j - 1];
        if (da != 0.0) lhs += apply(f, 0.5 * (k[j - 1] + k[j])) * da;
    }

    // K is nondecreasing, so eta_u is found by one forward sweep.
    double rhs = 0.0;
    const double du = 1.0 / static_cast<double>(u_mesh);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < u_mesh; ++i) {
        const double u = (static_cast<double>(i) + 0.5) * du;
        while (idx < k.size() && k[idx] < u) ++idx;
        if (idx == k.size()) break;
        rhs += values[idx] * apply(f, u) * du;
    }
    return {lhs, rhs};
}

double k_at_rho(const DecompositionBundle& bundle, const RandomTimeSample& rho, const TailCompletion& completion) {
    if (completion.applied) {
        return 1.0 - 1.0 / completion.completed_terminal_sup;
    }
    if (!rho.is_finite()) {
        throw std::domain_error("k_at_rho: supremum never attained and no tail completion");
    }
    return bundle.k.at(rho.grid_index);
}

IdentityViolations& IdentityViolations::operator+=(const IdentityViolations& o) noexcept {
    z_times_sup += o.z_times_sup;
    one_minus_k += o.one_minus_k;
    m_equals_z_plus_a += o.m_equals_z_plus_a;
    k_monotone += o.k_monotone;
    a_monotone += o.a_monotone;
    z_range += o.z_range;
    z_at_rho += o.z_at_rho;
    return *this;
}

IdentityViolations check_identities(const SamplePath& path, const SupremumPath& sup,
                                    const DecompositionBundle& b, const RandomTimeSample& rho) {
    constexpr double tol = 4.0 * std::numeric_limits<double>::epsilon();
    const auto values = path.values();
    IdentityViolations v;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double s = sup.values[i];
        if (std::abs(b.z[i] * s - values[i]) > tol * std::max(values[i], 1.0)) ++v.z_times_sup;
        if (std::abs((1.0 - b.k[i]) * s - 1.0) > tol * std::max(s, 1.0)) ++v.one_minus_k;
        if (b.m[i] != b.z[i] + b.a[i]) ++v.m_equals_z_plus_a;
        if (!(b.z[i] >= 0.0 && b.z[i] <= 1.0)) ++v.z_range;
        if (i > 0) {
            if (b.k[i] < b.k[i - 1]) ++v.k_monotone;
            if (b.a[i] < b.a[i - 1]) ++v.a_monotone;
        }
    }
    if (b.k.front() != 0.0) ++v.k_monotone;
    if (b.z.front() != 1.0) ++v.z_range;
    if (b.a.front() != 0.0) ++v.a_monotone;
    if (rho.is_finite() && b.z[rho.grid_index] != 1.0) ++v.z_at_rho;
    return v;
}

}  // namespace honest
