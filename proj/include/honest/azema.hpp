#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "honest/generators.hpp"
#include "honest/path_core.hpp"
#include "honest/random_time.hpp"
#include "honest/sample_path.hpp"

namespace honest {

// Per-path pieces of the Azema supermartingale of the time of maximum:
//   Z = L / L*            (Z_t = P[rho > t | F_t])
//   K = 1 - 1 / L*        (Z = L (1 - K))
//   A = int L dK          (= log L* in closed form)
//   M = Z + A             (Doob-Meyer martingale part)
struct DecompositionBundle {
    std::vector<double> z;
    std::vector<double> k;
    std::vector<double> a;
    std::vector<double> m;
    double k_at_rho = std::numeric_limits<double>::quiet_NaN();
};

enum class StieltjesRule {
    // A_n = sum_{j<=n} L_{t_j} (K_{t_j} - K_{t_{j-1}}); converges like sqrt(step).
    right_point,
    // Simpson in the K variable. On the support of dK the path sits at its
    // running supremum, L = 1 / (1 - K), so the integrand is evaluated through
    // the stored K values; converges like step or better.
    simpson,
};

std::vector<double> azema_from_path(const SamplePath& path, const SupremumPath& sup);
std::vector<double> k_process(const SupremumPath& sup);
std::vector<double> a_process(const SamplePath& path, std::span<const double> k,
                              StieltjesRule rule = StieltjesRule::simpson);
std::vector<double> m_process(std::span<const double> z, std::span<const double> a);

DecompositionBundle decompose(const SamplePath& path, const SupremumPath& sup,
                              StieltjesRule rule = StieltjesRule::simpson);

// eta_u: first grid index with K >= u. Requires u in [0, 1).
RandomTimeSample time_change_eta(const TimeGrid& grid, std::span<const double> k, double u);

enum class TestFunction { one, identity, square };
double apply(TestFunction f, double u) noexcept;

// (lhs, rhs) of  int f(K_t) dA_t  =  int_0^1 L_{eta_u} 1{eta_u < inf} f(u) du.
// lhs: sum of f(K at step midpoint) * dA over the grid; rhs: midpoint rule on
// `u_mesh` cells of [0, 1).
std::pair<double, double> time_change_identity_check(const SamplePath& path, std::span<const double> k,
                                                     std::span<const double> a, TestFunction f,
                                                     std::size_t u_mesh = 1024);

// K at the time of maximum: 1 - 1/S, S the completed supremum when a tail
// completion was applied, else K at the finite grid time rho. Throws when rho
// is INFINITE and nothing completes it (a path of M0 outside L0).
double k_at_rho(const DecompositionBundle& bundle, const RandomTimeSample& rho, const TailCompletion& completion);

struct IdentityViolations {
    std::size_t z_times_sup = 0;      // Z L* != L
    std::size_t one_minus_k = 0;      // (1 - K) L* != 1
    std::size_t m_equals_z_plus_a = 0;
    std::size_t k_monotone = 0;
    std::size_t a_monotone = 0;
    std::size_t z_range = 0;
    std::size_t z_at_rho = 0;         // Z != 1 at a finite rho_min

    std::size_t total() const noexcept {
        return z_times_sup + one_minus_k + m_equals_z_plus_a + k_monotone + a_monotone + z_range + z_at_rho;
    }
    IdentityViolations& operator+=(const IdentityViolations& other) noexcept;
};

// Grid-point checks of the defining relations. Products are compared with a
// relative tolerance of 4 machine epsilons; M = Z + A and monotonicity are exact.
IdentityViolations check_identities(const SamplePath& path, const SupremumPath& sup,
                                    const DecompositionBundle& bundle, const RandomTimeSample& rho);

}  // namespace honest
