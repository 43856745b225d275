#pragma once

#include <span>

namespace honest {

// Limiting law of sqrt(n) D_n:  1 - 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_cdf(double x);

// Inverse of kolmogorov_cdf, p in (0, 1).
double kolmogorov_quantile(double p);

// One-sample D_n = sup_u |F_n(u) - u| against Uniform[0, 1].
double ks_statistic_uniform(std::span<const double> samples);

}  // namespace honest
