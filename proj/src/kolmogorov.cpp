#include "honest/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace honest {

double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1.0) {
        // Theta-function form converges fast for small x:
        // sqrt(2 pi)/x sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 x^2))
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double sum = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const double odd = 2.0 * k - 1.0;
            const double term = std::exp(-odd * odd * pi2 / (8.0 * x * x));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return std::sqrt(2.0 * std::numbers::pi) / x * sum;
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return 1.0 - 2.0 * sum;
}

double kolmogorov_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("kolmogorov_quantile: p must lie in (0, 1)");
    }
    double lo = 0.0;
    double hi = 10.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (kolmogorov_cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double ks_statistic_uniform(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("ks_statistic_uniform: empty sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double u = std::clamp(sorted[i], 0.0, 1.0);
        d = std::max(d, static_cast<double>(i + 1) / n - u);
        d = std::max(d, u - static_cast<double>(i) / n);
    }
    return d;
}

}  // namespace honest
