#include "honest/stat_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "honest/kolmogorov.hpp"

namespace honest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double z_score(const MeanEstimate& e, double target) {
    const double dev = std::abs(e.mean - target);
    if (e.std_error > 0.0) return dev / e.std_error;
    return dev == 0.0 ? 0.0 : kInf;
}

void check_levels(std::span<const double> levels) {
    if (levels.empty()) throw std::invalid_argument("tail test: no levels given");
    for (double x : levels) {
        if (!(x > 1.0)) throw std::invalid_argument("tail test: levels must exceed 1");
    }
}

StatReport finish(StatReport r) {
    r.passed = r.statistic <= r.threshold;
    return r;
}

}  // namespace

nlohmann::ordered_json to_json(const StatReport& r) {
    nlohmann::ordered_json j;
    j["test_name"] = r.test_name;
    j["sample_size"] = r.sample_size;
    j["statistic"] = std::isfinite(r.statistic) ? nlohmann::ordered_json(r.statistic) : nlohmann::ordered_json("inf");
    j["threshold"] = r.threshold;
    j["passed"] = r.passed;
    j["tail_completion_used"] = r.tail_completion_used;
    j["metadata"] = r.metadata;
    return j;
}

MeanEstimate estimate_mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("estimate_mean: empty sample");
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

StatReport doob_tail_test(const TerminalSupSample& sample, std::span<const double> levels, double n_sigma,
                          double allowance) {
    if (sample.tail_completion_used) {
        throw std::invalid_argument("doob_tail_test: suprema were tail-completed; the completion assumes the law under test");
    }
    if (sample.sups.empty()) throw std::invalid_argument("doob_tail_test: empty sample");
    check_levels(levels);

    StatReport r;
    r.test_name = "doob_tail";
    r.sample_size = sample.sups.size();
    r.threshold = allowance;
    r.statistic = -kInf;
    const double n = static_cast<double>(sample.sups.size());
    auto rows = nlohmann::ordered_json::array();
    for (double x : levels) {
        const auto above = std::count_if(sample.sups.begin(), sample.sups.end(), [x](double s) { return s > x; });
        const double freq = static_cast<double>(above) / n;
        const double target = 1.0 / x;
        const double se = std::sqrt(target * (1.0 - target) / n);
        const double excess = std::abs(freq - target) - n_sigma * se;
        r.statistic = std::max(r.statistic, excess);
        rows.push_back({{"x", x}, {"target", target}, {"frequency", freq}, {"std_error", se},
                        {"deviation", freq - target}, {"within", excess <= allowance}});
    }
    r.metadata["levels"] = rows;
    r.metadata["n_sigma"] = n_sigma;
    r.metadata["allowance"] = allowance;
    return finish(r);
}

StatReport doob_inequality_test(const TerminalSupSample& sample, std::span<const double> levels, double n_sigma) {
    if (sample.sups.empty()) throw std::invalid_argument("doob_inequality_test: empty sample");
    check_levels(levels);
    StatReport r;
    r.test_name = "doob_inequality";
    r.sample_size = sample.sups.size();
    r.threshold = 0.0;
    r.statistic = -kInf;
    r.tail_completion_used = sample.tail_completion_used;
    const double n = static_cast<double>(sample.sups.size());
    auto rows = nlohmann::ordered_json::array();
    for (double x : levels) {
        const auto above = std::count_if(sample.sups.begin(), sample.sups.end(), [x](double s) { return s > x; });
        const double freq = static_cast<double>(above) / n;
        const double bound = 1.0 / x;
        const double se = std::sqrt(bound * (1.0 - bound) / n);
        r.statistic = std::max(r.statistic, freq - bound - n_sigma * se);
        rows.push_back({{"x", x}, {"bound", bound}, {"frequency", freq}, {"std_error", se}});
    }
    r.metadata["levels"] = rows;
    r.metadata["n_sigma"] = n_sigma;
    return finish(r);
}

StatReport ks_uniform_test(std::span<const double> samples, double alpha, double inflation, bool tail_completion_used) {
    if (samples.empty()) throw std::invalid_argument("ks_uniform_test: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ks_uniform_test: alpha must lie in (0, 1)");
    StatReport r;
    r.test_name = "ks_uniform";
    r.sample_size = samples.size();
    r.tail_completion_used = tail_completion_used;
    r.statistic = ks_statistic_uniform(samples);
    const double critical = kolmogorov_quantile(1.0 - alpha);
    const double raw = critical / std::sqrt(static_cast<double>(samples.size()));
    r.threshold = inflation * raw;
    r.metadata["alpha"] = alpha;
    r.metadata["kolmogorov_quantile"] = critical;
    r.metadata["raw_threshold"] = raw;
    r.metadata["inflation"] = inflation;
    r.metadata["passes_raw"] = r.statistic <= raw;
    return finish(r);
}

StatReport avoidance_test(std::span<const CoincidenceSample> levels, const std::string& stopping_rule,
                          double fit_factor) {
    if (levels.empty()) throw std::invalid_argument("avoidance_test: no refinement levels");
    const std::size_t n = levels.front().rho.size();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].rho.size() != n || levels[i].tau.size() != n) {
            throw std::invalid_argument("avoidance_test: mismatched sample counts");
        }
        if (i > 0 && !(levels[i].step < levels[i - 1].step)) {
            throw std::invalid_argument("avoidance_test: steps must be strictly decreasing");
        }
    }
    if (n == 0) throw std::invalid_argument("avoidance_test: empty sample");

    StatReport r;
    r.test_name = "avoidance[" + stopping_rule + "]";
    r.sample_size = n;
    r.threshold = fit_factor;

    std::vector<double> freq;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& level : levels) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (level.rho[j] != kInfiniteIndex && level.rho[j] == level.tau[j]) ++hits;
        }
        freq.push_back(static_cast<double>(hits) / static_cast<double>(n));
        rows.push_back({{"step", level.step}, {"coincidences", hits}, {"frequency", freq.back()}});
    }
    r.metadata["levels"] = rows;

    bool monotone = true;
    for (std::size_t i = 1; i < freq.size(); ++i) monotone = monotone && freq[i] <= freq[i - 1];
    r.metadata["monotone"] = monotone;

    // log f = log c + p log step over levels with f > 0
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < freq.size(); ++i) {
        if (freq[i] > 0.0) {
            xs.push_back(std::log(levels[i].step));
            ys.push_back(std::log(freq[i]));
        }
    }
    double ratio = 0.0;
    bool exponent_ok = true;
    if (freq.back() > 0.0) {
        if (xs.size() >= 2) {
            const double mx = estimate_mean(xs).mean;
            const double my = estimate_mean(ys).mean;
            double sxy = 0.0, sxx = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sxy += (xs[i] - mx) * (ys[i] - my);
                sxx += (xs[i] - mx) * (xs[i] - mx);
            }
            const double p = sxy / sxx;
            const double log_c = my - p * mx;
            const double fitted = std::exp(log_c + p * std::log(levels.back().step));
            ratio = freq.back() / fitted;
            exponent_ok = p > 0.0;
            r.metadata["fit_exponent"] = p;
            r.metadata["fit_at_finest"] = fitted;
        } else {
            // a single nonzero level cannot show decay
            exponent_ok = levels.size() == 1;
            ratio = levels.size() == 1 ? 0.0 : kInf;
        }
    }
    r.metadata["finest_over_fit"] = ratio;
    r.statistic = (monotone && exponent_ok) ? ratio : kInf;
    return finish(r);
}

std::string to_string(Functional h) {
    switch (h) {
        case Functional::constant: return "1";
        case Functional::value: return "L";
        case Functional::supremum: return "L*";
        case Functional::supremum_above_two: return "1{L*>2}";
    }
    return "?";
}

namespace {

double evaluate(Functional h, double value, double sup) {
    switch (h) {
        case Functional::constant: return 1.0;
        case Functional::value: return value;
        case Functional::supremum: return sup;
        case Functional::supremum_above_two: return sup > 2.0 ? 1.0 : 0.0;
    }
    return 0.0;
}

std::string time_label(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

}  // namespace

StatReport martingale_orthogonality_test(std::span<const CheckpointRecord> records,
                                         std::span<const double> checkpoints, double horizon,
                                         std::span<const Functional> functionals, double n_sigma,
                                         bool tail_completion_used) {
    if (records.empty()) throw std::invalid_argument("martingale_orthogonality_test: no paths");
    for (double t : checkpoints) {
        if (!(t >= 0.0) || t > horizon) {
            throw std::invalid_argument("martingale_orthogonality_test: checkpoint beyond horizon");
        }
    }
    const std::size_t nc = checkpoints.size();
    for (const auto& rec : records) {
        if (rec.value.size() != nc || rec.supremum.size() != nc || rec.z.size() != nc || rec.m.size() != nc ||
            rec.rho_after.size() != nc) {
            throw std::invalid_argument("martingale_orthogonality_test: record does not match checkpoints");
        }
    }

    StatReport r;
    r.test_name = "martingale_orthogonality";
    r.sample_size = records.size();
    r.threshold = n_sigma;
    r.tail_completion_used = tail_completion_used;
    r.statistic = 0.0;
    auto rows = nlohmann::ordered_json::array();
    std::vector<double> buf(records.size());

    auto record_check = [&](std::string label, double target_mean) {
        const MeanEstimate e = estimate_mean(buf);
        const double z = z_score(e, target_mean);
        r.statistic = std::max(r.statistic, z);
        rows.push_back({{"check", std::move(label)}, {"mean", e.mean}, {"std_error", e.std_error}, {"z", z}});
    };

    for (std::size_t ti = 0; ti < nc; ++ti) {
        // s = 0 first (M_0 = 1, L_0 = L*_0 = 1), then earlier checkpoints
        for (std::size_t si = 0; si <= nc; ++si) {
            const bool origin = si == nc;
            if (!origin && !(checkpoints[si] < checkpoints[ti])) continue;
            const double s_time = origin ? 0.0 : checkpoints[si];
            for (Functional h : functionals) {
                for (std::size_t j = 0; j < records.size(); ++j) {
                    const auto& rec = records[j];
                    const double ms = origin ? 1.0 : rec.m[si];
                    const double hv = origin ? evaluate(h, 1.0, 1.0) : evaluate(h, rec.value[si], rec.supremum[si]);
                    buf[j] = (rec.m[ti] - ms) * hv;
                }
                record_check("E[(M_" + time_label(checkpoints[ti]) + " - M_" + time_label(s_time) + ") " +
                                 to_string(h) + "] = 0",
                             0.0);
            }
        }
        for (Functional h : functionals) {
            for (std::size_t j = 0; j < records.size(); ++j) {
                const auto& rec = records[j];
                buf[j] = ((rec.rho_after[ti] ? 1.0 : 0.0) - rec.z[ti]) * evaluate(h, rec.value[ti], rec.supremum[ti]);
            }
            record_check("E[(1{rho > " + time_label(checkpoints[ti]) + "} - Z) " + to_string(h) + "] = 0", 0.0);
        }
    }
    r.metadata["checks"] = rows;
    r.metadata["n_sigma"] = n_sigma;
    return finish(r);
}

StatReport uniqueness_and_z_one_test(std::span<const UniquenessRecord> records, bool expect_unattained) {
    std::size_t distinct = 0, unattained = 0, z_not_one = 0;
    for (const auto& rec : records) {
        if (rec.rho_min.grid_index != rec.rho_max.grid_index) ++distinct;
        if (!rec.rho_min.is_finite() && !rec.completion_applied) ++unattained;
        if (rec.rho_min.is_finite() && rec.z_at_rho != 1.0) ++z_not_one;
    }
    StatReport r;
    r.test_name = expect_unattained ? "uniqueness_and_z_one/counterexample" : "uniqueness_and_z_one";
    r.sample_size = records.size();
    r.threshold = 0.0;
    const auto missing = static_cast<double>(records.size() - unattained);
    r.statistic = static_cast<double>(distinct + z_not_one) + (expect_unattained ? missing : static_cast<double>(unattained));
    r.metadata["rho_min_ne_rho_max"] = distinct;
    r.metadata["rho_min_infinite"] = unattained;
    r.metadata["z_at_rho_ne_one"] = z_not_one;
    r.metadata["expect_unattained"] = expect_unattained;
    if (records.empty()) r.statistic = kInf;
    return finish(r);
}

StatReport pathwise_identity_test(const IdentityViolations& v, std::size_t paths, std::size_t points) {
    StatReport r;
    r.test_name = "pathwise_identities";
    r.sample_size = paths;
    r.threshold = 0.0;
    r.statistic = static_cast<double>(v.total());
    r.metadata["grid_points_checked"] = points;
    r.metadata["z_times_sup_ne_value"] = v.z_times_sup;
    r.metadata["one_minus_k_times_sup_ne_one"] = v.one_minus_k;
    r.metadata["m_ne_z_plus_a"] = v.m_equals_z_plus_a;
    r.metadata["k_not_monotone"] = v.k_monotone;
    r.metadata["a_not_monotone"] = v.a_monotone;
    r.metadata["z_outside_unit_interval"] = v.z_range;
    r.metadata["z_at_rho_ne_one"] = v.z_at_rho;
    if (paths == 0) r.statistic = kInf;
    return finish(r);
}

StatReport eta_expectation_test(std::span<const double> u_levels, std::span<const std::vector<double>> samples,
                                double n_sigma, bool tail_completion_used) {
    if (u_levels.size() != samples.size() || u_levels.empty()) {
        throw std::invalid_argument("eta_expectation_test: one sample per level required");
    }
    StatReport r;
    r.test_name = "time_change";
    r.sample_size = samples.front().size();
    r.threshold = n_sigma;
    r.tail_completion_used = tail_completion_used;
    r.statistic = 0.0;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < u_levels.size(); ++i) {
        const MeanEstimate e = estimate_mean(samples[i]);
        const double z = z_score(e, 1.0);
        r.statistic = std::max(r.statistic, z);
        rows.push_back({{"u", u_levels[i]}, {"mean", e.mean}, {"std_error", e.std_error}, {"z", z}});
    }
    r.metadata["levels"] = rows;
    r.metadata["n_sigma"] = n_sigma;
    return finish(r);
}

}  // namespace honest
