#include "honest/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "honest/path_core.hpp"
#include "honest/report_io.hpp"

namespace honest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool selected(const ExperimentConfig& c, std::string_view test) {
    return std::find(c.tests.begin(), c.tests.end(), test) != c.tests.end();
}

std::size_t factor_for(double coarse, double fine) {
    return static_cast<std::size_t>(std::llround(coarse / fine));
}

}  // namespace

PathSummary summarize_path(const ExperimentConfig& config, const GeneratorSpec& spec, std::uint64_t path_index,
                           IdentityViolations* identity_totals) {
    const SamplePath path = generate(spec, path_index);
    const TimeGrid& grid = path.grid();
    const auto values = path.values();

    PathSummary s;
    s.path_index = path_index;
    s.absorbed = path.absorbed();

    const SupremumPath grid_sup = running_supremum(path);
    s.terminal_sup = grid_sup.terminal;
    s.rho_min = rho_min(path, grid_sup);
    s.rho_max = rho_max(path, grid_sup);

    if ((values.size() - 1) % 2 == 0 && values.size() > 1) {
        double coarse = values[0];
        for (std::size_t k = 2; k < values.size(); k += 2) coarse = std::max(coarse, values[k]);
        s.coarse_terminal_sup = coarse;
    } else {
        s.coarse_terminal_sup = kNaN;
    }

    const DecompositionBundle grid_bundle = decompose(path, grid_sup);
    s.a_horizon = grid_bundle.a.back();
    s.z_at_rho = s.rho_min.is_finite() ? grid_bundle.z[s.rho_min.grid_index] : kNaN;

    // The primary supremum is the bridge one when sampled; it drives K_rho,
    // the checkpoint projections and the martingale part.
    const bool use_bridge = path.has_bridge_sup();
    const SupremumPath primary_sup = use_bridge ? bridge_supremum(path) : grid_sup;
    s.bridge_sup = use_bridge ? primary_sup.terminal : kNaN;

    if (spec.tail_completion && spec.continuous_family() && !path.absorbed()) {
        s.completion = tail_complete(path, primary_sup, completion_draw(spec, path_index));
    }
    s.completed_sup = s.completion.applied ? s.completion.completed_terminal_sup : primary_sup.terminal;

    // The bridge decomposition is only read at the checkpoints; K_rho needs
    // nothing beyond the bridge K, which is 1 - 1/(bridge sup).
    const bool need_bridge_bundle = use_bridge && selected(config, "martingale_orthogonality");
    DecompositionBundle bridge_bundle;
    if (need_bridge_bundle) {
        bridge_bundle = decompose(path, primary_sup);
    } else if (use_bridge) {
        bridge_bundle.k = k_process(primary_sup);
    }
    const DecompositionBundle& primary_bundle = use_bridge ? bridge_bundle : grid_bundle;
    const RandomTimeSample primary_rho = use_bridge ? time_of_supremum(primary_sup) : s.rho_min;
    try {
        s.k_at_rho = k_at_rho(primary_bundle, primary_rho, s.completion);
    } catch (const std::domain_error&) {
        s.k_at_rho = kNaN;
    }

    if (path.analytic_terminal_sup()) {
        s.attains_analytic_sup =
            std::find(values.begin(), values.end(), *path.analytic_terminal_sup()) != values.end();
    }
    if (!path.jumps().empty()) {
        const Jump& jump = path.jumps().front();
        const std::size_t k = grid.index_at_or_after(jump.time);
        s.value_at_jump = k < values.size() ? values[k] : jump.post_value;
    } else {
        s.value_at_jump = kNaN;
    }

    if (selected(config, "time_change")) {
        s.eta.reserve(config.u_levels.size());
        for (double u : config.u_levels) {
            const RandomTimeSample eta = time_change_eta(grid, grid_bundle.k, u);
            const double level = 1.0 / (1.0 - u);
            if (eta.is_finite()) {
                s.eta.push_back(values[eta.grid_index]);
            } else if (s.completion.applied && s.completion.future_max >= level) {
                // K reaches u after the horizon, where the continuous path sits at its supremum
                s.eta.push_back(level);
            } else {
                s.eta.push_back(0.0);
            }
        }
        std::tie(s.identity_lhs, s.identity_rhs) =
            time_change_identity_check(path, grid_bundle.k, grid_bundle.a, TestFunction::identity);
    }

    if (selected(config, "martingale_orthogonality")) {
        const std::size_t primary_rho_index = primary_rho.grid_index;
        const bool rho_beyond = s.completion.applied && s.completion.beyond_horizon;
        for (double t : config.checkpoints) {
            const std::size_t c = std::min(grid.index_at_or_after(t), values.size() - 1);
            s.checkpoints.value.push_back(values[c]);
            s.checkpoints.supremum.push_back(primary_sup.values[c]);
            s.checkpoints.z.push_back(primary_bundle.z[c]);
            s.checkpoints.m.push_back(primary_bundle.m[c]);
            s.checkpoints.rho_after.push_back(rho_beyond || primary_rho_index > c);
        }
    }

    if (selected(config, "avoidance")) {
        const auto steps = config.effective_refinement_steps();
        s.refinement_tau.assign(config.stopping_rules.size(), {});
        for (double step : steps) {
            const std::size_t factor = factor_for(step, grid.step());
            const SamplePath coarse = factor == 1 ? path : path.subsampled(factor);
            s.refinement_rho.push_back(rho_min(coarse, running_supremum(coarse)).grid_index);
            for (std::size_t r = 0; r < config.stopping_rules.size(); ++r) {
                s.refinement_tau[r].push_back(sample_stopping_time(coarse, config.stopping_rules[r]).grid_index);
            }
        }
    }

    if (identity_totals != nullptr) {
        *identity_totals += check_identities(path, grid_sup, grid_bundle, s.rho_min);
    }
    return s;
}

Collection collect(const ExperimentConfig& config) {
    const GeneratorSpec spec = config.generator();
    Collection out;
    out.config = config;
    out.paths.resize(config.path_count);
    const bool check = selected(config, "pathwise_identities");

    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, config.path_count)));

    std::atomic<std::size_t> next{0};
    std::mutex merge;
    std::exception_ptr failure;
    auto worker = [&] {
        IdentityViolations local;
        try {
            for (std::size_t i = next++; i < config.path_count; i = next++) {
                out.paths[i] = summarize_path(config, spec, i, check ? &local : nullptr);
            }
        } catch (...) {
            std::lock_guard lock(merge);
            if (!failure) failure = std::current_exception();
            next = config.path_count;
        }
        std::lock_guard lock(merge);
        out.identity_totals += local;
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    if (check) out.identity_points = config.path_count * spec.grid.point_count();
    return out;
}

std::vector<StatReport> evaluate(const Collection& col) {
    const ExperimentConfig& c = col.config;
    const bool completion = c.tail_completion && c.family != Family::exp_jump_counterexample;
    std::vector<StatReport> reports;

    for (const auto& test : c.tests) {
        if (test == "doob_tail") {
            const bool bridge = c.bridge_correction && c.family != Family::exp_jump_counterexample;
            TerminalSupSample sample;
            TerminalSupSample grid_only;
            TerminalSupSample coarse;
            for (const auto& p : col.paths) {
                sample.sups.push_back(bridge ? p.bridge_sup : p.terminal_sup);
                grid_only.sups.push_back(p.terminal_sup);
                coarse.sups.push_back(p.coarse_terminal_sup);
            }
            const double allowance = c.family == Family::exp_jump_counterexample ? 0.0 : 3.0 * std::sqrt(c.step);
            StatReport r = doob_tail_test(sample, c.tail_levels, c.n_sigma, allowance);
            r.metadata["supremum_source"] = c.family == Family::exp_jump_counterexample ? "analytic"
                                            : bridge                                     ? "bridge"
                                                                                         : "grid";
            r.metadata["step"] = c.step;
            r.metadata["seed"] = c.seed;
            r.metadata["doob_inequality_holds"] = doob_inequality_test(grid_only, c.tail_levels, c.n_sigma).passed;
            if (c.family != Family::exp_jump_counterexample && !std::isnan(col.paths.front().coarse_terminal_sup)) {
                auto rows = nlohmann::ordered_json::array();
                const auto fine = doob_tail_test(grid_only, c.tail_levels, c.n_sigma, allowance);
                const auto half = doob_tail_test(coarse, c.tail_levels, c.n_sigma, allowance);
                for (std::size_t i = 0; i < c.tail_levels.size(); ++i) {
                    rows.push_back({{"x", c.tail_levels[i]},
                                    {"deviation_at_step", fine.metadata["levels"][i]["deviation"]},
                                    {"deviation_at_twice_step", half.metadata["levels"][i]["deviation"]}});
                }
                r.metadata["grid_step_halving"] = rows;
            }
            reports.push_back(std::move(r));
        } else if (test == "ks_uniform") {
            std::vector<double> ks;
            std::size_t undefined = 0;
            for (const auto& p : col.paths) {
                if (std::isnan(p.k_at_rho)) {
                    ++undefined;
                } else {
                    ks.push_back(p.k_at_rho);
                }
            }
            StatReport r;
            if (ks.empty()) {
                r.test_name = "ks_uniform";
                r.sample_size = col.paths.size();
                r.statistic = std::numeric_limits<double>::infinity();
                r.passed = false;
                r.tail_completion_used = completion;
            } else {
                r = ks_uniform_test(ks, c.ks_alpha, c.ks_inflation, completion);
            }
            r.metadata["undefined_k_at_rho"] = undefined;
            r.metadata["bridge_correction"] = c.bridge_correction;
            if (undefined > 0) {
                r.statistic = std::numeric_limits<double>::infinity();
                r.passed = false;
            }
            reports.push_back(std::move(r));
        } else if (test == "avoidance") {
            const auto steps = c.effective_refinement_steps();
            for (std::size_t rule = 0; rule < c.stopping_rules.size(); ++rule) {
                std::vector<CoincidenceSample> levels;
                for (std::size_t l = 0; l < steps.size(); ++l) {
                    CoincidenceSample level{steps[l], {}, {}};
                    for (const auto& p : col.paths) {
                        level.rho.push_back(p.refinement_rho[l]);
                        level.tau.push_back(p.refinement_tau[rule][l]);
                    }
                    levels.push_back(std::move(level));
                }
                reports.push_back(avoidance_test(levels, describe(c.stopping_rules[rule])));
            }
        } else if (test == "martingale_orthogonality") {
            std::vector<CheckpointRecord> records;
            records.reserve(col.paths.size());
            for (const auto& p : col.paths) records.push_back(p.checkpoints);
            const std::vector<Functional> library = {Functional::constant, Functional::value, Functional::supremum,
                                                     Functional::supremum_above_two};
            StatReport r =
                martingale_orthogonality_test(records, c.checkpoints, c.horizon, library, c.n_sigma, completion);
            r.metadata["bridge_correction"] = c.bridge_correction;
            reports.push_back(std::move(r));
        } else if (test == "uniqueness_and_z_one") {
            std::vector<UniquenessRecord> records;
            for (const auto& p : col.paths) {
                records.push_back({p.rho_min, p.rho_max, p.completion.applied, p.z_at_rho});
            }
            StatReport r = uniqueness_and_z_one_test(records, c.family == Family::exp_jump_counterexample);
            if (c.family == Family::exp_jump_counterexample) {
                std::size_t attained = 0, zero_at_jump = 0;
                for (const auto& p : col.paths) {
                    attained += p.attains_analytic_sup ? 1 : 0;
                    zero_at_jump += p.value_at_jump == 0.0 ? 1 : 0;
                }
                r.metadata["paths_attaining_analytic_sup"] = attained;
                r.metadata["paths_zero_at_jump"] = zero_at_jump;
            }
            reports.push_back(std::move(r));
        } else if (test == "time_change") {
            std::vector<std::vector<double>> samples(c.u_levels.size());
            std::vector<double> gaps;
            for (const auto& p : col.paths) {
                for (std::size_t i = 0; i < c.u_levels.size(); ++i) samples[i].push_back(p.eta[i]);
                gaps.push_back(p.identity_lhs - p.identity_rhs);
            }
            StatReport r = eta_expectation_test(c.u_levels, samples, c.n_sigma, completion);
            const MeanEstimate gap = estimate_mean(gaps);
            r.metadata["identity_f_u_mean_lhs_minus_rhs"] = gap.mean;
            r.metadata["identity_f_u_std_error"] = gap.std_error;
            reports.push_back(std::move(r));
        } else if (test == "pathwise_identities") {
            reports.push_back(pathwise_identity_test(col.identity_totals, col.paths.size(), col.identity_points));
        }
    }
    for (auto& r : reports) r.metadata["seed"] = c.seed;
    return reports;
}

RunOutcome run(const ExperimentConfig& config) {
    const auto problems = validate(config);
    if (!problems.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ConfigError(msg);
    }

    const std::filesystem::path dir(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + config.output_dir + "'");
    }

    const Collection col = collect(config);
    RunOutcome out;
    out.reports = evaluate(col);
    out.all_passed = std::all_of(out.reports.begin(), out.reports.end(), [](const auto& r) { return r.passed; });

    if (config.emit.contains("json")) {
        write_reports_json(dir / "reports.json", config, out.reports);
        out.written.push_back(dir / "reports.json");
    }
    if (config.emit.contains("csv")) {
        write_samples_csv(dir / "samples.csv", col);
        out.written.push_back(dir / "samples.csv");
    }
    if (config.emit.contains("plotdata")) {
        for (auto& p : write_plotdata(dir / "plotdata", col)) out.written.push_back(std::move(p));
    }
    return out;
}

void keep_large_allocations_in_heap() {
#if defined(__GLIBC__)
    mallopt(M_MMAP_THRESHOLD, 256 << 20);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
    mallopt(M_TOP_PAD, 64 << 20);
#endif
}

}  // namespace honest
