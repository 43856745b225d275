#include "honest/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include "honest/rng.hpp"

namespace honest {

namespace {

// Running supremum of Brownian bridges between consecutive points of a
// walk with per-step variance `var`. Only the intervals that can beat the
// current supremum need the square root: the bridge maximum
//   m = (a + b + sqrt((b - a)^2 + 2 var E)) / 2,   E ~ Exp(1),
// exceeds s iff (b - a)^2 + 2 var E > (2 s - a - b)^2 (when b < s).
class BridgeMaxSampler {
public:
    BridgeMaxSampler(Engine engine, double var, double start) : engine_(engine), var_(var), sup_(start) {}

    double advance(double a, double b) {
        const double e = exp_(engine_);
        const double gap = 2.0 * sup_ - a - b;
        const double d = (b - a) * (b - a) + 2.0 * var_ * e;
        if (b >= sup_ || d > gap * gap) {
            sup_ = std::max(sup_, 0.5 * (a + b + std::sqrt(d)));
        }
        return sup_;
    }

    double sup() const noexcept { return sup_; }

private:
    Engine engine_;
    boost::random::exponential_distribution<double> exp_{1.0};
    double var_;
    double sup_;
};

SamplePath generate_geometric(const GeneratorSpec& spec, std::uint64_t path_index) {
    const TimeGrid& grid = spec.grid;
    const std::size_t n = grid.point_count();
    const double var = spec.sigma * spec.sigma * grid.step();
    const double vol = std::sqrt(var);
    const double drift = -0.5 * var;

    Engine engine = stream_engine(spec.seed, path_index, RandomStream::increments);
    boost::random::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> values(n);
    std::vector<double> bridge;
    values[0] = 1.0;
    double log_value = 0.0;

    if (spec.bridge_correction) {
        bridge.resize(n);
        bridge[0] = 1.0;
        BridgeMaxSampler sampler(stream_engine(spec.seed, path_index, RandomStream::bridge), var, 0.0);
        double log_sup = 0.0;
        double sup = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            const double next = log_value + drift + vol * normal(engine);
            values[k] = std::exp(next);
            const double candidate = sampler.advance(log_value, next);
            if (candidate != log_sup) {
                log_sup = candidate;
                sup = std::exp(log_sup);
            }
            bridge[k] = std::max(sup, std::max(values[k], bridge[k - 1]));
            log_value = next;
        }
    } else {
        for (std::size_t k = 1; k < n; ++k) {
            log_value = log_value + drift + vol * normal(engine);  // same rounding as the bridge branch
            values[k] = std::exp(log_value);
        }
    }
    return SamplePath(grid, std::move(values), {}, std::nullopt, std::move(bridge));
}

SamplePath generate_stopped_brownian(const GeneratorSpec& spec, std::uint64_t path_index) {
    const TimeGrid& grid = spec.grid;
    const std::size_t n = grid.point_count();
    const double var = grid.step();
    const double vol = std::sqrt(var);

    Engine engine = stream_engine(spec.seed, path_index, RandomStream::increments);
    boost::random::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> values(n, 0.0);
    std::vector<double> bridge;
    values[0] = 1.0;
    std::optional<BridgeMaxSampler> sampler;
    if (spec.bridge_correction) {
        bridge.assign(n, 1.0);
        sampler.emplace(stream_engine(spec.seed, path_index, RandomStream::bridge), var, 1.0);
    }

    double w = 1.0;
    std::size_t k = 1;
    for (; k < n; ++k) {
        const double next = w + vol * normal(engine);
        if (sampler) bridge[k] = std::max(sampler->advance(w, next), bridge[k - 1]);
        if (next <= 0.0) break;  // absorbed: values stay 0 from k on
        values[k] = next;
        w = next;
    }
    if (sampler) {
        for (std::size_t j = k + 1; j < n; ++j) bridge[j] = bridge[k];
    }
    return SamplePath(grid, std::move(values), {}, std::nullopt, std::move(bridge));
}

SamplePath generate_exp_jump(const GeneratorSpec& spec, std::uint64_t path_index) {
    const TimeGrid& grid = spec.grid;
    Engine engine = stream_engine(spec.seed, path_index, RandomStream::increments);
    boost::random::exponential_distribution<double> exponential(1.0);
    const double tau = exponential(engine);

    std::vector<double> values(grid.point_count(), 0.0);
    values[0] = 1.0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        const double t = grid.time(k);
        if (!(t < tau)) break;
        values[k] = std::exp(t);
    }
    const double jump_level = std::exp(tau);
    return SamplePath(grid, std::move(values), {Jump{tau, jump_level, 0.0}}, jump_level);
}

}  // namespace

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::stopped_brownian: return "stopped_brownian";
        case Family::geometric_brownian: return "geometric_brownian";
        case Family::exp_jump_counterexample: return "exp_jump_counterexample";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    if (name == "stopped_brownian" || name == "brownian") return Family::stopped_brownian;
    if (name == "geometric_brownian" || name == "gbm") return Family::geometric_brownian;
    if (name == "exp_jump_counterexample" || name == "exp_jump") return Family::exp_jump_counterexample;
    throw std::invalid_argument("unknown generator family '" + std::string(name) + "'");
}

SamplePath generate(const GeneratorSpec& spec, std::uint64_t path_index) {
    if (spec.family == Family::geometric_brownian && !(spec.sigma > 0.0)) {
        throw std::invalid_argument("generate: sigma must be positive");
    }
    switch (spec.family) {
        case Family::geometric_brownian: return generate_geometric(spec, path_index);
        case Family::stopped_brownian: return generate_stopped_brownian(spec, path_index);
        case Family::exp_jump_counterexample: return generate_exp_jump(spec, path_index);
    }
    throw std::logic_error("generate: unhandled family");
}

TailCompletion tail_complete(const SamplePath& path, const SupremumPath& sup, double uniform_draw) {
    if (!path.jumps().empty() || path.analytic_terminal_sup()) {
        throw std::invalid_argument("tail_complete: jump paths have no continuous tail to complete");
    }
    if (path.absorbed()) {
        throw std::invalid_argument("tail_complete: path is absorbed before the horizon");
    }
    if (!(uniform_draw > 0.0 && uniform_draw <= 1.0)) {
        throw std::invalid_argument("tail_complete: uniform draw must lie in (0, 1]");
    }
    TailCompletion out;
    out.applied = true;
    out.future_max = path.terminal_value() / uniform_draw;
    out.beyond_horizon = out.future_max > sup.terminal;
    out.completed_terminal_sup = std::max(sup.terminal, out.future_max);
    return out;
}

double completion_draw(const GeneratorSpec& spec, std::uint64_t path_index) {
    Engine engine = stream_engine(spec.seed, path_index, RandomStream::completion);
    boost::random::uniform_01<double> uniform;
    return 1.0 - uniform(engine);
}

std::string describe(const StoppingRule& rule) {
    std::ostringstream os;
    if (const auto* d = std::get_if<DeterministicTime>(&rule)) {
        os << "deterministic(" << d->t << ")";
    } else {
        os << "level_hit(" << std::get<LevelHit>(rule).level << ")";
    }
    return os.str();
}

RandomTimeSample sample_stopping_time(const SamplePath& path, const StoppingRule& rule) {
    const TimeGrid& grid = path.grid();
    if (const auto* d = std::get_if<DeterministicTime>(&rule)) {
        if (!(d->t >= 0.0) || d->t > grid.horizon()) {
            throw std::invalid_argument("sample_stopping_time: deterministic time outside [0, horizon]");
        }
        const std::size_t k = std::min(grid.index_at_or_after(d->t), grid.point_count() - 1);
        return RandomTimeSample::at(RandomTimeKind::stopping_time, k, grid.time(k), path.value(k));
    }
    const double level = std::get<LevelHit>(rule).level;
    if (!(level > 0.0)) {
        throw std::invalid_argument("sample_stopping_time: level must be positive");
    }
    const auto values = path.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] >= level) {
            return RandomTimeSample::at(RandomTimeKind::stopping_time, k, grid.time(k), values[k]);
        }
    }
    return RandomTimeSample::infinite(RandomTimeKind::stopping_time);
}

}  // namespace honest
