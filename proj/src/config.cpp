#include "honest/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace honest {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    // accepts plain decimals plus 2^-k shorthand for dyadic steps
    const std::string v = trim(text);
    if (v.rfind("2^", 0) == 0) {
        return std::ldexp(1.0, static_cast<int>(parse_double(key, v.substr(2))));
    }
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("config: '" + key + "' expects a nonnegative integer, got '" + text + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("config: '" + key + "' expects true/false, got '" + text + "'");
}

std::vector<double> parse_doubles(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
    return out;
}

StoppingRule parse_rule(const std::string& key, const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("config: '" + key + "' entries look like deterministic:1 or level_hit:1.5");
    }
    const std::string kind = trim(text.substr(0, colon));
    const double arg = parse_double(key, text.substr(colon + 1));
    if (kind == "deterministic") return DeterministicTime{arg};
    if (kind == "level_hit") return LevelHit{arg};
    throw ConfigError("config: unknown stopping rule '" + kind + "'");
}

std::string join_doubles(const std::vector<double>& xs) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    return os.str();
}

bool strictly_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] < xs[i - 1])) return false;
    }
    return true;
}

bool is_multiple(double coarse, double fine) {
    const double ratio = coarse / fine;
    return ratio >= 1.0 - 1e-12 && std::abs(ratio - std::round(ratio)) <= 1e-9 * ratio;
}

}  // namespace

const std::vector<std::string>& known_tests() {
    static const std::vector<std::string> names = {
        "doob_tail",   "ks_uniform",          "avoidance", "martingale_orthogonality", "uniqueness_and_z_one",
        "time_change", "pathwise_identities",
    };
    return names;
}

GeneratorSpec ExperimentConfig::generator() const {
    GeneratorSpec spec;
    spec.family = family;
    spec.sigma = sigma;
    try {
        spec.grid = TimeGrid::from_horizon(step, horizon);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    spec.seed = seed;
    spec.tail_completion = tail_completion;
    spec.bridge_correction = bridge_correction;
    return spec;
}

std::vector<double> ExperimentConfig::effective_refinement_steps() const {
    if (!refinement_steps.empty()) return refinement_steps;
    return {16.0 * step, 4.0 * step, step};
}

std::vector<std::string> validate(const ExperimentConfig& c) {
    std::vector<std::string> out;
    if (c.path_count < 1) out.push_back("paths must be at least 1");
    if (!(c.step > 0.0)) out.push_back("step must be positive");
    if (!(c.horizon > 0.0)) out.push_back("horizon must be positive");
    if (c.step > 0.0 && c.horizon > 0.0 && !is_multiple(c.horizon, c.step)) {
        out.push_back("horizon must be an integer multiple of step");
    }
    if (c.family == Family::geometric_brownian && !(c.sigma > 0.0)) out.push_back("sigma must be positive");
    if (c.bridge_correction && c.family == Family::exp_jump_counterexample) {
        out.push_back("bridge_correction applies only to the Brownian families");
    }
    for (const auto& t : c.tests) {
        if (std::find(known_tests().begin(), known_tests().end(), t) == known_tests().end()) {
            out.push_back("unknown test '" + t + "'");
        }
    }
    if (c.tests.empty()) out.push_back("no tests selected");
    for (const auto& e : c.emit) {
        if (e != "csv" && e != "json" && e != "plotdata") out.push_back("unknown emit kind '" + e + "'");
    }
    if (c.output_dir.empty()) out.push_back("output directory is empty");

    if (!strictly_decreasing(c.refinement_steps)) out.push_back("refinement steps must be strictly decreasing");
    if (c.step > 0.0) {
        for (double s : c.refinement_steps) {
            if (!(s > 0.0) || !is_multiple(s, c.step) || (c.horizon > 0.0 && !is_multiple(c.horizon, s))) {
                out.push_back("refinement step " + join_doubles({s}) + " must be a multiple of step dividing horizon");
            }
        }
        if (c.refinement_steps.empty() && c.horizon > 0.0 && !is_multiple(c.horizon, 16.0 * c.step)) {
            out.push_back("default refinement needs horizon to be a multiple of 16 * step");
        }
    }
    for (double x : c.tail_levels) {
        if (!(x > 1.0)) out.push_back("tail levels must exceed 1");
    }
    for (double u : c.u_levels) {
        if (!(u >= 0.0 && u < 1.0)) out.push_back("u levels must lie in [0, 1)");
    }
    for (double t : c.checkpoints) {
        if (!(t >= 0.0) || t > c.horizon) out.push_back("checkpoint " + join_doubles({t}) + " is beyond the horizon");
    }
    for (const auto& rule : c.stopping_rules) {
        if (const auto* d = std::get_if<DeterministicTime>(&rule)) {
            if (!(d->t >= 0.0) || d->t > c.horizon) out.push_back("deterministic stopping time beyond the horizon");
        } else if (!(std::get<LevelHit>(rule).level > 0.0)) {
            out.push_back("level_hit level must be positive");
        }
    }
    if (!(c.n_sigma > 0.0)) out.push_back("n_sigma must be positive");
    if (!(c.ks_alpha > 0.0 && c.ks_alpha < 1.0)) out.push_back("ks_alpha must lie in (0, 1)");
    if (!(c.ks_inflation >= 1.0)) out.push_back("ks_inflation must be at least 1");
    return out;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(body.substr(eq + 1));
    }
    return out;
}

void apply_settings(ExperimentConfig& c, const std::map<std::string, std::string>& settings) {
    for (const auto& [key, value] : settings) {
        if (key == "generator") {
            try {
                c.family = family_from_string(trim(value));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("config: ") + e.what());
            }
        } else if (key == "sigma") {
            c.sigma = parse_double(key, value);
        } else if (key == "step") {
            c.step = parse_double(key, value);
        } else if (key == "horizon") {
            c.horizon = parse_double(key, value);
        } else if (key == "seed") {
            c.seed = parse_unsigned(key, value);
        } else if (key == "paths") {
            c.path_count = parse_unsigned(key, value);
        } else if (key == "tail_completion") {
            c.tail_completion = parse_bool(key, value);
        } else if (key == "bridge_correction") {
            c.bridge_correction = parse_bool(key, value);
        } else if (key == "tests") {
            c.tests = split_list(value);
        } else if (key == "refinement_steps") {
            c.refinement_steps = parse_doubles(key, value);
        } else if (key == "out") {
            c.output_dir = trim(value);
        } else if (key == "emit") {
            const auto items = split_list(value);
            c.emit = {items.begin(), items.end()};
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(parse_unsigned(key, value));
        } else if (key == "tail_levels") {
            c.tail_levels = parse_doubles(key, value);
        } else if (key == "u_levels") {
            c.u_levels = parse_doubles(key, value);
        } else if (key == "checkpoints") {
            c.checkpoints = parse_doubles(key, value);
        } else if (key == "stopping_times") {
            c.stopping_rules.clear();
            for (const auto& item : split_list(value)) c.stopping_rules.push_back(parse_rule(key, item));
        } else if (key == "n_sigma") {
            c.n_sigma = parse_double(key, value);
        } else if (key == "ks_alpha") {
            c.ks_alpha = parse_double(key, value);
        } else if (key == "ks_inflation") {
            c.ks_inflation = parse_double(key, value);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    ExperimentConfig config;
    apply_settings(config, parse_key_values(in));
    return config;
}

std::map<std::string, std::string> to_settings(const ExperimentConfig& c) {
    std::map<std::string, std::string> out;
    out["generator"] = std::string(to_string(c.family));
    out["sigma"] = join_doubles({c.sigma});
    out["step"] = join_doubles({c.step});
    out["horizon"] = join_doubles({c.horizon});
    out["seed"] = std::to_string(c.seed);
    out["paths"] = std::to_string(c.path_count);
    out["tail_completion"] = c.tail_completion ? "true" : "false";
    out["bridge_correction"] = c.bridge_correction ? "true" : "false";
    std::string tests;
    for (const auto& t : c.tests) tests += (tests.empty() ? "" : ",") + t;
    out["tests"] = tests;
    out["refinement_steps"] = join_doubles(c.effective_refinement_steps());
    out["tail_levels"] = join_doubles(c.tail_levels);
    out["u_levels"] = join_doubles(c.u_levels);
    out["checkpoints"] = join_doubles(c.checkpoints);
    std::string rules;
    for (const auto& r : c.stopping_rules) {
        if (const auto* d = std::get_if<DeterministicTime>(&r)) {
            rules += (rules.empty() ? "" : ",") + ("deterministic:" + join_doubles({d->t}));
        } else {
            rules += (rules.empty() ? "" : ",") + ("level_hit:" + join_doubles({std::get<LevelHit>(r).level}));
        }
    }
    out["stopping_times"] = rules;
    out["n_sigma"] = join_doubles({c.n_sigma});
    out["ks_alpha"] = join_doubles({c.ks_alpha});
    out["ks_inflation"] = join_doubles({c.ks_inflation});
    return out;
}

}  // namespace honest
