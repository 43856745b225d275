#include "honest/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace honest {

namespace {

std::ofstream open_for_write(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + file.string() + "'");
    return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& file) {
    out.close();
    if (!out) throw IoError("write to '" + file.string() + "' failed");
}

// Shortest round-trip text; inf and nan spelled out.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_reports_json(const std::filesystem::path& file, const ExperimentConfig& config,
                        const std::vector<StatReport>& reports) {
    nlohmann::ordered_json doc;
    doc["seed"] = config.seed;
    auto cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : to_settings(config)) cfg[k] = v;
    doc["config"] = cfg;
    doc["all_passed"] = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    doc["reports"] = arr;

    auto out = open_for_write(file);
    out << doc.dump(2) << '\n';
    close_checked(out, file);
}

void write_samples_csv(const std::filesystem::path& file, const Collection& col) {
    auto out = open_for_write(file);
    out << kSamplesCsvHeader << '\n';
    for (const auto& p : col.paths) {
        out << p.path_index << ',' << num(p.terminal_sup) << ',' << num(p.completed_sup) << ','
            << num(p.rho_min.exact_time) << ',' << (p.rho_min.is_finite() ? 0 : 1) << ',' << num(p.k_at_rho) << ','
            << num(p.a_horizon) << ',' << (p.absorbed ? 1 : 0) << '\n';
    }
    close_checked(out, file);
}

std::vector<std::filesystem::path> write_plotdata(const std::filesystem::path& dir, const Collection& col) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "'");
    std::vector<std::filesystem::path> written;

    const bool bridge = col.config.bridge_correction && col.config.family != Family::exp_jump_counterexample;
    std::vector<double> sups;
    for (const auto& p : col.paths) sups.push_back(bridge ? p.bridge_sup : p.terminal_sup);
    std::sort(sups.begin(), sups.end());
    const double n = static_cast<double>(sups.size());
    {
        const auto file = dir / "tail.csv";
        auto out = open_for_write(file);
        out << "x,empirical,theoretical\n";
        for (int i = 0; i <= 64; ++i) {
            const double x = std::pow(100.0, i / 64.0);
            const auto above = sups.end() - std::upper_bound(sups.begin(), sups.end(), x);
            out << num(x) << ',' << num(static_cast<double>(above) / n) << ',' << num(1.0 / x) << '\n';
        }
        close_checked(out, file);
        written.push_back(file);
    }

    std::vector<double> ks;
    for (const auto& p : col.paths) {
        if (!std::isnan(p.k_at_rho)) ks.push_back(p.k_at_rho);
    }
    std::sort(ks.begin(), ks.end());
    {
        const auto file = dir / "k_cdf.csv";
        auto out = open_for_write(file);
        out << "u,empirical,uniform\n";
        for (int i = 0; i <= 100; ++i) {
            const double u = i / 100.0;
            const auto below = std::upper_bound(ks.begin(), ks.end(), u) - ks.begin();
            const double cdf = ks.empty() ? 0.0 : static_cast<double>(below) / static_cast<double>(ks.size());
            out << num(u) << ',' << num(cdf) << ',' << num(u) << '\n';
        }
        close_checked(out, file);
        written.push_back(file);
    }
    return written;
}

}  // namespace honest
