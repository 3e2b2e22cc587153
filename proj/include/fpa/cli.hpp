#pragma once

/**
 * @file cli.hpp
 * @brief Command implementations behind the `fpa` executable.
 *
 * Each command writes its primary output to `out`, diagnostics to `err`, and
 * returns the process exit status: 0 success, 2 argument error, 3 statistical
 * quality failure.
 */

#include "fpa/closed_forms.hpp"
#include "fpa/csv.hpp"
#include "fpa/mc.hpp"
#include "fpa/moments.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fpa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitQuality = 3;

/// Simulations whose censored fraction exceeds this fail with kExitQuality.
inline constexpr double kMaxCensoredFraction = 0.01;

enum class Format { text, csv };

struct SimulationFlags {
    bool simulate = false;
    std::size_t paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 42;
    bool no_bridge = false;
    std::optional<double> max_time;
    unsigned threads = 0;

    [[nodiscard]] SimConfig config(double x, double mu) const {
        SimConfig c;
        c.params = {x, mu};
        c.dt = dt;
        c.paths = paths;
        c.seed = seed;
        c.bridge_correction = !no_bridge;
        c.max_time = max_time;
        return c;
    }
};

/// Writes rows either as CSV or as a whitespace-aligned table.
class TableWriter {
public:
    TableWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    void flush() {
        if (format_ == Format::csv) {
            for (const auto& r : rows_) {
                for (std::size_t i = 0; i < r.size(); ++i) out_ << (i ? "," : "") << quote(r[i]);
                out_ << '\n';
            }
        } else {
            std::vector<std::size_t> widths;
            for (const auto& r : rows_) {
                widths.resize(std::max(widths.size(), r.size()), 0);
                for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
            }
            for (const auto& r : rows_) {
                for (std::size_t i = 0; i < r.size(); ++i) {
                    out_ << (i ? "  " : "") << r[i];
                    if (i + 1 < r.size()) out_ << std::string(widths[i] - r[i].size(), ' ');
                }
                out_ << '\n';
            }
        }
        rows_.clear();
    }

    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::vector<std::string>> rows_;
};

namespace detail {

inline bool censoring_ok(const std::vector<PassageSample>& samples, std::ostream& err) {
    const std::size_t c = censored_count(samples);
    const double frac = static_cast<double>(c) / static_cast<double>(samples.size());
    if (frac > kMaxCensoredFraction) {
        err << "error: censored fraction " << format_double(frac) << " exceeds "
            << format_double(kMaxCensoredFraction) << "\n";
        return false;
    }
    return true;
}

}  // namespace detail

struct MomentArgs {
    int m = 0;
    int n = 0;
    std::optional<double> x;
    std::optional<double> mu;
    Solver solver = Solver::back_substitution;
    Format format = Format::text;
};

/// Symbolic V_{m,n}; with x and mu also its numeric value.
inline int cmd_moment(const MomentArgs& a, std::ostream& out, std::ostream& err) {
    if (a.m < 0 || a.n < 0) {
        err << "error: --m and --n must be nonnegative\n";
        return kExitUsage;
    }
    if (a.x.has_value() != a.mu.has_value()) {
        err << "error: --x and --mu must be given together\n";
        return kExitUsage;
    }
    if (a.x && (!(*a.x >= 0.0) || !(*a.mu > 0.0))) {
        err << "error: need x >= 0 and mu > 0\n";
        return kExitUsage;
    }
    const Polynomial v = joint_moment({a.m, a.n}, a.solver);
    std::optional<double> value;
    if (a.x) value = v.evaluate(*a.x, *a.mu);

    if (a.format == Format::text) {
        out << v.to_text() << '\n';
        if (value) out << "value," << format_double(*value) << '\n';
    } else {
        TableWriter t(out, Format::csv);
        t.row({"m", "n", "polynomial", "x", "mu", "value"});
        t.row({std::to_string(a.m), std::to_string(a.n), v.to_text(), a.x ? format_double(*a.x) : "",
               a.mu ? format_double(*a.mu) : "", value ? format_double(*value) : ""});
        t.flush();
    }
    return kExitOk;
}

struct CorrelationArgs {
    double x = 10.0;
    std::vector<double> mu_list;
    SimulationFlags sim;
    Format format = Format::csv;
};

/// Exact correlation per drift, optionally alongside a Monte Carlo estimate.
inline int cmd_correlation(const CorrelationArgs& a, std::ostream& out, std::ostream& err) {
    if (!(a.x > 0.0) || a.mu_list.empty() ||
        std::any_of(a.mu_list.begin(), a.mu_list.end(), [](double mu) { return !(mu > 0.0); })) {
        err << "error: need x > 0 and a nonempty list of mu > 0\n";
        return kExitUsage;
    }
    TableWriter t(out, a.format);
    std::vector<std::string> header = {"gamma", "rho_exact"};
    if (a.sim.simulate) {
        header.emplace_back("rho_mc");
        header.emplace_back("rho_mc_stderr");
    }
    t.row(header);
    int status = kExitOk;
    for (double mu : a.mu_list) {
        const double gamma = mu * a.x;
        std::vector<std::string> r = {format_double(gamma), format_double(rho_exact(gamma))};
        if (a.sim.simulate) {
            const auto samples = run(a.sim.config(a.x, mu), a.sim.threads);
            if (!detail::censoring_ok(samples, err)) status = kExitQuality;
            const auto est = estimate_correlation(samples);
            r.push_back(format_double(est.estimate));
            r.push_back(format_double(est.std_error));
        }
        t.row(std::move(r));
    }
    t.flush();
    return status;
}

struct SimulateArgs {
    double x = 1.0;
    double mu = 1.0;
    SimulationFlags sim;
};

/// Sample dump to `out`; estimator summary to `report`.
inline int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& report) {
    const SimConfig config = a.sim.config(a.x, a.mu);
    try {
        config.validate();
        if (!(a.mu > 0.0) && !a.sim.max_time) throw std::invalid_argument("mu = 0 requires --max-time");
    } catch (const std::invalid_argument& e) {
        report << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const auto samples = run(config, a.sim.threads);
    write_samples_csv(out, samples);

    const std::size_t censored = censored_count(samples);
    report << "paths," << samples.size() << '\n';
    report << "censored," << censored << '\n';
    const std::size_t uncensored = samples.size() - censored;
    auto line = [&](const char* name, auto estimator) {
        try {
            const EstimatorSummary s = estimator();
            report << name << ',' << format_double(s.estimate) << ',' << format_double(s.std_error) << '\n';
        } catch (const std::runtime_error& e) {
            report << name << ",nan,nan  # " << e.what() << '\n';
        }
    };
    if (uncensored > 0) {
        line("mean_tau", [&] { return estimate_joint_moment(samples, 1, 0); });
        line("mean_area", [&] { return estimate_joint_moment(samples, 0, 1); });
        line("correlation", [&] { return estimate_correlation(samples); });
        line("time_average", [&] { return estimate_time_average(samples); });
    }
    return detail::censoring_ok(samples, report) ? kExitOk : kExitQuality;
}

struct DensityArgs {
    double x = 1.0;
    double mu = 1.0;
    std::size_t bins = 100;
    std::optional<double> range_max;
    SimulationFlags sim;
};

/// Mu values of the figure-1 preset (x = 1).
inline const std::vector<double> kFigure1Mu = {1.0, 1.1, 1.2, 1.3, 1.5, 2.0, 3.0};

inline int cmd_density(const DensityArgs& a, std::ostream& out, std::ostream& err) {
    if (a.bins < 2 || (a.range_max && !(*a.range_max > 0.0)) || !(a.mu > 0.0) || !(a.x > 0.0)) {
        err << "error: need x > 0, mu > 0, bins >= 2 and a positive range\n";
        return kExitUsage;
    }
    const auto samples = run(a.sim.config(a.x, a.mu), a.sim.threads);
    std::optional<std::pair<double, double>> range;
    if (a.range_max) range = std::pair{0.0, *a.range_max};
    write_histogram_csv(out, estimate_density(samples, a.bins, range));
    return detail::censoring_ok(samples, err) ? kExitOk : kExitQuality;
}

/// File name used by the figure-1 preset for drift mu.
inline std::string figure1_file_name(double mu) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, mu);  // shortest round-trip form
    return "density_x1_mu" + std::string(buf, res.ptr) + ".csv";
}

/// Runs the seven figure-1 drifts at x = 1, one histogram CSV per drift in `dir`.
inline int cmd_density_figure1(const DensityArgs& a, const std::filesystem::path& dir, std::ostream& log,
                               std::ostream& err) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    int status = kExitOk;
    for (double mu : kFigure1Mu) {
        DensityArgs one = a;
        one.x = 1.0;
        one.mu = mu;
        const auto path = dir / figure1_file_name(mu);
        std::ofstream f(path);
        if (!f) {
            err << "error: cannot write " << path.string() << '\n';
            return kExitUsage;
        }
        const int s = cmd_density(one, f, err);
        if (s == kExitUsage) return s;
        if (s != kExitOk) status = s;
        log << path.string() << '\n';
    }
    return status;
}

struct TimeAverageArgs {
    double x = 1.0;
    double mu = 1.0;
    SimulationFlags sim;
    Format format = Format::text;
};

inline int cmd_time_average(const TimeAverageArgs& a, std::ostream& out, std::ostream& err) {
    if (!(a.x > 0.0) || !(a.mu > 0.0)) {
        err << "error: need x > 0 and mu > 0\n";
        return kExitUsage;
    }
    const double exact = expected_time_average({a.x, a.mu});
    TableWriter t(out, a.format);
    std::vector<std::string> header = {"x", "mu", "exact"};
    std::vector<std::string> r = {format_double(a.x), format_double(a.mu), format_double(exact)};
    int status = kExitOk;
    if (a.sim.simulate) {
        const auto samples = run(a.sim.config(a.x, a.mu), a.sim.threads);
        if (!detail::censoring_ok(samples, err)) status = kExitQuality;
        const auto est = estimate_time_average(samples);
        header.emplace_back("mc");
        header.emplace_back("mc_stderr");
        r.push_back(format_double(est.estimate));
        r.push_back(format_double(est.std_error));
    }
    t.row(std::move(header));
    t.row(std::move(r));
    t.flush();
    return status;
}

}  // namespace fpa::cli
